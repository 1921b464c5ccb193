// Copyright 2026 The vcurate Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vcurate/prompts.hpp"

#include <filesystem>

#include "vcurate_assets.inc"

namespace vcurate {

namespace fs = std::filesystem;

namespace {

std::string embedded(std::string_view name) {
  for (const auto& asset : kEmbeddedAssets) {
    if (name == asset.name) return asset.text;
  }
  throw Error("embedded asset missing: " + std::string(name));
}

std::string with_override(const std::string& dir, std::string_view rel,
                          std::string fallback) {
  if (dir.empty()) return fallback;
  const fs::path candidate = fs::path(dir) / fs::path(std::string(rel));
  if (fs::exists(candidate)) return read_text_file(candidate);
  return fallback;
}

}  // namespace

PromptTemplates PromptTemplates::embedded_defaults() {
  PromptTemplates t;
  t.step1_comment = embedded("prompts/step1_comment.txt");
  t.step2_spec = embedded("prompts/step2_spec.txt");
  t.step3_highlevel = embedded("prompts/step3_highlevel.txt");
  t.line_check = embedded("prompts/line_check.txt");
  t.judge_score = embedded("prompts/judge_score.txt");
  t.instruction_templates_json = embedded("instruction_templates.json");
  return t;
}

PromptTemplates PromptTemplates::load(const std::string& override_dir) {
  PromptTemplates t = embedded_defaults();
  t.step1_comment =
      with_override(override_dir, "prompts/step1_comment.txt", t.step1_comment);
  t.step2_spec = with_override(override_dir, "prompts/step2_spec.txt", t.step2_spec);
  t.step3_highlevel = with_override(override_dir, "prompts/step3_highlevel.txt",
                                    t.step3_highlevel);
  t.line_check = with_override(override_dir, "prompts/line_check.txt", t.line_check);
  t.judge_score = with_override(override_dir, "prompts/judge_score.txt", t.judge_score);
  t.instruction_templates_json = with_override(
      override_dir, "instruction_templates.json", t.instruction_templates_json);
  return t;
}

std::string render_template(std::string_view tmpl,
                            const std::map<std::string, std::string>& slots) {
  std::string out;
  out.reserve(tmpl.size());
  std::size_t i = 0;
  while (i < tmpl.size()) {
    const auto open = tmpl.find("{{", i);
    if (open == std::string_view::npos) {
      out.append(tmpl.substr(i));
      break;
    }
    out.append(tmpl.substr(i, open - i));
    const auto close = tmpl.find("}}", open + 2);
    if (close == std::string_view::npos) {
      out.append(tmpl.substr(open));
      break;
    }
    const std::string key(tmpl.substr(open + 2, close - open - 2));
    const auto it = slots.find(key);
    if (it != slots.end()) {
      out.append(it->second);
    } else {
      out.append(tmpl.substr(open, close + 2 - open));
    }
    i = close + 2;
  }
  return out;
}

namespace {

ChatRequest user_request(const ClientProfile& profile, std::string content,
                         int attempt) {
  ChatRequest req;
  req.model = profile.model;
  req.temperature = profile.temperature;
  req.max_tokens = profile.max_tokens;
  req.attempt = attempt;
  req.messages.push_back({"user", std::move(content)});
  return req;
}

}  // namespace

ChatRequest build_step1_request(const PromptTemplates& templates,
                                const ClientProfile& profile,
                                std::string_view code,
                                std::string_view few_shot, int attempt) {
  return user_request(
      profile,
      render_template(templates.step1_comment,
                      {{"code", std::string(code)},
                       {"examples", std::string(few_shot)}}),
      attempt);
}

ChatRequest build_step2_request(const PromptTemplates& templates,
                                const ClientProfile& profile,
                                std::string_view commented_code,
                                std::string_view few_shot, int attempt) {
  return user_request(
      profile,
      render_template(templates.step2_spec,
                      {{"code", std::string(commented_code)},
                       {"examples", std::string(few_shot)}}),
      attempt);
}

ChatRequest build_step3_request(const PromptTemplates& templates,
                                const ClientProfile& profile,
                                std::string_view code, std::string_view spec,
                                int max_words, std::string_view few_shot,
                                int attempt) {
  return user_request(
      profile,
      render_template(templates.step3_highlevel,
                      {{"code", std::string(code)},
                       {"spec", std::string(spec)},
                       {"max_words", std::to_string(max_words)},
                       {"examples", std::string(few_shot)}}),
      attempt);
}

ChatRequest build_line_check_request(const PromptTemplates& templates,
                                     const ClientProfile& profile,
                                     std::string_view line,
                                     std::string_view description,
                                     int attempt) {
  return user_request(
      profile,
      render_template(templates.line_check,
                      {{"line", std::string(line)},
                       {"description", std::string(description)}}),
      attempt);
}

ChatRequest build_judge_request(const PromptTemplates& templates,
                                const ClientProfile& profile,
                                std::string_view model_output,
                                std::string_view ground_truth, int attempt) {
  return user_request(
      profile,
      render_template(templates.judge_score,
                      {{"model_output", std::string(model_output)},
                       {"ground_truth", std::string(ground_truth)}}),
      attempt);
}

}  // namespace vcurate

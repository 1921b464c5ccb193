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
//
// Prompt templates are text assets with {{slot}} placeholders, compiled in
// as defaults and overridable from a directory so operators can audit and
// edit them without rebuilding.

#ifndef VCURATE_PROMPTS_HPP
#define VCURATE_PROMPTS_HPP

#include <map>
#include <string>
#include <string_view>

#include "vcurate/llm.hpp"

namespace vcurate {

struct PromptTemplates {
  std::string step1_comment;
  std::string step2_spec;
  std::string step3_highlevel;
  std::string line_check;
  std::string judge_score;
  std::string instruction_templates_json;

  static PromptTemplates embedded_defaults();
  /// Embedded defaults with per-file overrides from `dir` when present
  /// (same file names as under assets/).
  static PromptTemplates load(const std::string& override_dir);
};

/// Replaces each {{key}} with its value; unknown placeholders are left
/// untouched.
std::string render_template(std::string_view tmpl,
                            const std::map<std::string, std::string>& slots);

// Request builders for the annotation chain and the judge. `attempt` is
// the semantic-retry salt.
ChatRequest build_step1_request(const PromptTemplates& templates,
                                const ClientProfile& profile,
                                std::string_view code,
                                std::string_view few_shot, int attempt);
ChatRequest build_step2_request(const PromptTemplates& templates,
                                const ClientProfile& profile,
                                std::string_view commented_code,
                                std::string_view few_shot, int attempt);
ChatRequest build_step3_request(const PromptTemplates& templates,
                                const ClientProfile& profile,
                                std::string_view code, std::string_view spec,
                                int max_words, std::string_view few_shot,
                                int attempt);
ChatRequest build_line_check_request(const PromptTemplates& templates,
                                     const ClientProfile& profile,
                                     std::string_view line,
                                     std::string_view description,
                                     int attempt);
ChatRequest build_judge_request(const PromptTemplates& templates,
                                const ClientProfile& profile,
                                std::string_view model_output,
                                std::string_view ground_truth, int attempt);

}  // namespace vcurate

#endif  // VCURATE_PROMPTS_HPP

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
// Test helper: synthesizes a mock-LLM fixture directory (fingerprint ->
// response files) covering the step 1-3 requests the pipeline will issue
// for a module set, using the same prompt builders and client profile as
// the run under test.

#ifndef VCURATE_TESTS_MOCK_LLM_HPP
#define VCURATE_TESTS_MOCK_LLM_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "vcurate/annotator.hpp"
#include "vcurate/config.hpp"
#include "vcurate/util.hpp"

namespace vcurate::testing {

inline std::string synth_commented(const std::string& code) {
  std::string out;
  int step = 0;
  for (const std::string_view line : split_lines(code)) {
    bool blank = true;
    for (char c : line) {
      if (!std::isspace(static_cast<unsigned char>(c))) {
        blank = false;
        break;
      }
    }
    if (!blank) {
      out += "// step " + std::to_string(++step) + "\n";
    }
    out += std::string(line);
    out += "\n";
  }
  return out;
}

inline std::string synth_spec() {
  return "## Functionality\nTracks and transforms its input signals.\n\n"
         "## Implementation\nSequential registers update on clock edges and "
         "combinational assigns derive the outputs.\n";
}

inline std::string synth_high_level() {
  return "A small synchronous design that registers its inputs and exposes "
         "derived outputs.";
}

struct MockFixtureOptions {
  bool mutate_step1 = false;  // corrupt the echoed code to trip the gate
};

inline void write_unit_fixtures(const PipelineConfig& config,
                                const PromptTemplates& templates,
                                const std::string& unit_code,
                                const std::filesystem::path& dir,
                                const MockFixtureOptions& options) {
  std::string commented = synth_commented(unit_code);
  if (options.mutate_step1) {
    commented = "wire mutated_tap;\n" + commented;
  }
  const std::string spec = synth_spec();
  const std::string high = synth_high_level();
  for (int attempt = 0; attempt <= config.annotate_retries; ++attempt) {
    const auto step1 = build_step1_request(templates, config.annotator,
                                           unit_code, config.few_shot, attempt);
    write_text_file_atomic(dir / (request_fingerprint(step1) + ".txt"),
                           commented);
    const auto step2 = build_step2_request(templates, config.annotator,
                                           commented, config.few_shot, attempt);
    write_text_file_atomic(dir / (request_fingerprint(step2) + ".txt"), spec);
    const auto step3 = build_step3_request(
        templates, config.annotator, unit_code, spec,
        config.high_level_max_words, config.few_shot, attempt);
    write_text_file_atomic(dir / (request_fingerprint(step3) + ".txt"), high);
  }
}

/// Fixture files for every unit (whole module or block) the pipeline will
/// annotate for `modules` under `config`.
inline void write_mock_fixtures(const PipelineConfig& config,
                                const std::vector<VerilogModule>& modules,
                                const std::filesystem::path& dir,
                                const MockFixtureOptions& options = {}) {
  std::filesystem::create_directories(dir);
  const PromptTemplates templates = PromptTemplates::load(config.prompts_dir);
  for (const VerilogModule& module : modules) {
    const std::size_t tokens =
        count_tokens(module.stripped_text, config.length_policy);
    const LengthVerdict verdict =
        length_gate(tokens, UnitKind::Module, config.length_policy);
    if (verdict.kind == VerdictKind::Keep) {
      write_unit_fixtures(config, templates, module.stripped_text, dir,
                          options);
      continue;
    }
    for (const CodeBlock& block : extract_blocks(module)) {
      if (length_gate(block.token_count, UnitKind::Block,
                      config.length_policy)
              .kind != VerdictKind::Keep) {
        continue;
      }
      write_unit_fixtures(config, templates, block.text, dir, options);
    }
  }
}

}  // namespace vcurate::testing

#endif  // VCURATE_TESTS_MOCK_LLM_HPP

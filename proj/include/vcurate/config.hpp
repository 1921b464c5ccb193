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

#ifndef VCURATE_CONFIG_HPP
#define VCURATE_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "vcurate/dedup.hpp"
#include "vcurate/generation.hpp"
#include "vcurate/llm.hpp"
#include "vcurate/metrics.hpp"
#include "vcurate/tokenizer.hpp"

namespace vcurate {

enum class CurriculumMode { Preorder, AllAtOnce };

struct PipelineConfig {
  // corpus
  std::string corpus_root;
  std::vector<std::string> extensions = {".v"};
  double comment_ratio_threshold = 0.8;

  DedupParams dedup;
  LengthPolicy length_policy;

  // client profiles: the annotator writes comments/specs, the checker
  // audits line annotations, the judge scores descriptions, the embedder
  // provides vectors
  ClientProfile annotator;
  ClientProfile checker;
  ClientProfile judge;
  ClientProfile embedder;
  bool checker_enabled = false;

  // annotation behavior
  int annotate_retries = 2;
  int annotate_concurrency = 2;
  int high_level_max_words = 120;
  std::string prompts_dir;  // optional template overrides
  std::string few_shot;
  int review_sample_size = 20;
  std::uint64_t review_seed = 1;

  // curriculum
  std::uint64_t curriculum_seed = 1;
  CurriculumMode curriculum_mode = CurriculumMode::Preorder;

  MetricConfig metrics;
  RougeMode rouge_mode = RougeMode::F1;
  SimulatorConfig simulator;
  PassKMode pass1_mode = PassKMode::FirstK;

  // decoding defaults recorded for downstream inference configs
  double understand_temperature = 0.8;
  double generate_temperature = 0.5;

  std::string config_hash;  // fingerprint of the config file bytes
  std::string source_path;
};

/// Parses and validates a JSON config file. Unknown keys are rejected so
/// typos cannot silently fall back to defaults.
PipelineConfig load_config(const std::filesystem::path& path);

/// Built-in defaults (no file); config_hash reflects the empty config.
PipelineConfig default_config();

}  // namespace vcurate

#endif  // VCURATE_CONFIG_HPP

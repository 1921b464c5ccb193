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
// Understanding evaluation: score model descriptions against ground truth
// with the lexical metrics plus embedding cosine and an LLM-judge score,
// then aggregate over a benchmark.

#ifndef VCURATE_UNDERSTANDING_HPP
#define VCURATE_UNDERSTANDING_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vcurate/llm.hpp"
#include "vcurate/metrics.hpp"
#include "vcurate/prompts.hpp"

namespace vcurate {

struct TextPair {
  std::string id;
  std::string candidate;  // model output
  std::string reference;  // ground truth
};

struct BenchmarkEntry {
  std::string id;
  std::string code;
  std::string reference;
};

/// Parses the first decimal literal from judge output; values outside
/// [0, 1] do not count as a parse.
std::optional<double> parse_judge_score(std::string_view text);

/// Cosine of the two embeddings.
double embedding_similarity(const TextPair& pair, EmbedClient& client);

struct JudgeSettings {
  PromptTemplates templates;
  ClientProfile profile;
  int retries = 2;
};

/// LLM-judge similarity in [0,1]; retries on unparseable output, then the
/// pair stays unscored.
std::optional<double> gpt_score(const TextPair& pair, LlmClient& judge,
                                const JudgeSettings& settings,
                                Warnings* warnings = nullptr);

struct PairScores {
  std::string id;
  double bleu4 = 0;
  double rouge1 = 0;
  double rouge2 = 0;
  double rouge_l = 0;
  std::optional<double> emb_sim;
  std::optional<double> gpt;
};

struct UnderstandingReport {
  std::vector<PairScores> pairs;
  // arithmetic means over scored pairs per metric (mean-of-sentence)
  double mean_bleu4 = 0;
  double mean_rouge1 = 0;
  double mean_rouge2 = 0;
  double mean_rouge_l = 0;
  std::optional<double> mean_emb_sim;
  std::optional<double> mean_gpt;
  std::size_t emb_unscored = 0;
  std::size_t gpt_unscored = 0;
  std::vector<std::string> errors;  // e.g. benchmark ids missing an output
  RougeMode rouge_mode = RougeMode::F1;
  std::string smoothing = "bleu4 add-one on orders >= 2";
  std::string aggregation = "mean-of-sentence";
};

/// Scores every benchmark entry that has an output; missing ids land in
/// `errors`, client failures leave pairs unscored for that metric.
UnderstandingReport evaluate_understanding(
    const std::vector<BenchmarkEntry>& benchmark,
    const std::map<std::string, std::string>& outputs_by_id,
    EmbedClient* embedder, LlmClient* judge, const JudgeSettings& judge_cfg,
    RougeMode rouge_mode = RougeMode::F1, Warnings* warnings = nullptr);

std::string render_understanding_table(const UnderstandingReport& report);

}  // namespace vcurate

#endif  // VCURATE_UNDERSTANDING_HPP

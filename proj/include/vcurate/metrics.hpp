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
// Lexical similarity metrics for description scoring: smoothed BLEU-4,
// ROUGE-N, ROUGE-L, and cosine similarity. The span overloads are the hot
// path; the string overloads tokenize first.

#ifndef VCURATE_METRICS_HPP
#define VCURATE_METRICS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vcurate/util.hpp"

namespace vcurate {

enum class RougeMode { F1, Recall };

struct MetricConfig {
  int max_ngram = 4;
  double scale = 100.0;
  RougeMode rouge_mode = RougeMode::F1;
};

/// Metric tokenization: lowercase, then maximal [a-z0-9] runs. Punctuation
/// and whitespace separate tokens and are dropped.
std::vector<std::string> metric_tokens(std::string_view text);

/// Maps the two token lists onto a shared integer vocabulary.
struct TokenIdPair {
  std::vector<std::int32_t> candidate;
  std::vector<std::int32_t> reference;
};
TokenIdPair intern_tokens(const std::vector<std::string>& candidate,
                          const std::vector<std::string>& reference);

/// Per-sentence n-gram view: token ids plus lexicographically sorted
/// window-start arrays for orders 1..4. Building it once per sentence
/// keeps pairwise scoring allocation-free.
class NgramIndex {
 public:
  static constexpr int kMaxOrder = 4;

  explicit NgramIndex(std::span<const std::int32_t> tokens);

  std::span<const std::int32_t> tokens() const { return tokens_; }
  /// Sorted window starts for order n (empty when the sentence is shorter
  /// than n); only orders 1..kMaxOrder are indexed.
  std::span<const std::uint32_t> windows(int n) const {
    return order_[n - 1];
  }

 private:
  std::vector<std::int32_t> tokens_;
  std::vector<std::uint32_t> order_[kMaxOrder];
};

/// Clipped (modified) n-gram matches: for each distinct candidate n-gram,
/// min(count in candidate, count in reference), summed. Second member is
/// the candidate window total.
struct NgramOverlap {
  std::size_t matches = 0;
  std::size_t candidate_windows = 0;
};
NgramOverlap clipped_ngram_overlap(std::span<const std::int32_t> candidate,
                                   std::span<const std::int32_t> reference,
                                   int n);
NgramOverlap clipped_ngram_overlap(const NgramIndex& candidate,
                                   const NgramIndex& reference, int n);

/// Smoothed BLEU-4 on a 0..100 scale. Precisions use clipped counts; p_1
/// is unsmoothed and a zero unigram overlap scores 0; higher orders use
/// add-one smoothing (m+1)/(t+1). Brevity penalty min(1, exp(1 - r/c)).
double bleu4_smoothed(std::span<const std::int32_t> candidate,
                      std::span<const std::int32_t> reference,
                      Warnings* warnings = nullptr);

/// ROUGE-N on a 0..100 scale: clipped overlap recall/precision combined as
/// F1 (or recall-only per mode). A reference shorter than n tokens scores 0.
double rouge_n(std::span<const std::int32_t> candidate,
               std::span<const std::int32_t> reference, int n,
               RougeMode mode = RougeMode::F1, Warnings* warnings = nullptr);

/// ROUGE-L on a 0..100 scale from the LCS token length.
double rouge_l(std::span<const std::int32_t> candidate,
               std::span<const std::int32_t> reference,
               RougeMode mode = RougeMode::F1);

std::size_t lcs_length(std::span<const std::int32_t> a,
                       std::span<const std::int32_t> b);

// Index-pair overloads: the hot path for scoring many pairs.
double bleu4_smoothed(const NgramIndex& candidate, const NgramIndex& reference,
                      Warnings* warnings = nullptr);
double rouge_n(const NgramIndex& candidate, const NgramIndex& reference, int n,
               RougeMode mode = RougeMode::F1, Warnings* warnings = nullptr);
double rouge_l(const NgramIndex& candidate, const NgramIndex& reference,
               RougeMode mode = RougeMode::F1);

/// All four lexical metrics from one set of n-gram overlaps; what the
/// understanding evaluator runs per pair.
struct LexicalScores {
  double bleu4 = 0;
  double rouge1 = 0;
  double rouge2 = 0;
  double rouge_l = 0;
};
LexicalScores lexical_scores(const NgramIndex& candidate,
                             const NgramIndex& reference,
                             RougeMode mode = RougeMode::F1,
                             Warnings* warnings = nullptr);
LexicalScores lexical_scores(std::string_view candidate,
                             std::string_view reference,
                             RougeMode mode = RougeMode::F1,
                             Warnings* warnings = nullptr);

// String-pair convenience wrappers (tokenize + intern first).
double bleu4_smoothed(std::string_view candidate, std::string_view reference,
                      Warnings* warnings = nullptr);
double rouge_n(std::string_view candidate, std::string_view reference, int n,
               RougeMode mode = RougeMode::F1, Warnings* warnings = nullptr);
double rouge_l(std::string_view candidate, std::string_view reference,
               RougeMode mode = RougeMode::F1);

/// Cosine similarity; throws on dimension mismatch or a zero vector.
double cosine(std::span<const double> u, std::span<const double> v);

}  // namespace vcurate

#endif  // VCURATE_METRICS_HPP

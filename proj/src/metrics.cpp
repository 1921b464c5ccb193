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

#include "vcurate/metrics.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <unordered_map>

namespace vcurate {

std::vector<std::string> metric_tokens(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char raw : text) {
    const unsigned char u = static_cast<unsigned char>(raw);
    const char c = static_cast<char>(std::tolower(u));
    if (std::isalnum(static_cast<unsigned char>(c))) {
      current.push_back(c);
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

TokenIdPair intern_tokens(const std::vector<std::string>& candidate,
                          const std::vector<std::string>& reference) {
  TokenIdPair pair;
  std::unordered_map<std::string_view, std::int32_t> vocab;
  auto intern = [&](const std::vector<std::string>& words,
                    std::vector<std::int32_t>& out) {
    out.reserve(words.size());
    for (const std::string& w : words) {
      auto [it, inserted] =
          vocab.emplace(w, static_cast<std::int32_t>(vocab.size()));
      out.push_back(it->second);
    }
  };
  intern(candidate, pair.candidate);
  intern(reference, pair.reference);
  return pair;
}

namespace {

using IdSpan = std::span<const std::int32_t>;

// The order parameter is a template argument so the per-token compare
// loops unroll; pairwise scoring runs these millions of times.
template <int N>
inline bool window_less(const std::int32_t* a, const std::int32_t* b) {
  for (int i = 0; i < N; ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

template <int N>
inline bool window_equal(const std::int32_t* a, const std::int32_t* b) {
  for (int i = 0; i < N; ++i) {
    if (a[i] != b[i]) return false;
  }
  return true;
}

template <int N>
std::vector<std::uint32_t> sorted_windows_impl(IdSpan tokens) {
  std::vector<std::uint32_t> order;
  if (tokens.size() < static_cast<std::size_t>(N)) return order;
  const std::int32_t* base = tokens.data();
  const std::size_t count = tokens.size() - static_cast<std::size_t>(N) + 1;
  order.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    order[i] = static_cast<std::uint32_t>(i);
  }
  if (count <= 32) {
    for (std::size_t i = 1; i < count; ++i) {
      const std::uint32_t v = order[i];
      std::size_t j = i;
      while (j > 0 && window_less<N>(base + v, base + order[j - 1])) {
        order[j] = order[j - 1];
        --j;
      }
      order[j] = v;
    }
  } else {
    std::sort(order.begin(), order.end(),
              [&](std::uint32_t a, std::uint32_t b) {
                return window_less<N>(base + a, base + b);
              });
  }
  return order;
}

std::vector<std::uint32_t> sorted_windows(IdSpan tokens, int n) {
  switch (n) {
    case 1: return sorted_windows_impl<1>(tokens);
    case 2: return sorted_windows_impl<2>(tokens);
    case 3: return sorted_windows_impl<3>(tokens);
    case 4: return sorted_windows_impl<4>(tokens);
    default: {
      std::vector<std::uint32_t> order;
      if (tokens.size() < static_cast<std::size_t>(n)) return order;
      const std::size_t count = tokens.size() - n + 1;
      order.resize(count);
      for (std::size_t i = 0; i < count; ++i) {
        order[i] = static_cast<std::uint32_t>(i);
      }
      std::sort(order.begin(), order.end(),
                [&](std::uint32_t a, std::uint32_t b) {
                  for (int i = 0; i < n; ++i) {
                    if (tokens[a + i] != tokens[b + i]) {
                      return tokens[a + i] < tokens[b + i];
                    }
                  }
                  return false;
                });
      return order;
    }
  }
}

// Merge join over two sorted window lists, clipping each distinct n-gram
// to min(candidate multiplicity, reference multiplicity).
template <int N>
std::size_t merge_clipped_impl(const std::int32_t* cand_tokens,
                               std::span<const std::uint32_t> cand_windows,
                               const std::int32_t* ref_tokens,
                               std::span<const std::uint32_t> ref_windows) {
  std::size_t matches = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  const std::size_t wc = cand_windows.size();
  const std::size_t wr = ref_windows.size();
  while (i < wc && j < wr) {
    const std::int32_t* wi = cand_tokens + cand_windows[i];
    const std::int32_t* wj = ref_tokens + ref_windows[j];
    if (window_equal<N>(wi, wj)) {
      std::size_t run_c = 1;
      while (i + run_c < wc &&
             window_equal<N>(wi, cand_tokens + cand_windows[i + run_c])) {
        ++run_c;
      }
      std::size_t run_r = 1;
      while (j + run_r < wr &&
             window_equal<N>(wj, ref_tokens + ref_windows[j + run_r])) {
        ++run_r;
      }
      matches += std::min(run_c, run_r);
      i += run_c;
      j += run_r;
    } else if (window_less<N>(wi, wj)) {
      ++i;
    } else {
      ++j;
    }
  }
  return matches;
}

std::size_t merge_clipped(IdSpan cand_tokens,
                          std::span<const std::uint32_t> cand_windows,
                          IdSpan ref_tokens,
                          std::span<const std::uint32_t> ref_windows, int n) {
  switch (n) {
    case 1:
      return merge_clipped_impl<1>(cand_tokens.data(), cand_windows,
                                   ref_tokens.data(), ref_windows);
    case 2:
      return merge_clipped_impl<2>(cand_tokens.data(), cand_windows,
                                   ref_tokens.data(), ref_windows);
    case 3:
      return merge_clipped_impl<3>(cand_tokens.data(), cand_windows,
                                   ref_tokens.data(), ref_windows);
    case 4:
      return merge_clipped_impl<4>(cand_tokens.data(), cand_windows,
                                   ref_tokens.data(), ref_windows);
    default:
      break;
  }
  // general order: pairwise token compares without the unrolled fast path
  std::size_t matches = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  auto equal = [&](std::size_t a, std::size_t b) {
    for (int t = 0; t < n; ++t) {
      if (cand_tokens[cand_windows[a] + t] != ref_tokens[ref_windows[b] + t]) {
        return false;
      }
    }
    return true;
  };
  auto equal_cc = [&](std::size_t a, std::size_t b) {
    for (int t = 0; t < n; ++t) {
      if (cand_tokens[cand_windows[a] + t] !=
          cand_tokens[cand_windows[b] + t]) {
        return false;
      }
    }
    return true;
  };
  auto equal_rr = [&](std::size_t a, std::size_t b) {
    for (int t = 0; t < n; ++t) {
      if (ref_tokens[ref_windows[a] + t] != ref_tokens[ref_windows[b] + t]) {
        return false;
      }
    }
    return true;
  };
  auto less = [&](std::size_t a, std::size_t b) {
    for (int t = 0; t < n; ++t) {
      const std::int32_t x = cand_tokens[cand_windows[a] + t];
      const std::int32_t y = ref_tokens[ref_windows[b] + t];
      if (x != y) return x < y;
    }
    return false;
  };
  const std::size_t wc = cand_windows.size();
  const std::size_t wr = ref_windows.size();
  while (i < wc && j < wr) {
    if (equal(i, j)) {
      std::size_t run_c = 1;
      while (i + run_c < wc && equal_cc(i, i + run_c)) ++run_c;
      std::size_t run_r = 1;
      while (j + run_r < wr && equal_rr(j, j + run_r)) ++run_r;
      matches += std::min(run_c, run_r);
      i += run_c;
      j += run_r;
    } else if (less(i, j)) {
      ++i;
    } else {
      ++j;
    }
  }
  return matches;
}

}  // namespace

NgramIndex::NgramIndex(IdSpan tokens)
    : tokens_(tokens.begin(), tokens.end()) {
  for (int n = 1; n <= kMaxOrder; ++n) {
    order_[n - 1] = sorted_windows(tokens_, n);
  }
}

NgramOverlap clipped_ngram_overlap(const NgramIndex& candidate,
                                   const NgramIndex& reference, int n) {
  NgramOverlap overlap;
  if (n <= NgramIndex::kMaxOrder) {
    overlap.candidate_windows = candidate.windows(n).size();
    if (overlap.candidate_windows == 0 || reference.windows(n).empty()) {
      return overlap;
    }
    overlap.matches =
        merge_clipped(candidate.tokens(), candidate.windows(n),
                      reference.tokens(), reference.windows(n), n);
    return overlap;
  }
  return clipped_ngram_overlap(candidate.tokens(), reference.tokens(), n);
}

NgramOverlap clipped_ngram_overlap(IdSpan candidate, IdSpan reference, int n) {
  NgramOverlap overlap;
  const auto cand_windows = sorted_windows(candidate, n);
  overlap.candidate_windows = cand_windows.size();
  if (cand_windows.empty()) return overlap;
  const auto ref_windows = sorted_windows(reference, n);
  if (ref_windows.empty()) return overlap;
  overlap.matches =
      merge_clipped(candidate, cand_windows, reference, ref_windows, n);
  return overlap;
}

namespace {

double bleu4_from_overlaps(const NgramOverlap overlaps[4], std::size_t cand_len,
                           std::size_t ref_len, Warnings* warnings) {
  if (cand_len == 0) {
    warn(warnings, "bleu4: empty candidate scores 0");
    return 0.0;
  }
  if (ref_len == 0) {
    warn(warnings, "bleu4: empty reference scores 0");
    return 0.0;
  }
  double log_sum = 0.0;
  for (int n = 1; n <= 4; ++n) {
    const NgramOverlap& o = overlaps[n - 1];
    double p;
    if (n == 1) {
      if (o.matches == 0) return 0.0;  // p1 is unsmoothed; zero means zero
      p = static_cast<double>(o.matches) /
          static_cast<double>(o.candidate_windows);
    } else {
      p = (static_cast<double>(o.matches) + 1.0) /
          (static_cast<double>(o.candidate_windows) + 1.0);
    }
    log_sum += 0.25 * std::log(p);
  }
  const double c = static_cast<double>(cand_len);
  const double r = static_cast<double>(ref_len);
  const double bp = c >= r ? 1.0 : std::exp(1.0 - r / c);
  return 100.0 * bp * std::exp(log_sum);
}

double rouge_from_overlap(const NgramOverlap& o, std::size_t ref_windows,
                          RougeMode mode, Warnings* warnings) {
  if (ref_windows == 0) {
    warn(warnings, "rouge_n: reference shorter than n tokens scores 0");
    return 0.0;
  }
  const double m = static_cast<double>(o.matches);
  const double recall = m / static_cast<double>(ref_windows);
  if (mode == RougeMode::Recall) return 100.0 * recall;
  const double precision =
      o.candidate_windows == 0
          ? 0.0
          : m / static_cast<double>(o.candidate_windows);
  if (precision + recall == 0.0) return 0.0;
  return 100.0 * 2.0 * precision * recall / (precision + recall);
}

std::size_t window_count(std::size_t len, int n) {
  return len >= static_cast<std::size_t>(n)
             ? len - static_cast<std::size_t>(n) + 1
             : 0;
}

}  // namespace

double bleu4_smoothed(const NgramIndex& candidate, const NgramIndex& reference,
                      Warnings* warnings) {
  NgramOverlap overlaps[4];
  for (int n = 1; n <= 4; ++n) {
    overlaps[n - 1] = clipped_ngram_overlap(candidate, reference, n);
  }
  return bleu4_from_overlaps(overlaps, candidate.tokens().size(),
                             reference.tokens().size(), warnings);
}

double bleu4_smoothed(IdSpan candidate, IdSpan reference, Warnings* warnings) {
  if (candidate.empty()) {
    warn(warnings, "bleu4: empty candidate scores 0");
    return 0.0;
  }
  if (reference.empty()) {
    warn(warnings, "bleu4: empty reference scores 0");
    return 0.0;
  }
  const NgramIndex ic(candidate);
  const NgramIndex ir(reference);
  return bleu4_smoothed(ic, ir, warnings);
}

double rouge_n(const NgramIndex& candidate, const NgramIndex& reference, int n,
               RougeMode mode, Warnings* warnings) {
  if (n < 1) throw Error("rouge_n: n must be >= 1");
  const NgramOverlap o = clipped_ngram_overlap(candidate, reference, n);
  return rouge_from_overlap(o, window_count(reference.tokens().size(), n),
                            mode, warnings);
}

double rouge_n(IdSpan candidate, IdSpan reference, int n, RougeMode mode,
               Warnings* warnings) {
  if (n < 1) throw Error("rouge_n: n must be >= 1");
  const NgramOverlap o = clipped_ngram_overlap(candidate, reference, n);
  return rouge_from_overlap(o, window_count(reference.size(), n), mode,
                            warnings);
}

namespace {

// Rolling single-row LCS DP over a caller-provided row buffer.
std::size_t lcs_rolling(IdSpan a, IdSpan b, std::size_t* row) {
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = 0;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = 0;  // dp[i-1][j-1]
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = a[i - 1] == b[j - 1] ? diag + 1 : std::max(row[j], row[j - 1]);
      diag = up;
    }
  }
  return row[b.size()];
}

// Bit-parallel LCS (Allison-Dix) for references up to 64 tokens: one
// machine word carries the DP row.
std::size_t lcs_bitparallel(IdSpan a, IdSpan b) {
  std::uint64_t row = 0;
  for (const std::int32_t symbol : a) {
    std::uint64_t match = 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      match |= static_cast<std::uint64_t>(b[j] == symbol) << j;
    }
    const std::uint64_t x = row | match;
    row = x & ~(x - ((row << 1) | 1));
  }
  return static_cast<std::size_t>(std::popcount(row));
}

}  // namespace

std::size_t lcs_length(IdSpan a, IdSpan b) {
  if (a.empty() || b.empty()) return 0;
  if (b.size() <= 64) return lcs_bitparallel(a, b);
  std::vector<std::size_t> row(b.size() + 1);
  return lcs_rolling(a, b, row.data());
}

namespace {

double rouge_l_from_lengths(double l, std::size_t cand_len,
                            std::size_t ref_len, RougeMode mode) {
  if (cand_len == 0 || ref_len == 0) return 0.0;
  const double recall = l / static_cast<double>(ref_len);
  if (mode == RougeMode::Recall) return 100.0 * recall;
  const double precision = l / static_cast<double>(cand_len);
  if (precision + recall == 0.0) return 0.0;
  return 100.0 * 2.0 * precision * recall / (precision + recall);
}

}  // namespace

double rouge_l(const NgramIndex& candidate, const NgramIndex& reference,
               RougeMode mode) {
  return rouge_l_from_lengths(
      static_cast<double>(lcs_length(candidate.tokens(), reference.tokens())),
      candidate.tokens().size(), reference.tokens().size(), mode);
}

double rouge_l(IdSpan candidate, IdSpan reference, RougeMode mode) {
  return rouge_l_from_lengths(
      static_cast<double>(lcs_length(candidate, reference)), candidate.size(),
      reference.size(), mode);
}

LexicalScores lexical_scores(const NgramIndex& candidate,
                             const NgramIndex& reference, RougeMode mode,
                             Warnings* warnings) {
  LexicalScores scores;
  NgramOverlap overlaps[4];
  for (int n = 1; n <= 4; ++n) {
    overlaps[n - 1] = clipped_ngram_overlap(candidate, reference, n);
  }
  const std::size_t cand_len = candidate.tokens().size();
  const std::size_t ref_len = reference.tokens().size();
  scores.bleu4 = bleu4_from_overlaps(overlaps, cand_len, ref_len, warnings);
  scores.rouge1 =
      rouge_from_overlap(overlaps[0], window_count(ref_len, 1), mode, warnings);
  scores.rouge2 =
      rouge_from_overlap(overlaps[1], window_count(ref_len, 2), mode, warnings);
  scores.rouge_l = rouge_l(candidate, reference, mode);
  return scores;
}

LexicalScores lexical_scores(std::string_view candidate,
                             std::string_view reference, RougeMode mode,
                             Warnings* warnings) {
  const auto ids = intern_tokens(metric_tokens(candidate),
                                 metric_tokens(reference));
  if (ids.candidate.empty() || ids.reference.empty()) {
    LexicalScores scores;
    scores.bleu4 = bleu4_smoothed(
        std::span<const std::int32_t>(ids.candidate),
        std::span<const std::int32_t>(ids.reference), warnings);
    scores.rouge1 = rouge_n(std::span<const std::int32_t>(ids.candidate),
                            std::span<const std::int32_t>(ids.reference), 1,
                            mode, warnings);
    scores.rouge2 = rouge_n(std::span<const std::int32_t>(ids.candidate),
                            std::span<const std::int32_t>(ids.reference), 2,
                            mode, warnings);
    scores.rouge_l = rouge_l(std::span<const std::int32_t>(ids.candidate),
                             std::span<const std::int32_t>(ids.reference),
                             mode);
    return scores;
  }
  const NgramIndex ic(ids.candidate);
  const NgramIndex ir(ids.reference);
  return lexical_scores(ic, ir, mode, warnings);
}

double bleu4_smoothed(std::string_view candidate, std::string_view reference,
                      Warnings* warnings) {
  const auto ids = intern_tokens(metric_tokens(candidate),
                                 metric_tokens(reference));
  return bleu4_smoothed(std::span<const std::int32_t>(ids.candidate),
                        std::span<const std::int32_t>(ids.reference), warnings);
}

double rouge_n(std::string_view candidate, std::string_view reference, int n,
               RougeMode mode, Warnings* warnings) {
  const auto ids = intern_tokens(metric_tokens(candidate),
                                 metric_tokens(reference));
  return rouge_n(std::span<const std::int32_t>(ids.candidate),
                 std::span<const std::int32_t>(ids.reference), n, mode,
                 warnings);
}

double rouge_l(std::string_view candidate, std::string_view reference,
               RougeMode mode) {
  const auto ids = intern_tokens(metric_tokens(candidate),
                                 metric_tokens(reference));
  return rouge_l(std::span<const std::int32_t>(ids.candidate),
                 std::span<const std::int32_t>(ids.reference), mode);
}

double cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw Error("cosine: dimension mismatch");
  if (u.empty()) throw Error("cosine: empty vectors");
  double dot = 0.0;
  double nu = 0.0;
  double nv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    nu += u[i] * u[i];
    nv += v[i] * v[i];
  }
  if (nu == 0.0 || nv == 0.0) throw Error("cosine: zero vector");
  return dot / (std::sqrt(nu) * std::sqrt(nv));
}

}  // namespace vcurate

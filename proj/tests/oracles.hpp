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
// Test-only brute-force oracles. These deliberately take the direct,
// definition-shaped route (nested window scans, memoized LCS recursion,
// pow instead of exp/log) so they share no code path with the library
// implementations they check.

#ifndef VCURATE_TESTS_ORACLES_HPP
#define VCURATE_TESTS_ORACLES_HPP

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace vcurate::oracle {

using IdSpan = std::span<const std::int32_t>;

inline bool windows_match(IdSpan a, std::size_t i, IdSpan b, std::size_t j,
                          int n) {
  for (int t = 0; t < n; ++t) {
    if (a[i + t] != b[j + t]) return false;
  }
  return true;
}

// Clipped matches by direct scanning: for each first occurrence of a
// distinct candidate window, count its occurrences in both sequences and
// take the minimum.
inline std::size_t clipped_matches(IdSpan cand, IdSpan ref, int n) {
  if (cand.size() < static_cast<std::size_t>(n) ||
      ref.size() < static_cast<std::size_t>(n)) {
    return 0;
  }
  const std::size_t wc = cand.size() - n + 1;
  const std::size_t wr = ref.size() - n + 1;
  std::size_t total = 0;
  for (std::size_t i = 0; i < wc; ++i) {
    bool seen_before = false;
    for (std::size_t j = 0; j < i; ++j) {
      if (windows_match(cand, i, cand, j, n)) {
        seen_before = true;
        break;
      }
    }
    if (seen_before) continue;
    std::size_t in_cand = 0;
    for (std::size_t j = 0; j < wc; ++j) {
      if (windows_match(cand, i, cand, j, n)) ++in_cand;
    }
    std::size_t in_ref = 0;
    for (std::size_t j = 0; j < wr; ++j) {
      if (windows_match(cand, i, ref, j, n)) ++in_ref;
    }
    total += in_cand < in_ref ? in_cand : in_ref;
  }
  return total;
}

inline double bleu4(IdSpan cand, IdSpan ref) {
  if (cand.empty() || ref.empty()) return 0.0;
  double product = 1.0;
  for (int n = 1; n <= 4; ++n) {
    const std::size_t t =
        cand.size() >= static_cast<std::size_t>(n) ? cand.size() - n + 1 : 0;
    const std::size_t m = clipped_matches(cand, ref, n);
    if (n == 1) {
      if (m == 0) return 0.0;
      product *= static_cast<double>(m) / static_cast<double>(t);
    } else {
      product *= (static_cast<double>(m) + 1.0) / (static_cast<double>(t) + 1.0);
    }
  }
  const double c = static_cast<double>(cand.size());
  const double r = static_cast<double>(ref.size());
  const double bp = c >= r ? 1.0 : std::exp(1.0 - r / c);
  return 100.0 * bp * std::pow(product, 0.25);
}

inline double rouge_n_f1(IdSpan cand, IdSpan ref, int n) {
  if (ref.size() < static_cast<std::size_t>(n)) return 0.0;
  const double m = static_cast<double>(clipped_matches(cand, ref, n));
  const double tr = static_cast<double>(ref.size() - n + 1);
  const double tc =
      cand.size() >= static_cast<std::size_t>(n)
          ? static_cast<double>(cand.size() - n + 1)
          : 0.0;
  const double recall = m / tr;
  const double precision = tc == 0.0 ? 0.0 : m / tc;
  if (precision + recall == 0.0) return 0.0;
  return 100.0 * 2.0 * precision * recall / (precision + recall);
}

// LCS via memoized recursion on (i, j) prefixes.
inline std::size_t lcs_rec(IdSpan a, IdSpan b, std::size_t i, std::size_t j,
                           std::vector<int>& memo, std::size_t cols) {
  if (i == 0 || j == 0) return 0;
  int& slot = memo[(i - 1) * cols + (j - 1)];
  if (slot >= 0) return static_cast<std::size_t>(slot);
  std::size_t value;
  if (a[i - 1] == b[j - 1]) {
    value = lcs_rec(a, b, i - 1, j - 1, memo, cols) + 1;
  } else {
    const std::size_t left = lcs_rec(a, b, i - 1, j, memo, cols);
    const std::size_t up = lcs_rec(a, b, i, j - 1, memo, cols);
    value = left > up ? left : up;
  }
  slot = static_cast<int>(value);
  return value;
}

inline double rouge_l_f1(IdSpan cand, IdSpan ref) {
  if (cand.empty() || ref.empty()) return 0.0;
  std::vector<int> memo(cand.size() * ref.size(), -1);
  const double l = static_cast<double>(
      lcs_rec(cand, ref, cand.size(), ref.size(), memo, ref.size()));
  const double precision = l / static_cast<double>(cand.size());
  const double recall = l / static_cast<double>(ref.size());
  if (precision + recall == 0.0) return 0.0;
  return 100.0 * 2.0 * precision * recall / (precision + recall);
}

// Per-sequence table of distinct n-gram windows with multiplicities,
// built by direct pairwise scanning (no sorting, no hashing). Lets the
// exhaustive equivalence check stop redoing candidate-side scans per pair
// while the per-pair computation stays definitional.
struct SequenceProfile {
  std::vector<std::int32_t> tokens;
  // per order n-1: (window start, multiplicity) of each first occurrence
  std::vector<std::pair<std::uint32_t, std::uint32_t>> distinct[4];
};

inline SequenceProfile build_profile(IdSpan seq) {
  SequenceProfile profile;
  profile.tokens.assign(seq.begin(), seq.end());
  for (int n = 1; n <= 4; ++n) {
    if (seq.size() < static_cast<std::size_t>(n)) continue;
    const std::size_t w = seq.size() - n + 1;
    for (std::size_t i = 0; i < w; ++i) {
      bool seen = false;
      for (std::size_t j = 0; j < i; ++j) {
        if (windows_match(seq, i, seq, j, n)) {
          seen = true;
          break;
        }
      }
      if (seen) continue;
      std::uint32_t mult = 0;
      for (std::size_t j = i; j < w; ++j) {
        if (windows_match(seq, i, seq, j, n)) ++mult;
      }
      profile.distinct[n - 1].emplace_back(static_cast<std::uint32_t>(i),
                                           mult);
    }
  }
  return profile;
}

// All four metrics from one set of brute-force scans (the per-order
// clipped counts feed both BLEU and ROUGE). Still the definitional route:
// nested window comparisons and memoized LCS recursion.
struct AllMetrics {
  double bleu4 = 0;
  double rouge1 = 0;
  double rouge2 = 0;
  double rouge_l = 0;
};

// Clipped count as literally defined: sum over distinct n-grams of
// min(candidate multiplicity, reference multiplicity). The order is a
// template parameter purely so the token compares unroll.
template <int N>
inline std::size_t clipped_from_profiles_impl(const SequenceProfile& cand,
                                              const SequenceProfile& ref) {
  const std::int32_t* ct = cand.tokens.data();
  const std::int32_t* rt = ref.tokens.data();
  std::size_t total = 0;
  for (const auto& [ci, c_mult] : cand.distinct[N - 1]) {
    for (const auto& [ri, r_mult] : ref.distinct[N - 1]) {
      bool same = true;
      for (int t = 0; t < N; ++t) {
        if (ct[ci + t] != rt[ri + t]) {
          same = false;
          break;
        }
      }
      if (same) {
        total += c_mult < r_mult ? c_mult : r_mult;
        break;
      }
    }
  }
  return total;
}

inline std::size_t clipped_from_profiles(const SequenceProfile& cand,
                                         const SequenceProfile& ref, int n) {
  switch (n) {
    case 1: return clipped_from_profiles_impl<1>(cand, ref);
    case 2: return clipped_from_profiles_impl<2>(cand, ref);
    case 3: return clipped_from_profiles_impl<3>(cand, ref);
    default: return clipped_from_profiles_impl<4>(cand, ref);
  }
}

inline AllMetrics all_metrics_impl(IdSpan cand, IdSpan ref,
                                   const std::size_t matches[4]) {
  AllMetrics out;
  if (cand.empty() || ref.empty()) return out;

  // BLEU-4 with add-one smoothing on orders >= 2.
  if (matches[0] > 0) {
    double product =
        static_cast<double>(matches[0]) / static_cast<double>(cand.size());
    for (int n = 2; n <= 4; ++n) {
      const std::size_t t =
          cand.size() >= static_cast<std::size_t>(n) ? cand.size() - n + 1 : 0;
      product *= (static_cast<double>(matches[n - 1]) + 1.0) /
                 (static_cast<double>(t) + 1.0);
    }
    const double c = static_cast<double>(cand.size());
    const double r = static_cast<double>(ref.size());
    const double bp = c >= r ? 1.0 : std::exp(1.0 - r / c);
    // fourth root as two exact square roots
    out.bleu4 = 100.0 * bp * std::sqrt(std::sqrt(product));
  }

  auto rouge_f1 = [&](int n) {
    if (ref.size() < static_cast<std::size_t>(n)) return 0.0;
    const double m = static_cast<double>(matches[n - 1]);
    const double tr = static_cast<double>(ref.size() - n + 1);
    const double tc =
        cand.size() >= static_cast<std::size_t>(n)
            ? static_cast<double>(cand.size() - n + 1)
            : 0.0;
    const double recall = m / tr;
    const double precision = tc == 0.0 ? 0.0 : m / tc;
    if (precision + recall == 0.0) return 0.0;
    return 100.0 * 2.0 * precision * recall / (precision + recall);
  };
  out.rouge1 = rouge_f1(1);
  out.rouge2 = rouge_f1(2);

  // LCS via the full (m+1)x(n+1) table, distinct from the library's
  // bit-parallel/rolling-row routes.
  const std::size_t rows = cand.size() + 1;
  const std::size_t cols = ref.size() + 1;
  double l = 0;
  if (rows <= 16 && cols <= 16) {
    std::uint8_t table[16][16];
    for (std::size_t j = 0; j < cols; ++j) table[0][j] = 0;
    for (std::size_t i = 1; i < rows; ++i) {
      table[i][0] = 0;
      for (std::size_t j = 1; j < cols; ++j) {
        if (cand[i - 1] == ref[j - 1]) {
          table[i][j] = static_cast<std::uint8_t>(table[i - 1][j - 1] + 1);
        } else {
          const std::uint8_t up = table[i - 1][j];
          const std::uint8_t left = table[i][j - 1];
          table[i][j] = up > left ? up : left;
        }
      }
    }
    l = table[rows - 1][cols - 1];
  } else {
    static thread_local std::vector<std::uint16_t> table;
    if (table.size() < rows * cols) table.resize(rows * cols);
    for (std::size_t j = 0; j < cols; ++j) table[j] = 0;
    for (std::size_t i = 1; i < rows; ++i) {
      table[i * cols] = 0;
      for (std::size_t j = 1; j < cols; ++j) {
        if (cand[i - 1] == ref[j - 1]) {
          table[i * cols + j] =
              static_cast<std::uint16_t>(table[(i - 1) * cols + (j - 1)] + 1);
        } else {
          const std::uint16_t up = table[(i - 1) * cols + j];
          const std::uint16_t left = table[i * cols + (j - 1)];
          table[i * cols + j] = up > left ? up : left;
        }
      }
    }
    l = static_cast<double>(table[rows * cols - 1]);
  }
  const double precision = l / static_cast<double>(cand.size());
  const double recall = l / static_cast<double>(ref.size());
  if (precision + recall > 0.0) {
    out.rouge_l = 100.0 * 2.0 * precision * recall / (precision + recall);
  }
  return out;
}

inline AllMetrics all_metrics(IdSpan cand, IdSpan ref) {
  std::size_t matches[4] = {0, 0, 0, 0};
  for (int n = 1; n <= 4; ++n) matches[n - 1] = clipped_matches(cand, ref, n);
  return all_metrics_impl(cand, ref, matches);
}

inline AllMetrics all_metrics(const SequenceProfile& cand,
                              const SequenceProfile& ref) {
  std::size_t matches[4] = {0, 0, 0, 0};
  for (int n = 1; n <= 4; ++n) {
    matches[n - 1] = clipped_from_profiles(cand, ref, n);
  }
  return all_metrics_impl(cand.tokens, ref.tokens, matches);
}

// Exact Jaccard between explicit element vectors (independent of the
// library's sorted-set representation).
inline double jaccard_of_sets(const std::vector<std::uint64_t>& a,
                              const std::vector<std::uint64_t>& b) {
  std::size_t inter = 0;
  for (std::uint64_t x : a) {
    for (std::uint64_t y : b) {
      if (x == y) {
        ++inter;
        break;
      }
    }
  }
  const std::size_t uni = a.size() + b.size() - inter;
  if (uni == 0) return 0.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace vcurate::oracle

#endif  // VCURATE_TESTS_ORACLES_HPP

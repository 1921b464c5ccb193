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

#include "vcurate/dedup.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <unordered_map>
#include <utility>

#include "vcurate/tokenizer.hpp"

namespace vcurate {

namespace {

std::uint64_t hash_window(std::span<const std::string> tokens,
                          std::size_t begin, std::size_t count) {
  std::uint64_t h = kFnvOffsetBasis;
  for (std::size_t i = begin; i < begin + count; ++i) {
    h = fnv1a64(tokens[i], h);
    h ^= 0x1f;  // separator so ["ab","c"] != ["a","bc"]
    h *= kFnvPrime;
  }
  return h;
}

// Union-find over instance indices.
class DisjointSet {
 public:
  explicit DisjointSet(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

ShingleSet shingle(std::span<const std::string> tokens, std::size_t k,
                   std::string module_id) {
  if (k < 1) throw Error("shingle: k must be >= 1");
  if (tokens.empty()) throw Error("shingle: empty token stream (EmptyModule)");
  ShingleSet set;
  set.module_id = std::move(module_id);
  set.k = k;
  if (tokens.size() < k) {
    set.shingles.push_back(hash_window(tokens, 0, tokens.size()));
  } else {
    set.shingles.reserve(tokens.size() - k + 1);
    for (std::size_t i = 0; i + k <= tokens.size(); ++i) {
      set.shingles.push_back(hash_window(tokens, i, k));
    }
  }
  std::sort(set.shingles.begin(), set.shingles.end());
  set.shingles.erase(std::unique(set.shingles.begin(), set.shingles.end()),
                     set.shingles.end());
  return set;
}

MinHashSignature minhash_signature(const ShingleSet& shingles,
                                   std::size_t num_hashes,
                                   std::uint64_t seed) {
  if (num_hashes < 1) throw Error("minhash: num_hashes must be >= 1");
  if (shingles.shingles.empty()) throw Error("minhash: empty shingle set");
  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> keys(num_hashes);
  for (auto& key : keys) key = rng();

  MinHashSignature sig;
  sig.module_id = shingles.module_id;
  sig.seed = seed;
  sig.values.assign(num_hashes, ~0ULL);
  for (std::uint64_t x : shingles.shingles) {
    for (std::size_t i = 0; i < num_hashes; ++i) {
      const std::uint64_t h = mix64(x ^ keys[i]);
      if (h < sig.values[i]) sig.values[i] = h;
    }
  }
  return sig;
}

double estimate_jaccard(const MinHashSignature& a, const MinHashSignature& b) {
  if (a.values.size() != b.values.size() || a.seed != b.seed) {
    throw Error("estimate_jaccard: incompatible signatures (H or seed differ)");
  }
  if (a.values.empty()) throw Error("estimate_jaccard: empty signatures");
  std::size_t agree = 0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    if (a.values[i] == b.values[i]) ++agree;
  }
  return static_cast<double>(agree) / static_cast<double>(a.values.size());
}

double exact_jaccard(const ShingleSet& a, const ShingleSet& b) {
  if (a.shingles.empty() || b.shingles.empty()) {
    throw Error("exact_jaccard: empty shingle set");
  }
  std::size_t inter = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.shingles.size() && j < b.shingles.size()) {
    if (a.shingles[i] == b.shingles[j]) {
      ++inter;
      ++i;
      ++j;
    } else if (a.shingles[i] < b.shingles[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  const std::size_t uni = a.shingles.size() + b.shingles.size() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

DedupDecision dedup_corpus(std::span<const VerilogModule> modules,
                           const DedupParams& params) {
  if (params.threshold <= 0.0 || params.threshold > 1.0) {
    throw Error("dedup: threshold must be in (0, 1]");
  }
  if (params.bands == 0 || params.num_hashes % params.bands != 0) {
    throw Error("dedup: bands must divide num_hashes");
  }
  const std::size_t rows = params.num_hashes / params.bands;
  const std::size_t n = modules.size();

  std::vector<ShingleSet> shingle_sets(n);
  std::vector<MinHashSignature> signatures(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto tokens = code_tokens(modules[i].stripped_text);
    shingle_sets[i] = shingle(tokens, params.shingle_k, modules[i].id);
    signatures[i] =
        minhash_signature(shingle_sets[i], params.num_hashes, params.seed);
  }

  // LSH banding: instances sharing any band bucket become candidates.
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t band = 0; band < params.bands; ++band) {
      std::uint64_t h = kFnvOffsetBasis;
      h = fnv1a64_mix(h, band);
      for (std::size_t r = 0; r < rows; ++r) {
        h = fnv1a64_mix(h, signatures[i].values[band * rows + r]);
      }
      buckets[h].push_back(i);
    }
  }

  std::vector<std::pair<std::size_t, std::size_t>> candidates;
  for (const auto& [key, members] : buckets) {
    for (std::size_t a = 0; a < members.size(); ++a) {
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        candidates.emplace_back(std::min(members[a], members[b]),
                                std::max(members[a], members[b]));
      }
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());

  DisjointSet dsu(n);
  for (const auto& [a, b] : candidates) {
    if (exact_jaccard(shingle_sets[a], shingle_sets[b]) >= params.threshold) {
      dsu.unite(a, b);
    }
  }

  std::unordered_map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < n; ++i) groups[dsu.find(i)].push_back(i);

  DedupDecision decision;
  decision.params = params;
  for (auto& [root, members] : groups) {
    // Representative: lexicographically smallest id, then smallest index.
    std::size_t rep = members.front();
    for (std::size_t m : members) {
      if (modules[m].id < modules[rep].id ||
          (modules[m].id == modules[rep].id && m < rep)) {
        rep = m;
      }
    }
    decision.retained.push_back(modules[rep].id);
    decision.retained_indices.push_back(rep);
    if (members.size() > 1) {
      DedupCluster cluster;
      cluster.representative = modules[rep].id;
      for (std::size_t m : members) {
        if (m != rep) cluster.duplicates.push_back(modules[m].id);
      }
      std::sort(cluster.duplicates.begin(), cluster.duplicates.end());
      decision.clusters.push_back(std::move(cluster));
    }
  }
  std::sort(decision.retained.begin(), decision.retained.end());
  std::sort(decision.retained_indices.begin(), decision.retained_indices.end());
  std::sort(decision.clusters.begin(), decision.clusters.end(),
            [](const DedupCluster& a, const DedupCluster& b) {
              return a.representative < b.representative;
            });
  return decision;
}

}  // namespace vcurate

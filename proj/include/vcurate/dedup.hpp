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
// Near-duplicate removal: token shingles -> MinHash signatures -> LSH
// banding for candidates -> exact Jaccard confirmation -> union-find
// clusters.

#ifndef VCURATE_DEDUP_HPP
#define VCURATE_DEDUP_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vcurate/corpus.hpp"

namespace vcurate {

struct ShingleSet {
  std::string module_id;
  std::size_t k = 7;
  std::vector<std::uint64_t> shingles;  // sorted, unique
};

/// Hashes of every contiguous k-token window. Modules with fewer than k
/// tokens contribute the hash of the whole stream as a single shingle.
/// An empty token stream is an error.
ShingleSet shingle(std::span<const std::string> tokens, std::size_t k,
                   std::string module_id = "");

struct MinHashSignature {
  std::string module_id;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> values;  // length H
};

MinHashSignature minhash_signature(const ShingleSet& shingles,
                                   std::size_t num_hashes,
                                   std::uint64_t seed);

/// Fraction of positions where two signatures agree. Signatures must share
/// H and seed.
double estimate_jaccard(const MinHashSignature& a, const MinHashSignature& b);

/// |a ∩ b| / |a ∪ b| over the shingle hash sets.
double exact_jaccard(const ShingleSet& a, const ShingleSet& b);

struct DedupCluster {
  std::string representative;          // retained, lexicographically least id
  std::vector<std::string> duplicates;  // dropped ids, sorted
};

struct DedupParams {
  double threshold = 0.8;     // exact-Jaccard confirmation, in (0, 1]
  std::size_t num_hashes = 256;
  std::size_t shingle_k = 7;
  std::size_t bands = 32;     // bands * rows == num_hashes
  std::uint64_t seed = 1;
};

struct DedupDecision {
  std::vector<std::string> retained;  // sorted ids
  std::vector<DedupCluster> clusters;  // sorted by representative
  DedupParams params;
  std::vector<std::size_t> retained_indices;  // input positions, ascending
};

/// Clusters near-duplicates over `modules` (their stripped text). Every
/// input instance lands either in `retained` or in exactly one cluster's
/// duplicate list. Deterministic for fixed inputs and params.
DedupDecision dedup_corpus(std::span<const VerilogModule> modules,
                           const DedupParams& params);

}  // namespace vcurate

#endif  // VCURATE_DEDUP_HPP

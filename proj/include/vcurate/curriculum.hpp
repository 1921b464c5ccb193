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
// Curriculum ordering: samples group into shards keyed by (level,
// granularity, source) and shards are emitted in the pre-order of the
// three-layer curriculum tree, i.e. lexicographically by key ranks.

#ifndef VCURATE_CURRICULUM_HPP
#define VCURATE_CURRICULUM_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vcurate/instructions.hpp"

namespace vcurate {

struct CurriculumKey {
  int level_rank = 0;        // line 0, block 1, module 2
  int granularity_rank = 0;  // line-comment/detailed 0, medium 1, high 2
  int source_rank = 0;       // gpt 0, human 1

  Level level() const;
  Granularity granularity(Level level) const;
  Source source() const;
  std::string label() const;  // e.g. "block_detailed_gpt"

  friend auto operator<=>(const CurriculumKey&, const CurriculumKey&) = default;
};

CurriculumKey curriculum_key(const InstructionSample& sample);

struct CurriculumShard {
  CurriculumKey key;
  std::uint64_t shuffle_seed = 0;
  std::vector<InstructionSample> samples;  // seeded task-blending shuffle
};

/// Groups samples by curriculum key; empty cells are omitted. Keys come
/// back in ascending order.
std::vector<std::pair<CurriculumKey, std::size_t>> build_tree(
    std::span<const InstructionSample> samples);

/// Shards in pre-order: level first, then detailed-to-high granularity,
/// then GPT before human. Every sample appears exactly once; within a
/// shard the order is a deterministic seeded shuffle that blends tasks.
std::vector<CurriculumShard> preorder_shards(
    std::vector<InstructionSample> samples, std::uint64_t seed);

/// Baseline without a curriculum: one shard holding a seeded global
/// shuffle of everything.
std::vector<CurriculumShard> all_at_once_shard(
    std::vector<InstructionSample> samples, std::uint64_t seed);

}  // namespace vcurate

#endif  // VCURATE_CURRICULUM_HPP

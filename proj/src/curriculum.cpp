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

#include "vcurate/curriculum.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace vcurate {

namespace {

int level_rank(Level level) {
  switch (level) {
    case Level::Line: return 0;
    case Level::Block: return 1;
    case Level::Module: return 2;
  }
  return 0;
}

int granularity_rank(Granularity granularity) {
  switch (granularity) {
    case Granularity::LineComment: return 0;  // the only line-level detail
    case Granularity::Detailed: return 0;
    case Granularity::MediumDetail: return 1;
    case Granularity::HighLevel: return 2;
  }
  return 0;
}

// Deterministic Fisher-Yates; std::shuffle's permutation is
// implementation-defined, so spell it out for cross-platform stability.
template <typename T>
void seeded_shuffle(std::vector<T>& items, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(items[i - 1], items[j]);
  }
}

std::uint64_t shard_seed(std::uint64_t base, const CurriculumKey& key) {
  return mix64(base ^ (static_cast<std::uint64_t>(key.level_rank) << 16 |
                       static_cast<std::uint64_t>(key.granularity_rank) << 8 |
                       static_cast<std::uint64_t>(key.source_rank)));
}

}  // namespace

Level CurriculumKey::level() const {
  switch (level_rank) {
    case 0: return Level::Line;
    case 1: return Level::Block;
    default: return Level::Module;
  }
}

Granularity CurriculumKey::granularity(Level level) const {
  switch (granularity_rank) {
    case 0:
      return level == Level::Line ? Granularity::LineComment
                                  : Granularity::Detailed;
    case 1: return Granularity::MediumDetail;
    default: return Granularity::HighLevel;
  }
}

Source CurriculumKey::source() const {
  return source_rank == 0 ? Source::Gpt : Source::Human;
}

std::string CurriculumKey::label() const {
  const Level lvl = level();
  return std::string(to_string(lvl)) + "_" +
         std::string(to_string(granularity(lvl))) + "_" +
         std::string(to_string(source()));
}

CurriculumKey curriculum_key(const InstructionSample& sample) {
  CurriculumKey key;
  key.level_rank = level_rank(sample.level);
  key.granularity_rank = granularity_rank(sample.granularity);
  key.source_rank = sample.source == Source::Gpt ? 0 : 1;
  return key;
}

std::vector<std::pair<CurriculumKey, std::size_t>> build_tree(
    std::span<const InstructionSample> samples) {
  std::map<CurriculumKey, std::size_t> counts;
  for (const InstructionSample& sample : samples) {
    ++counts[curriculum_key(sample)];
  }
  return {counts.begin(), counts.end()};
}

std::vector<CurriculumShard> preorder_shards(
    std::vector<InstructionSample> samples, std::uint64_t seed) {
  std::map<CurriculumKey, std::vector<InstructionSample>> groups;
  for (InstructionSample& sample : samples) {
    groups[curriculum_key(sample)].push_back(std::move(sample));
  }
  std::vector<CurriculumShard> shards;
  shards.reserve(groups.size());
  for (auto& [key, members] : groups) {
    CurriculumShard shard;
    shard.key = key;
    shard.shuffle_seed = shard_seed(seed, key);
    shard.samples = std::move(members);
    seeded_shuffle(shard.samples, shard.shuffle_seed);
    shards.push_back(std::move(shard));
  }
  return shards;
}

std::vector<CurriculumShard> all_at_once_shard(
    std::vector<InstructionSample> samples, std::uint64_t seed) {
  CurriculumShard shard;
  shard.key = CurriculumKey{0, 0, 0};
  shard.shuffle_seed = mix64(seed);
  shard.samples = std::move(samples);
  seeded_shuffle(shard.samples, shard.shuffle_seed);
  return {std::move(shard)};
}

}  // namespace vcurate

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

#include <doctest.h>

#include <map>
#include <random>
#include <set>

using namespace vcurate;

namespace {

InstructionSample sample_at(Level level, Granularity granularity,
                            Source source, int serial = 0,
                            TaskKind task = TaskKind::Understand) {
  InstructionSample s;
  s.level = level;
  s.granularity = granularity;
  s.source = source;
  s.task = task;
  s.origin_target_id = "s" + std::to_string(serial);
  s.instruction = "i";
  s.input = "in" + std::to_string(serial);
  s.output = "out" + std::to_string(serial);
  return s;
}

}  // namespace

TEST_SUITE("curriculum") {

TEST_CASE("keys order level first, then granularity, then source") {
  // line before module regardless of granularity
  std::vector<InstructionSample> samples = {
      sample_at(Level::Module, Granularity::HighLevel, Source::Gpt),
      sample_at(Level::Line, Granularity::LineComment, Source::Gpt),
  };
  const auto shards = preorder_shards(samples, 1);
  REQUIRE(shards.size() == 2);
  CHECK(shards[0].key.level_rank == 0);
  CHECK(shards[1].key.level_rank == 2);

  // within a level, detailed/human precedes high-level/gpt
  std::vector<InstructionSample> block_samples = {
      sample_at(Level::Block, Granularity::HighLevel, Source::Gpt),
      sample_at(Level::Block, Granularity::Detailed, Source::Human),
  };
  const auto block_shards = preorder_shards(block_samples, 1);
  REQUIRE(block_shards.size() == 2);
  CHECK(block_shards[0].key.granularity_rank == 0);
  CHECK(block_shards[0].key.source_rank == 1);
  CHECK(block_shards[1].key.granularity_rank == 2);
  CHECK(block_shards[1].key.source_rank == 0);
}

TEST_CASE("build_tree groups cells and omits empty ones") {
  CHECK(build_tree(std::vector<InstructionSample>{}).empty());

  std::vector<InstructionSample> all_line;
  for (int i = 0; i < 5; ++i) {
    all_line.push_back(
        sample_at(Level::Line, Granularity::LineComment, Source::Gpt, i));
  }
  const auto tree = build_tree(all_line);
  REQUIRE(tree.size() == 1);
  CHECK(tree[0].first.level_rank == 0);
  CHECK(tree[0].second == 5);

  std::vector<InstructionSample> mixed;
  int serial = 0;
  for (Level level : {Level::Line, Level::Block, Level::Module}) {
    for (Source source : {Source::Gpt, Source::Human}) {
      const Granularity g = level == Level::Line ? Granularity::LineComment
                                                 : Granularity::HighLevel;
      mixed.push_back(sample_at(level, g, source, serial++));
    }
  }
  CHECK(build_tree(mixed).size() == 6);
}

TEST_CASE("full pre-order traversal over every taxonomy cell") {
  struct Cell {
    Level level;
    Granularity granularity;
    Source source;
  };
  const std::vector<Cell> cells = {
      {Level::Line, Granularity::LineComment, Source::Gpt},
      {Level::Line, Granularity::LineComment, Source::Human},
      {Level::Block, Granularity::Detailed, Source::Gpt},
      {Level::Block, Granularity::Detailed, Source::Human},
      {Level::Block, Granularity::MediumDetail, Source::Human},
      {Level::Block, Granularity::HighLevel, Source::Gpt},
      {Level::Block, Granularity::HighLevel, Source::Human},
      {Level::Module, Granularity::Detailed, Source::Gpt},
      {Level::Module, Granularity::Detailed, Source::Human},
      {Level::Module, Granularity::HighLevel, Source::Gpt},
      {Level::Module, Granularity::HighLevel, Source::Human},
  };
  std::vector<InstructionSample> samples;
  int serial = 0;
  for (const Cell& cell : cells) {
    for (int i = 0; i < 3; ++i) {
      samples.push_back(
          sample_at(cell.level, cell.granularity, cell.source, serial++));
    }
  }
  // scramble the input order
  std::mt19937_64 rng(3);
  for (std::size_t i = samples.size(); i > 1; --i) {
    std::swap(samples[i - 1], samples[rng() % i]);
  }

  const auto shards = preorder_shards(samples, 9);
  REQUIRE(shards.size() == cells.size());
  const std::vector<std::string> expected_order = {
      "line_line_comment_gpt",    "line_line_comment_human",
      "block_detailed_gpt",       "block_detailed_human",
      "block_medium_detail_human", "block_high_level_gpt",
      "block_high_level_human",   "module_detailed_gpt",
      "module_detailed_human",    "module_high_level_gpt",
      "module_high_level_human",
  };
  for (std::size_t i = 0; i < shards.size(); ++i) {
    CHECK(shards[i].key.label() == expected_order[i]);
    if (i > 0) CHECK(shards[i - 1].key < shards[i].key);
    for (const InstructionSample& s : shards[i].samples) {
      CHECK(curriculum_key(s) == shards[i].key);
    }
  }
}

TEST_CASE("sample multiset is conserved") {
  std::vector<InstructionSample> samples;
  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    const Level level = static_cast<Level>(rng() % 3);
    const Granularity g =
        level == Level::Line
            ? Granularity::LineComment
            : static_cast<Granularity>(1 + rng() % 3);
    samples.push_back(sample_at(level, g, rng() % 2 ? Source::Gpt : Source::Human,
                                i, static_cast<TaskKind>(rng() % 3)));
  }
  std::multiset<std::string> before;
  for (const auto& s : samples) before.insert(s.origin_target_id);

  const auto shards = preorder_shards(samples, 5);
  std::multiset<std::string> after;
  std::size_t total = 0;
  for (const auto& shard : shards) {
    total += shard.samples.size();
    for (const auto& s : shard.samples) after.insert(s.origin_target_id);
  }
  CHECK(total == samples.size());
  CHECK(before == after);
}

TEST_CASE("same seed reproduces shard order and within-shard order") {
  std::vector<InstructionSample> samples;
  for (int i = 0; i < 50; ++i) {
    samples.push_back(sample_at(Level::Module, Granularity::HighLevel,
                                i % 2 ? Source::Gpt : Source::Human, i,
                                static_cast<TaskKind>(i % 3)));
  }
  const auto a = preorder_shards(samples, 123);
  const auto b = preorder_shards(samples, 123);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    REQUIRE(a[i].samples.size() == b[i].samples.size());
    CHECK(a[i].shuffle_seed == b[i].shuffle_seed);
    for (std::size_t j = 0; j < a[i].samples.size(); ++j) {
      CHECK(a[i].samples[j].origin_target_id ==
            b[i].samples[j].origin_target_id);
    }
  }
  // a different seed permutes within shards
  const auto c = preorder_shards(samples, 124);
  bool any_difference = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[i].samples.size(); ++j) {
      if (a[i].samples[j].origin_target_id !=
          c[i].samples[j].origin_target_id) {
        any_difference = true;
      }
    }
  }
  CHECK(any_difference);
}

TEST_CASE("shards blend understanding and generation tasks") {
  std::vector<InstructionSample> samples;
  for (int i = 0; i < 30; ++i) {
    samples.push_back(sample_at(Level::Module, Granularity::HighLevel,
                                Source::Gpt, i,
                                static_cast<TaskKind>(i % 3)));
  }
  const auto shards = preorder_shards(samples, 7);
  REQUIRE(shards.size() == 1);
  // after the shuffle, the first few samples are not all the same task
  std::set<TaskKind> head_tasks;
  for (std::size_t i = 0; i < 6; ++i) {
    head_tasks.insert(shards[0].samples[i].task);
  }
  CHECK(head_tasks.size() > 1);
}

TEST_CASE("all-at-once baseline emits exactly one shard with everything") {
  std::vector<InstructionSample> samples;
  for (int i = 0; i < 40; ++i) {
    samples.push_back(sample_at(static_cast<Level>(i % 3),
                                i % 3 == 0 ? Granularity::LineComment
                                           : Granularity::HighLevel,
                                i % 2 ? Source::Gpt : Source::Human, i));
  }
  const auto shards = all_at_once_shard(samples, 99);
  REQUIRE(shards.size() == 1);
  CHECK(shards[0].samples.size() == 40);
}

}  // TEST_SUITE

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

#include "vcurate/pipeline.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "mock_llm.hpp"
#include "vcurate/subprocess.hpp"

using namespace vcurate;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kSourceDir = VCURATE_SOURCE_DIR;

PipelineConfig fixture_config() {
  PipelineConfig config = default_config();
  config.corpus_root = (kSourceDir / "fixtures/corpus").string();
  config.annotator.model = "mock-annotator";
  config.annotator.cache_dir = ".cache/llm";
  return config;
}

fs::path fresh_out(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("vcurate_pipe_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

json read_json_file(const fs::path& path) {
  return json::parse(read_text_file(path));
}

}  // namespace

TEST_SUITE("pipeline") {

TEST_CASE("stages require their upstream manifests by command name") {
  const PipelineConfig config = fixture_config();
  const fs::path out = fresh_out("order");
  auto expect_names = [&](auto&& fn, const std::string& producer) {
    bool threw = false;
    try {
      fn();
    } catch (const Error& e) {
      threw = true;
      CHECK(std::string(e.what()).find("`" + producer + "`") !=
            std::string::npos);
    }
    CHECK(threw);
  };
  expect_names([&] { run_dedup(config, out); }, "ingest");
  expect_names([&] { run_annotate(config, out); }, "dedup");
  expect_names([&] { run_build_instructions(config, out); }, "annotate");
  expect_names([&] { run_curriculum(config, out); }, "build-instructions");
  expect_names([&] { run_stats(config, out); }, "annotate");
  fs::remove_all(out);
}

TEST_CASE("offline pipeline end to end over the fixture corpus") {
  const PipelineConfig config = fixture_config();
  const fs::path out = fresh_out("e2e");

  const IngestSummary ingest = run_ingest(config, out);
  CHECK(ingest.files_scanned == 20);
  CHECK(ingest.modules_found == 20);
  CHECK(ingest.modules_kept == 20);
  CHECK(read_modules_jsonl(out / files::kModules).size() == 20);

  const DedupSummary dedup = run_dedup(config, out);
  CHECK(dedup.input_modules == 20);
  CHECK(dedup.retained == 18);
  CHECK(dedup.clusters == 1);

  // dry run: routing only, no clients, no annotations
  const AnnotateSummary dry =
      run_annotate(config, out, {.mock_dir = "", .dry_run = true});
  CHECK(dry.dry_run);
  CHECK(fs::exists(out / files::kAnnotatePlan));
  CHECK_FALSE(fs::exists(out / files::kAnnotations));
  const json plan = read_json_file(out / files::kAnnotatePlan);
  std::size_t segment_candidates = 0;
  for (const json& row : plan.at("plan")) {
    if (row.at("verdict") == "SegmentCandidate") ++segment_candidates;
  }
  CHECK(segment_candidates == 1);

  // mock-LLM annotation
  const fs::path mock_dir = out / "mock_llm";
  testing::write_mock_fixtures(
      config, read_modules_jsonl(out / files::kModulesDedup), mock_dir);
  const AnnotateSummary annotate =
      run_annotate(config, out, {.mock_dir = mock_dir.string()});
  CHECK(annotate.modules == 18);
  CHECK(annotate.unit_errors == 0);
  CHECK(annotate.rejected_records == 0);
  CHECK(annotate.accepted_records == 456);

  const AnnotationStats stats = recompute_stats(config, out);
  CHECK(stats.at(Level::Line, Granularity::LineComment) == 406);
  CHECK(stats.at(Level::Module, Granularity::Detailed) == 17);
  CHECK(stats.at(Level::Module, Granularity::HighLevel) == 17);
  CHECK(stats.at(Level::Block, Granularity::Detailed) == 8);
  CHECK(stats.at(Level::Block, Granularity::HighLevel) == 8);

  const InstructionsSummary instructions = run_build_instructions(config, out);
  CHECK(instructions.samples == 946);

  const CurriculumSummary curriculum = run_curriculum(config, out);
  CHECK(curriculum.shards == 5);
  CHECK(curriculum.samples == 946);
  const json manifest = read_json_file(out / files::kCurriculumManifest);
  const std::vector<std::string> expected_keys = {
      "line_line_comment_gpt", "block_detailed_gpt", "block_high_level_gpt",
      "module_detailed_gpt", "module_high_level_gpt"};
  REQUIRE(manifest.at("shards").size() == expected_keys.size());
  for (std::size_t i = 0; i < expected_keys.size(); ++i) {
    CHECK(manifest.at("shards")[i].at("key") == expected_keys[i]);
  }
  CHECK(manifest.at("decoding").at("understand_temperature") == 0.8);
  CHECK(manifest.at("decoding").at("generate_temperature") == 0.5);

  const std::string table = run_stats(config, out);
  CHECK(table.find("Line Level") != std::string::npos);
  CHECK(table.find("406") != std::string::npos);

  // idempotence: a second run reproduces byte-identical record files
  const std::string dedup_before =
      read_text_file(out / files::kModulesDedup);
  const std::string annotations_before =
      read_text_file(out / files::kAnnotations);
  const std::string instructions_before =
      read_text_file(out / files::kInstructions);
  const std::string first_shard =
      (out / files::kCurriculumDir / "shard_0000_line_line_comment_gpt.jsonl")
          .string();
  const std::string shard_before = read_text_file(first_shard);
  json dedup_manifest_before = read_json_file(out / files::kDedupManifest);
  run_dedup(config, out);
  run_annotate(config, out, {.mock_dir = mock_dir.string()});
  run_build_instructions(config, out);
  run_curriculum(config, out);
  // manifests may differ only inside their metadata block
  json dedup_manifest_after = read_json_file(out / files::kDedupManifest);
  dedup_manifest_before.erase("metadata");
  dedup_manifest_after.erase("metadata");
  CHECK(dedup_manifest_before == dedup_manifest_after);
  CHECK(read_text_file(out / files::kModulesDedup) == dedup_before);
  CHECK(read_text_file(out / files::kAnnotations) == annotations_before);
  CHECK(read_text_file(out / files::kInstructions) == instructions_before);
  CHECK(read_text_file(first_shard) == shard_before);

  // seed override changes within-shard order but conserves content
  run_curriculum(config, out, 999);
  CHECK(read_text_file(first_shard) != shard_before);
  CHECK(run_curriculum(config, out, 999).samples == 946);

  fs::remove_all(out);
}

TEST_CASE("human annotations merge into stats and instructions") {
  const PipelineConfig config = fixture_config();
  const fs::path out = fresh_out("human");
  run_ingest(config, out);
  run_dedup(config, out);
  const auto modules = read_modules_jsonl(out / files::kModulesDedup);
  const fs::path mock_dir = out / "mock_llm";
  testing::write_mock_fixtures(config, modules, mock_dir);
  run_annotate(config, out, {.mock_dir = mock_dir.string()});

  // human file referencing one real module and one unknown block
  const fs::path human = out / "human.jsonl";
  std::ofstream(human)
      << json({{"target_id", modules[0].id},
               {"level", "module"},
               {"entries", {{"H", "Top role."}, {"D", "Does things."}}}})
             .dump()
      << "\n"
      << json({{"target_id", "ghost_block"},
               {"level", "block"},
               {"entries",
                {{"H", "Sync."}, {"M", "Context."}, {"D", "Two stages."}}}})
             .dump()
      << "\n";
  const ImportSummary import = run_import_human(config, out, human);
  CHECK(import.records == 5);
  CHECK(import.errors == 0);

  const AnnotationStats stats = recompute_stats(config, out);
  CHECK(stats.at(Level::Block, Granularity::MediumDetail) == 1);

  const InstructionsSummary instructions = run_build_instructions(config, out);
  // module human record adds 2 granularities x 3 tasks; ghost block records
  // are skipped with warnings
  CHECK(instructions.samples == 946 + 6);
  CHECK(instructions.warnings == 3);
  fs::remove_all(out);
}

TEST_CASE("mutating mock trips the step-1 code gate") {
  const PipelineConfig config = fixture_config();
  const fs::path out = fresh_out("mutant");
  run_ingest(config, out);
  run_dedup(config, out);
  const auto modules = read_modules_jsonl(out / files::kModulesDedup);
  const fs::path mock_dir = out / "mock_llm";
  testing::write_mock_fixtures(config, modules, mock_dir,
                               {.mutate_step1 = true});
  const AnnotateSummary annotate =
      run_annotate(config, out, {.mock_dir = mock_dir.string()});
  CHECK(annotate.accepted_records == 0);
  CHECK(annotate.unit_errors == 25);  // 17 modules + 8 blocks
  const json manifest = read_json_file(out / files::kAnnotateManifest);
  bool saw_mutation = false;
  for (const json& e : manifest.at("unit_errors")) {
    if (e.at("reason") == "code_mutated") saw_mutation = true;
  }
  CHECK(saw_mutation);
  fs::remove_all(out);
}

TEST_CASE("sample-for-review draws a seeded deterministic sample") {
  const PipelineConfig config = fixture_config();
  const fs::path out = fresh_out("review");
  run_ingest(config, out);
  run_dedup(config, out);
  const auto modules = read_modules_jsonl(out / files::kModulesDedup);
  testing::write_mock_fixtures(config, modules, out / "mock_llm");
  run_annotate(config, out, {.mock_dir = (out / "mock_llm").string()});

  CHECK(run_sample_for_review(config, out, 10, 42) == 10);
  const std::string first = read_text_file(out / files::kReview);
  CHECK(run_sample_for_review(config, out, 10, 42) == 10);
  CHECK(read_text_file(out / files::kReview) == first);
  CHECK(run_sample_for_review(config, out, 10, 43) == 10);
  CHECK(read_text_file(out / files::kReview) != first);
  // oversampling caps at the record count
  CHECK(run_sample_for_review(config, out, 100000, 1) == 456);
  fs::remove_all(out);
}

TEST_CASE("understanding evaluation with mock judge and hash embedder") {
  const PipelineConfig config = fixture_config();
  const fs::path out = fresh_out("understand");

  const fs::path bench = out / "bench.jsonl";
  const fs::path outputs = out / "outputs.jsonl";
  std::ofstream(bench)
      << json({{"id", "u1"},
               {"code", "module m; endmodule"},
               {"reference", "counts rising edges of the clock"}})
             .dump()
      << "\n"
      << json({{"id", "u2"},
               {"code", "module n; endmodule"},
               {"reference", "divides the input clock by two"}})
             .dump()
      << "\n";
  std::ofstream(outputs)
      << json({{"id", "u1"}, {"candidate", "counts rising edges of the clock"}})
             .dump()
      << "\n";

  // judge fixtures for the scored pair
  const fs::path mock_dir = out / "judge";
  fs::create_directories(mock_dir);
  write_text_file_atomic(mock_dir / "__default__.txt", "score: 0.9");

  const UnderstandingReport report = run_eval_understand(
      config, out, outputs, bench, {.mock_dir = mock_dir.string()});
  REQUIRE(report.pairs.size() == 1);
  CHECK(report.pairs[0].bleu4 == doctest::Approx(100.0));
  CHECK(report.pairs[0].rouge1 == doctest::Approx(100.0));
  REQUIRE(report.pairs[0].emb_sim.has_value());
  CHECK(*report.pairs[0].emb_sim == doctest::Approx(1.0));
  REQUIRE(report.pairs[0].gpt.has_value());
  CHECK(*report.pairs[0].gpt == doctest::Approx(0.9));
  REQUIRE(report.errors.size() == 1);
  CHECK(report.errors[0].find("u2") != std::string::npos);
  CHECK(fs::exists(out / files::kUnderstandingReport));
  fs::remove_all(out);
}

TEST_CASE("cli binary drives the full offline pipeline") {
  const fs::path cli = VCURATE_CLI_PATH;
  REQUIRE(fs::exists(cli));
  const fs::path out = fresh_out("cli");

  // config file for the CLI
  const fs::path config_path = out / "config.json";
  const json config_json = {
      {"corpus", {{"root", (kSourceDir / "fixtures/corpus").string()}}},
      {"clients",
       {{"annotator",
         {{"model", "mock-annotator"}, {"cache_dir", ".cache/llm"}}}}},
  };
  write_text_file_atomic(config_path, config_json.dump(2));

  auto cli_run = [&](std::vector<std::string> args) {
    args.insert(args.begin(), cli.string());
    return exec_command(args, out, 120000);
  };

  ExecResult r = cli_run({"ingest", "--config", config_path.string(), "--out",
                          out.string()});
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("20 files") != std::string::npos);

  r = cli_run({"dedup", "--config", config_path.string(), "--out", out.string()});
  CHECK(r.exit_code == 0);

  const PipelineConfig config = load_config(config_path);
  testing::write_mock_fixtures(
      config, read_modules_jsonl(out / files::kModulesDedup), out / "mock");
  r = cli_run({"annotate", "--config", config_path.string(), "--out",
               out.string(), "--mock-llm", (out / "mock").string()});
  CHECK(r.exit_code == 0);

  r = cli_run({"build-instructions", "--config", config_path.string(), "--out",
               out.string()});
  CHECK(r.exit_code == 0);

  r = cli_run({"curriculum", "--config", config_path.string(), "--out",
               out.string()});
  CHECK(r.exit_code == 0);

  r = cli_run({"stats", "--config", config_path.string(), "--out", out.string()});
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("Line Level") != std::string::npos);

  // eval-generate without a simulator: nonzero exit naming the binary
  const fs::path bad_config = out / "bad_sim.json";
  json bad = config_json;
  bad["simulator"] = {{"compile_cmd", "missing_simulator_zz -o {output} {sources}"}};
  write_text_file_atomic(bad_config, bad.dump(2));
  r = cli_run({"eval-generate", "--config", bad_config.string(), "--out",
               out.string(), "--problems",
               (kSourceDir / "fixtures/genbench/problems").string(),
               "--samples", (out / "none.jsonl").string()});
  CHECK(r.exit_code != 0);
  CHECK(r.output.find("missing_simulator_zz") != std::string::npos);

  // empty instructions file: curriculum exits 0 with a warning
  const fs::path empty_out = fresh_out("cli_empty");
  write_text_file_atomic(empty_out / files::kInstructions, "");
  r = exec_command({cli.string(), "curriculum", "--config",
                    config_path.string(), "--out", empty_out.string()},
                   empty_out, 60000);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("warning") != std::string::npos);
  fs::remove_all(empty_out);

  // unknown config keys are rejected
  const fs::path typo_config = out / "typo.json";
  write_text_file_atomic(typo_config, R"({"corpsu": {}})");
  r = cli_run({"ingest", "--config", typo_config.string(), "--out",
               out.string()});
  CHECK(r.exit_code != 0);
  CHECK(r.output.find("unknown key") != std::string::npos);

  fs::remove_all(out);
}

}  // TEST_SUITE

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
// vcurate: curate a Verilog corpus into an instruction-tuning dataset and
// evaluate model outputs for understanding and generation.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "vcurate/pipeline.hpp"

namespace {

using namespace vcurate;

struct GlobalArgs {
  std::string config_path;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  bool dry_run = false;
  std::string mock_llm;
};

PipelineConfig load(const GlobalArgs& args) {
  if (args.config_path.empty()) return default_config();
  return load_config(args.config_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verilog corpus curation and evaluation toolchain"};
  app.require_subcommand(1);
  // global flags may follow the subcommand
  app.fallthrough();

  GlobalArgs args;
  app.add_option("--config", args.config_path, "Pipeline config file (JSON)");
  app.add_option("--out", args.out_dir, "Working/output directory");
  std::uint64_t seed_value = 0;
  auto* seed_opt = app.add_option("--seed", seed_value,
                                  "Override the stage seed");
  app.add_flag("--dry-run", args.dry_run,
               "Route and gate without any network calls (annotate)");
  app.add_option("--mock-llm", args.mock_llm,
                 "Mock-LLM fixture directory (offline runs)");

  auto* cmd_ingest = app.add_subcommand("ingest", "Scan and split the corpus");
  std::string ingest_root;
  cmd_ingest->add_option("--root", ingest_root, "Override corpus root");

  auto* cmd_dedup = app.add_subcommand("dedup", "Near-duplicate removal");

  auto* cmd_annotate =
      app.add_subcommand("annotate", "Chain-of-thought annotation");

  auto* cmd_import =
      app.add_subcommand("import-human", "Import human annotations");
  std::string human_file;
  cmd_import->add_option("--file", human_file, "Human-annotation JSONL")
      ->required();

  auto* cmd_instructions = app.add_subcommand(
      "build-instructions", "Construct instruction-tuning samples");

  auto* cmd_curriculum =
      app.add_subcommand("curriculum", "Emit curriculum-ordered shards");

  auto* cmd_understand =
      app.add_subcommand("eval-understand", "Score description outputs");
  std::string outputs_path;
  std::string benchmark_path;
  bool no_clients = false;
  cmd_understand->add_option("--outputs", outputs_path, "Model outputs JSONL")
      ->required();
  cmd_understand
      ->add_option("--benchmark", benchmark_path, "Benchmark JSONL")
      ->required();
  cmd_understand->add_flag("--lexical-only", no_clients,
                           "Skip embedding and judge metrics");

  auto* cmd_generate =
      app.add_subcommand("eval-generate", "Simulator-backed generation scoring");
  std::string problems_dir;
  std::string samples_path;
  cmd_generate->add_option("--problems", problems_dir, "Benchmark problems dir")
      ->required();
  cmd_generate->add_option("--samples", samples_path, "Generated samples JSONL")
      ->required();

  auto* cmd_stats =
      app.add_subcommand("stats", "Render annotation statistics");

  auto* cmd_review = app.add_subcommand(
      "sample-for-review", "Draw a seeded sample of records for manual review");
  std::size_t review_size = 0;
  auto* review_size_opt =
      cmd_review->add_option("--size", review_size, "Sample size");

  CLI11_PARSE(app, argc, argv);
  if (seed_opt->count() > 0) args.seed = seed_value;

  try {
    const PipelineConfig config = load(args);
    const std::filesystem::path out(args.out_dir);

    if (cmd_ingest->parsed()) {
      PipelineConfig c = config;
      if (!ingest_root.empty()) c.corpus_root = ingest_root;
      const IngestSummary s = run_ingest(c, out);
      std::cout << "ingest: " << s.files_scanned << " files, "
                << s.modules_found << " modules found, " << s.modules_kept
                << " kept\n";
    } else if (cmd_dedup->parsed()) {
      const DedupSummary s = run_dedup(config, out, args.seed);
      std::cout << "dedup: " << s.input_modules << " in, " << s.retained
                << " retained, " << s.clusters << " clusters\n";
    } else if (cmd_annotate->parsed()) {
      AnnotateOptions options;
      options.mock_dir = args.mock_llm;
      options.dry_run = args.dry_run;
      const AnnotateSummary s = run_annotate(config, out, options);
      if (s.dry_run) {
        std::cout << "annotate (dry run): " << s.modules
                  << " modules planned\n";
      } else {
        std::cout << "annotate: " << s.modules << " modules, "
                  << s.accepted_records << " accepted records, "
                  << s.rejected_records << " rejected, " << s.unit_errors
                  << " unit errors\n";
      }
    } else if (cmd_import->parsed()) {
      const ImportSummary s = run_import_human(config, out, human_file);
      std::cout << "import-human: " << s.records << " records, " << s.errors
                << " errors\n";
      if (s.errors > 0) return 1;
    } else if (cmd_instructions->parsed()) {
      const InstructionsSummary s = run_build_instructions(config, out);
      std::cout << "build-instructions: " << s.samples << " samples\n";
    } else if (cmd_curriculum->parsed()) {
      const CurriculumSummary s = run_curriculum(config, out, args.seed);
      std::cout << "curriculum: " << s.shards << " shards, " << s.samples
                << " samples\n";
      if (s.samples == 0) {
        std::cerr << "warning: instructions file was empty\n";
      }
    } else if (cmd_understand->parsed()) {
      EvalUnderstandOptions options;
      options.mock_dir = args.mock_llm;
      options.no_clients = no_clients;
      const UnderstandingReport report = run_eval_understand(
          config, out, outputs_path, benchmark_path, options);
      std::cout << render_understanding_table(report);
      if (!report.errors.empty()) {
        for (const std::string& e : report.errors) {
          std::cerr << "error: " << e << "\n";
        }
        return 1;
      }
    } else if (cmd_generate->parsed()) {
      const GenerationReport report =
          run_eval_generate(config, out, problems_dir, samples_path);
      std::cout << report_table(report);
    } else if (cmd_stats->parsed()) {
      std::cout << run_stats(config, out);
    } else if (cmd_review->parsed()) {
      std::optional<std::size_t> size;
      if (review_size_opt->count() > 0) size = review_size;
      const std::size_t taken =
          run_sample_for_review(config, out, size, args.seed);
      std::cout << "sample-for-review: " << taken << " records\n";
    }
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}

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
// Pipeline stages behind the CLI. Every stage reads and writes the JSONL
// files and manifests in one output directory; each checks that its
// upstream stage ran and names the missing command otherwise.

#ifndef VCURATE_PIPELINE_HPP
#define VCURATE_PIPELINE_HPP

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vcurate/annotator.hpp"
#include "vcurate/config.hpp"
#include "vcurate/curriculum.hpp"
#include "vcurate/generation.hpp"
#include "vcurate/instructions.hpp"
#include "vcurate/understanding.hpp"

namespace vcurate {

// Stage file names inside the output directory.
namespace files {
inline constexpr const char* kModules = "modules.jsonl";
inline constexpr const char* kIngestManifest = "ingest_manifest.json";
inline constexpr const char* kModulesDedup = "modules.dedup.jsonl";
inline constexpr const char* kDedupManifest = "dedup_manifest.json";
inline constexpr const char* kAnnotations = "annotations.jsonl";
inline constexpr const char* kHumanAnnotations = "annotations.human.jsonl";
inline constexpr const char* kAnnotationStats = "annotation_stats.json";
inline constexpr const char* kAnnotateManifest = "annotate_manifest.json";
inline constexpr const char* kAnnotatePlan = "annotate_plan.json";
inline constexpr const char* kBlocks = "blocks.jsonl";
inline constexpr const char* kInstructions = "instructions.jsonl";
inline constexpr const char* kInstructionsManifest = "instructions_manifest.json";
inline constexpr const char* kCurriculumDir = "curriculum";
inline constexpr const char* kCurriculumManifest = "curriculum_manifest.json";
inline constexpr const char* kReview = "review.jsonl";
inline constexpr const char* kUnderstandingReport = "understanding_report.json";
inline constexpr const char* kGenerationReport = "generation_report.json";
inline constexpr const char* kTrials = "trials.jsonl";
}  // namespace files

// --- JSONL codecs (shared by stages and tests) ----------------------------

void write_modules_jsonl(const std::filesystem::path& path,
                         const std::vector<VerilogModule>& modules);
std::vector<VerilogModule> read_modules_jsonl(const std::filesystem::path& path);

void write_annotations_jsonl(const std::filesystem::path& path,
                             const std::vector<AnnotationRecord>& records);
std::vector<AnnotationRecord> read_annotations_jsonl(
    const std::filesystem::path& path);

void write_instructions_jsonl(const std::filesystem::path& path,
                              const std::vector<InstructionSample>& samples);
std::vector<InstructionSample> read_instructions_jsonl(
    const std::filesystem::path& path);

// --- stages ------------------------------------------------------------

struct IngestSummary {
  std::size_t files_scanned = 0;
  std::size_t files_skipped = 0;
  std::size_t modules_found = 0;
  std::size_t modules_kept = 0;
  std::map<std::string, std::size_t> rejected_by_reason;
  std::size_t warnings = 0;
};

IngestSummary run_ingest(const PipelineConfig& config,
                         const std::filesystem::path& out_dir);

struct DedupSummary {
  std::size_t input_modules = 0;
  std::size_t retained = 0;
  std::size_t clusters = 0;
};

DedupSummary run_dedup(const PipelineConfig& config,
                       const std::filesystem::path& out_dir,
                       std::optional<std::uint64_t> seed_override = {});

struct AnnotateOptions {
  std::string mock_dir;  // non-empty: MockLlmClient fixture directory
  bool dry_run = false;
};

struct AnnotateSummary {
  std::size_t modules = 0;
  std::size_t accepted_records = 0;
  std::size_t rejected_records = 0;
  std::size_t unit_errors = 0;
  std::size_t discarded_blocks = 0;
  bool dry_run = false;
};

AnnotateSummary run_annotate(const PipelineConfig& config,
                             const std::filesystem::path& out_dir,
                             const AnnotateOptions& options = {});

struct ImportSummary {
  std::size_t records = 0;
  std::size_t errors = 0;
};

ImportSummary run_import_human(const PipelineConfig& config,
                               const std::filesystem::path& out_dir,
                               const std::filesystem::path& file);

struct InstructionsSummary {
  std::size_t samples = 0;
  std::size_t warnings = 0;
};

InstructionsSummary run_build_instructions(const PipelineConfig& config,
                                           const std::filesystem::path& out_dir);

struct CurriculumSummary {
  std::size_t shards = 0;
  std::size_t samples = 0;
};

CurriculumSummary run_curriculum(const PipelineConfig& config,
                                 const std::filesystem::path& out_dir,
                                 std::optional<std::uint64_t> seed_override = {});

/// Renders the annotation-statistics table from annotation_stats.json.
std::string run_stats(const PipelineConfig& config,
                      const std::filesystem::path& out_dir);

/// Recomputes annotation_stats.json from the record files present.
AnnotationStats recompute_stats(const PipelineConfig& config,
                                const std::filesystem::path& out_dir);

struct EvalUnderstandOptions {
  std::string mock_dir;  // judge fixtures; embedder becomes hash-based
  bool no_clients = false;  // lexical metrics only
};

UnderstandingReport run_eval_understand(
    const PipelineConfig& config, const std::filesystem::path& out_dir,
    const std::filesystem::path& outputs_path,
    const std::filesystem::path& benchmark_path,
    const EvalUnderstandOptions& options = {});

GenerationReport run_eval_generate(const PipelineConfig& config,
                                   const std::filesystem::path& out_dir,
                                   const std::filesystem::path& problems_dir,
                                   const std::filesystem::path& samples_path);

std::size_t run_sample_for_review(const PipelineConfig& config,
                                  const std::filesystem::path& out_dir,
                                  std::optional<std::size_t> size_override = {},
                                  std::optional<std::uint64_t> seed_override = {});

std::string render_stats_table(const AnnotationStats& stats);

}  // namespace vcurate

#endif  // VCURATE_PIPELINE_HPP

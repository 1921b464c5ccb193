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

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "vcurate/lexer.hpp"

namespace vcurate {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json manifest_base(const PipelineConfig& config) {
  return {{"tool", "vcurate"},
          {"config_hash", config.config_hash},
          {"metadata", {{"generated_at", iso8601_now()}}}};
}

void require_file(const fs::path& path, const std::string& producer) {
  if (!fs::exists(path)) {
    throw Error("missing " + path.string() + "; run `" + producer + "` first");
  }
}

std::vector<json> read_jsonl(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<json> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      rows.push_back(json::parse(line));
    } catch (const json::exception& e) {
      throw Error(path.string() + ":" + std::to_string(line_no) + ": " +
                  e.what());
    }
  }
  return rows;
}

void write_jsonl(const fs::path& path, const std::vector<json>& rows) {
  std::ostringstream out;
  for (const json& row : rows) out << row.dump() << "\n";
  write_text_file_atomic(path, out.str());
}

void write_json(const fs::path& path, const json& value) {
  write_text_file_atomic(path, value.dump(2) + "\n");
}

}  // namespace

// --- codecs ------------------------------------------------------------

void write_modules_jsonl(const fs::path& path,
                         const std::vector<VerilogModule>& modules) {
  std::vector<json> rows;
  rows.reserve(modules.size());
  for (const VerilogModule& m : modules) {
    rows.push_back({{"id", m.id},
                    {"path", m.path},
                    {"span_start", m.span_start},
                    {"span_end", m.span_end},
                    {"name", m.name},
                    {"raw_text", m.raw_text},
                    {"stripped_text", m.stripped_text}});
  }
  write_jsonl(path, rows);
}

std::vector<VerilogModule> read_modules_jsonl(const fs::path& path) {
  std::vector<VerilogModule> modules;
  for (const json& row : read_jsonl(path)) {
    VerilogModule m;
    m.id = row.at("id").get<std::string>();
    m.path = row.at("path").get<std::string>();
    m.span_start = row.at("span_start").get<std::size_t>();
    m.span_end = row.at("span_end").get<std::size_t>();
    m.name = row.at("name").get<std::string>();
    m.raw_text = row.at("raw_text").get<std::string>();
    m.stripped_text = row.at("stripped_text").get<std::string>();
    modules.push_back(std::move(m));
  }
  return modules;
}

namespace {

json record_to_json(const AnnotationRecord& r) {
  json row = {{"target_id", r.target_id},
              {"module_id", r.module_id},
              {"level", std::string(to_string(r.level))},
              {"granularity", std::string(to_string(r.granularity))},
              {"source", std::string(to_string(r.source))},
              {"description", r.description},
              {"code", r.code},
              {"status", r.accepted ? "accepted" : "rejected"}};
  if (!r.block_id.empty()) row["block_id"] = r.block_id;
  if (r.line) row["line"] = *r.line;
  if (!r.accepted) row["reject_reason"] = std::string(to_string(r.reject_reason));
  return row;
}

AnnotationRecord record_from_json(const json& row) {
  AnnotationRecord r;
  r.target_id = row.at("target_id").get<std::string>();
  r.module_id = row.value("module_id", std::string());
  r.block_id = row.value("block_id", std::string());
  if (row.contains("line")) r.line = row["line"].get<int>();
  r.level = level_from_string(row.at("level").get<std::string>());
  r.granularity = granularity_from_string(row.at("granularity").get<std::string>());
  r.source = source_from_string(row.at("source").get<std::string>());
  r.description = row.at("description").get<std::string>();
  r.code = row.value("code", std::string());
  r.accepted = row.at("status").get<std::string>() == "accepted";
  return r;
}

}  // namespace

void write_annotations_jsonl(const fs::path& path,
                             const std::vector<AnnotationRecord>& records) {
  std::vector<json> rows;
  rows.reserve(records.size());
  for (const AnnotationRecord& r : records) rows.push_back(record_to_json(r));
  write_jsonl(path, rows);
}

std::vector<AnnotationRecord> read_annotations_jsonl(const fs::path& path) {
  std::vector<AnnotationRecord> records;
  for (const json& row : read_jsonl(path)) {
    records.push_back(record_from_json(row));
  }
  return records;
}

namespace {

json sample_to_json(const InstructionSample& s) {
  json row = {{"instruction", s.instruction},
              {"input", s.input},
              {"output", s.output},
              {"task", std::string(to_string(s.task))},
              {"level", std::string(to_string(s.level))},
              {"granularity", std::string(to_string(s.granularity))},
              {"source", std::string(to_string(s.source))},
              {"origin_module_id", s.origin_module_id},
              {"origin_target_id", s.origin_target_id}};
  if (s.origin_line) row["origin_line"] = *s.origin_line;
  return row;
}

InstructionSample sample_from_json(const json& row) {
  InstructionSample s;
  s.instruction = row.at("instruction").get<std::string>();
  s.input = row.at("input").get<std::string>();
  s.output = row.at("output").get<std::string>();
  s.task = task_from_string(row.at("task").get<std::string>());
  s.level = level_from_string(row.at("level").get<std::string>());
  s.granularity = granularity_from_string(row.at("granularity").get<std::string>());
  s.source = source_from_string(row.at("source").get<std::string>());
  s.origin_module_id = row.value("origin_module_id", std::string());
  s.origin_target_id = row.value("origin_target_id", std::string());
  if (row.contains("origin_line")) s.origin_line = row["origin_line"].get<int>();
  return s;
}

}  // namespace

void write_instructions_jsonl(const fs::path& path,
                              const std::vector<InstructionSample>& samples) {
  std::vector<json> rows;
  rows.reserve(samples.size());
  for (const InstructionSample& s : samples) rows.push_back(sample_to_json(s));
  write_jsonl(path, rows);
}

std::vector<InstructionSample> read_instructions_jsonl(const fs::path& path) {
  std::vector<InstructionSample> samples;
  for (const json& row : read_jsonl(path)) {
    samples.push_back(sample_from_json(row));
  }
  return samples;
}

// --- ingest ------------------------------------------------------------

IngestSummary run_ingest(const PipelineConfig& config, const fs::path& out_dir) {
  if (config.corpus_root.empty()) {
    throw Error("config: corpus.root is required for ingest");
  }
  fs::create_directories(out_dir);

  const ScanResult scan = scan_corpus(config.corpus_root, config.extensions);
  IngestSummary summary;
  summary.files_scanned = scan.files.size();
  summary.files_skipped = scan.skipped.size();

  Warnings warnings;
  std::vector<VerilogModule> kept;
  json rejected = json::array();
  for (const SourceFile& file : scan.files) {
    for (VerilogModule& unit : split_modules(file, &warnings)) {
      ++summary.modules_found;
      const FilterVerdict verdict =
          structural_filter(unit, config.comment_ratio_threshold);
      if (verdict.keep) {
        kept.push_back(std::move(unit));
      } else {
        const std::string reason(to_string(verdict.reason));
        ++summary.rejected_by_reason[reason];
        rejected.push_back({{"id", unit.id},
                            {"path", unit.path},
                            {"span_start", unit.span_start},
                            {"reason", reason}});
      }
    }
  }
  summary.modules_kept = kept.size();
  summary.warnings = warnings.size();

  write_modules_jsonl(out_dir / files::kModules, kept);

  json manifest = manifest_base(config);
  manifest["counts"] = {{"files_scanned", summary.files_scanned},
                        {"files_skipped", summary.files_skipped},
                        {"modules_found", summary.modules_found},
                        {"modules_kept", summary.modules_kept}};
  json rejected_counts = json::object();
  for (const auto& [reason, count] : summary.rejected_by_reason) {
    rejected_counts[reason] = count;
  }
  manifest["counts"]["rejected"] = rejected_counts;
  json skips = json::array();
  for (const SkipEntry& s : scan.skipped) {
    skips.push_back({{"path", s.path}, {"reason", s.reason}});
  }
  manifest["skipped_files"] = skips;
  manifest["warnings"] = warnings;
  manifest["rejected_modules"] = rejected;
  write_json(out_dir / files::kIngestManifest, manifest);
  return summary;
}

// --- dedup -------------------------------------------------------------

DedupSummary run_dedup(const PipelineConfig& config, const fs::path& out_dir,
                       std::optional<std::uint64_t> seed_override) {
  require_file(out_dir / files::kModules, "ingest");
  require_file(out_dir / files::kIngestManifest, "ingest");

  const std::vector<VerilogModule> modules =
      read_modules_jsonl(out_dir / files::kModules);
  DedupParams params = config.dedup;
  if (seed_override) params.seed = *seed_override;

  const DedupDecision decision = dedup_corpus(modules, params);

  std::vector<VerilogModule> retained;
  retained.reserve(decision.retained_indices.size());
  for (const std::size_t index : decision.retained_indices) {
    retained.push_back(modules[index]);
  }
  write_modules_jsonl(out_dir / files::kModulesDedup, retained);

  json manifest = manifest_base(config);
  manifest["params"] = {{"threshold", params.threshold},
                        {"num_hashes", params.num_hashes},
                        {"shingle_k", params.shingle_k},
                        {"bands", params.bands},
                        {"rows", params.num_hashes / params.bands},
                        {"seed", params.seed}};
  manifest["retained"] = decision.retained;
  json clusters = json::array();
  for (const DedupCluster& c : decision.clusters) {
    clusters.push_back({{"representative", c.representative},
                        {"duplicates", c.duplicates}});
  }
  manifest["clusters"] = clusters;
  write_json(out_dir / files::kDedupManifest, manifest);

  DedupSummary summary;
  summary.input_modules = modules.size();
  summary.retained = retained.size();
  summary.clusters = decision.clusters.size();
  return summary;
}

// --- annotate ------------------------------------------------------------

namespace {

fs::path resolve_cache_dir(const std::string& dir, const fs::path& out_dir) {
  if (dir.empty()) return {};
  const fs::path p(dir);
  return p.is_absolute() ? p : out_dir / p;
}

std::shared_ptr<LlmClient> make_chat_client(const ClientProfile& profile,
                                            const std::string& mock_dir,
                                            const fs::path& out_dir) {
  std::shared_ptr<LlmClient> inner;
  if (!mock_dir.empty()) {
    inner = std::make_shared<MockLlmClient>(mock_dir);
  } else {
    if (profile.endpoint.empty()) return nullptr;
    inner = std::make_shared<HttpLlmClient>(profile);
  }
  const fs::path cache = resolve_cache_dir(profile.cache_dir, out_dir);
  if (cache.empty()) return inner;
  return std::make_shared<CachingLlmClient>(inner, cache);
}

}  // namespace

AnnotateSummary run_annotate(const PipelineConfig& config,
                             const fs::path& out_dir,
                             const AnnotateOptions& options) {
  require_file(out_dir / files::kModulesDedup, "dedup");
  require_file(out_dir / files::kDedupManifest, "dedup");

  const std::vector<VerilogModule> modules =
      read_modules_jsonl(out_dir / files::kModulesDedup);

  AnnotateSummary summary;
  summary.modules = modules.size();
  summary.dry_run = options.dry_run;

  if (options.dry_run) {
    // Routing and gating only; no clients are constructed.
    json plan = manifest_base(config);
    json rows = json::array();
    for (const VerilogModule& m : modules) {
      const std::size_t tokens = count_tokens(m.stripped_text, config.length_policy);
      const LengthVerdict verdict =
          length_gate(tokens, UnitKind::Module, config.length_policy);
      json row = {{"id", m.id},
                  {"token_count", tokens},
                  {"verdict", std::string(to_string(verdict.kind))}};
      if (verdict.kind == VerdictKind::SegmentCandidate) {
        json blocks = json::array();
        for (const CodeBlock& b : extract_blocks(m)) {
          const LengthVerdict bv =
              length_gate(b.token_count, UnitKind::Block, config.length_policy);
          blocks.push_back({{"id", b.id},
                            {"kind", std::string(to_string(b.kind))},
                            {"token_count", b.token_count},
                            {"verdict", std::string(to_string(bv.kind))}});
        }
        row["blocks"] = blocks;
      }
      rows.push_back(row);
    }
    plan["plan"] = rows;
    write_json(out_dir / files::kAnnotatePlan, plan);
    return summary;
  }

  auto annotator_client =
      make_chat_client(config.annotator, options.mock_dir, out_dir);
  if (annotator_client == nullptr) {
    throw Error("no annotator client configured; set clients.annotator.endpoint "
                "or pass --mock-llm");
  }
  std::shared_ptr<LlmClient> checker_client;
  if (config.checker_enabled) {
    checker_client = make_chat_client(config.checker, options.mock_dir, out_dir);
  }

  const PromptTemplates templates = PromptTemplates::load(config.prompts_dir);

  // Per-module pipelines run on a bounded pool; merge order is fixed by
  // module index so the output is deterministic.
  std::vector<ModuleAnnotation> results(modules.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    AnnotateContext ctx;
    ctx.templates = templates;
    ctx.annotator_profile = config.annotator;
    ctx.checker_profile = config.checker;
    ctx.annotator = annotator_client.get();
    ctx.checker = checker_client.get();
    ctx.semantic_retries = config.annotate_retries;
    ctx.high_level_max_words = config.high_level_max_words;
    ctx.few_shot = config.few_shot;
    ctx.length_policy = config.length_policy;
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= modules.size()) return;
      results[i] = annotate_module(modules[i], ctx);
    }
  };
  const int workers = std::max(
      1, std::min<int>(config.annotate_concurrency,
                       static_cast<int>(std::max<std::size_t>(1, modules.size()))));
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();

  std::vector<AnnotationRecord> records;
  json unit_errors = json::array();
  json discarded = json::array();
  Warnings warnings;
  for (const ModuleAnnotation& result : results) {
    for (const AnnotationRecord& r : result.records) {
      if (r.accepted) {
        ++summary.accepted_records;
      } else {
        ++summary.rejected_records;
      }
      records.push_back(r);
    }
    for (const UnitError& e : result.unit_errors) {
      ++summary.unit_errors;
      unit_errors.push_back({{"unit_id", e.unit_id},
                             {"stage", e.stage},
                             {"reason", std::string(to_string(e.reason))}});
    }
    for (const std::string& b : result.discarded_blocks) {
      ++summary.discarded_blocks;
      discarded.push_back(b);
    }
    warnings.insert(warnings.end(), result.warnings.begin(),
                    result.warnings.end());
  }

  // global deterministic emission order across modules
  std::sort(records.begin(), records.end(),
            [](const AnnotationRecord& a, const AnnotationRecord& b) {
              return std::tie(a.module_id, a.level, a.target_id, a.line,
                              a.granularity, a.source) <
                     std::tie(b.module_id, b.level, b.target_id, b.line,
                              b.granularity, b.source);
            });
  write_annotations_jsonl(out_dir / files::kAnnotations, records);

  // Persist the block inventory of segmented modules so block-targeted
  // human annotations can later resolve their code.
  std::vector<json> block_rows;
  for (const VerilogModule& m : modules) {
    const std::size_t tokens = count_tokens(m.stripped_text, config.length_policy);
    if (length_gate(tokens, UnitKind::Module, config.length_policy).kind !=
        VerdictKind::SegmentCandidate) {
      continue;
    }
    for (const CodeBlock& b : extract_blocks(m)) {
      block_rows.push_back({{"id", b.id},
                            {"module_id", b.module_id},
                            {"kind", std::string(to_string(b.kind))},
                            {"span_start", b.span_start},
                            {"span_end", b.span_end},
                            {"token_count", b.token_count},
                            {"text", b.text}});
    }
  }
  write_jsonl(out_dir / files::kBlocks, block_rows);

  json manifest = manifest_base(config);
  manifest["counts"] = {{"modules", summary.modules},
                        {"accepted_records", summary.accepted_records},
                        {"rejected_records", summary.rejected_records},
                        {"unit_errors", summary.unit_errors},
                        {"discarded_blocks", summary.discarded_blocks}};
  manifest["unit_errors"] = unit_errors;
  manifest["discarded_blocks"] = discarded;
  manifest["warnings"] = warnings;
  write_json(out_dir / files::kAnnotateManifest, manifest);

  recompute_stats(config, out_dir);
  return summary;
}

// --- human import ----------------------------------------------------------

ImportSummary run_import_human(const PipelineConfig& config,
                               const fs::path& out_dir, const fs::path& file) {
  fs::create_directories(out_dir);
  const HumanImport import = import_human_annotations(file);
  write_annotations_jsonl(out_dir / files::kHumanAnnotations, import.records);

  json manifest = manifest_base(config);
  manifest["counts"] = {{"records", import.records.size()},
                        {"errors", import.errors.size()}};
  manifest["errors"] = import.errors;
  write_json(out_dir / "import_human_manifest.json", manifest);

  recompute_stats(config, out_dir);
  return {import.records.size(), import.errors.size()};
}

// --- stats -----------------------------------------------------------------

namespace {

struct StatsRow {
  Level level;
  std::optional<Granularity> granularity;  // nullopt = N/A (line level)
  const char* label;
  const char* granularity_label;
};

constexpr StatsRow kStatsRows[] = {
    {Level::Line, std::nullopt, "Line Level", "N/A"},
    {Level::Block, Granularity::HighLevel, "Block Level",
     "High-level Description"},
    {Level::Block, Granularity::MediumDetail, "Block Level",
     "Medium-Detail Description"},
    {Level::Block, Granularity::Detailed, "Block Level",
     "Detailed Description"},
    {Level::Module, Granularity::HighLevel, "Module Level",
     "High-level Functional Description"},
    {Level::Module, Granularity::Detailed, "Module Level",
     "Detailed Specification"},
};

}  // namespace

AnnotationStats recompute_stats(const PipelineConfig& config,
                                const fs::path& out_dir) {
  AnnotationStats stats;
  for (const char* file : {files::kAnnotations, files::kHumanAnnotations}) {
    const fs::path path = out_dir / file;
    if (!fs::exists(path)) continue;
    for (const AnnotationRecord& r : read_annotations_jsonl(path)) {
      stats.add(r);
    }
  }

  json rows = json::array();
  for (const StatsRow& row : kStatsRows) {
    std::size_t count = 0;
    if (row.granularity) {
      count = stats.at(row.level, *row.granularity);
    } else {
      count = stats.at(Level::Line, Granularity::LineComment);
    }
    rows.push_back({{"level", row.label},
                    {"granularity", row.granularity_label},
                    {"count", count}});
  }
  json out = manifest_base(config);
  out["rows"] = rows;
  out["total"] = stats.total();
  write_json(out_dir / files::kAnnotationStats, out);
  return stats;
}

std::string render_stats_table(const AnnotationStats& stats) {
  std::ostringstream out;
  out << "Comment Level   Granularity                          Count\n";
  for (const StatsRow& row : kStatsRows) {
    const std::size_t count =
        row.granularity ? stats.at(row.level, *row.granularity)
                        : stats.at(Level::Line, Granularity::LineComment);
    out << std::setw(15) << std::left << row.label << " " << std::setw(36)
        << row.granularity_label << std::right << std::setw(6) << count
        << "\n";
  }
  out << "total: " << stats.total() << "\n";
  return out.str();
}

std::string run_stats(const PipelineConfig& config, const fs::path& out_dir) {
  require_file(out_dir / files::kAnnotationStats, "annotate");
  const json stats_json =
      json::parse(read_text_file(out_dir / files::kAnnotationStats));
  std::ostringstream out;
  out << "Comment Level   Granularity                          Count\n";
  for (const json& row : stats_json.at("rows")) {
    out << std::setw(15) << std::left << row.at("level").get<std::string>()
        << " " << std::setw(36) << row.at("granularity").get<std::string>()
        << std::right << std::setw(6) << row.at("count").get<std::size_t>()
        << "\n";
  }
  out << "total: " << stats_json.at("total").get<std::size_t>() << "\n";
  (void)config;
  return out.str();
}

// --- instructions ------------------------------------------------------

InstructionsSummary run_build_instructions(const PipelineConfig& config,
                                           const fs::path& out_dir) {
  require_file(out_dir / files::kAnnotations, "annotate");
  require_file(out_dir / files::kModulesDedup, "dedup");

  std::vector<AnnotationRecord> records =
      read_annotations_jsonl(out_dir / files::kAnnotations);
  if (fs::exists(out_dir / files::kHumanAnnotations)) {
    for (AnnotationRecord& r :
         read_annotations_jsonl(out_dir / files::kHumanAnnotations)) {
      records.push_back(std::move(r));
    }
  }

  std::map<std::string, std::string> code_by_id;
  for (const VerilogModule& m :
       read_modules_jsonl(out_dir / files::kModulesDedup)) {
    code_by_id[m.id] = m.stripped_text;
  }
  if (fs::exists(out_dir / files::kBlocks)) {
    for (const json& row : read_jsonl(out_dir / files::kBlocks)) {
      code_by_id[row.at("id").get<std::string>()] =
          row.at("text").get<std::string>();
    }
  }

  const PromptTemplates templates = PromptTemplates::load(config.prompts_dir);
  const InstructionTemplates table =
      InstructionTemplates::from_json(templates.instruction_templates_json);

  const DatasetEmission emission = emit_dataset(records, code_by_id, table);
  write_instructions_jsonl(out_dir / files::kInstructions, emission.samples);

  json manifest = manifest_base(config);
  json cells = json::array();
  for (const auto& [key, count] : emission.counts.per_cell) {
    const auto& [task, level, granularity, source] = key;
    cells.push_back({{"task", std::string(to_string(task))},
                     {"level", std::string(to_string(level))},
                     {"granularity", std::string(to_string(granularity))},
                     {"source", std::string(to_string(source))},
                     {"count", count}});
  }
  manifest["counts"] = {{"samples", emission.samples.size()}};
  manifest["cells"] = cells;
  manifest["warnings"] = emission.warnings;
  write_json(out_dir / files::kInstructionsManifest, manifest);

  return {emission.samples.size(), emission.warnings.size()};
}

// --- curriculum ------------------------------------------------------------

CurriculumSummary run_curriculum(const PipelineConfig& config,
                                 const fs::path& out_dir,
                                 std::optional<std::uint64_t> seed_override) {
  require_file(out_dir / files::kInstructions, "build-instructions");

  std::vector<InstructionSample> samples =
      read_instructions_jsonl(out_dir / files::kInstructions);
  const std::uint64_t seed =
      seed_override ? *seed_override : config.curriculum_seed;

  std::vector<CurriculumShard> shards;
  if (config.curriculum_mode == CurriculumMode::AllAtOnce) {
    shards = all_at_once_shard(std::move(samples), seed);
  } else {
    shards = preorder_shards(std::move(samples), seed);
  }

  const fs::path shard_dir = out_dir / files::kCurriculumDir;
  fs::remove_all(shard_dir);
  fs::create_directories(shard_dir);

  json shard_list = json::array();
  std::size_t total = 0;
  for (std::size_t i = 0; i < shards.size(); ++i) {
    const CurriculumShard& shard = shards[i];
    std::ostringstream name;
    name << "shard_" << std::setw(4) << std::setfill('0') << i << "_";
    if (config.curriculum_mode == CurriculumMode::AllAtOnce) {
      name << "all";
    } else {
      name << shard.key.label();
    }
    name << ".jsonl";
    write_instructions_jsonl(shard_dir / name.str(), shard.samples);
    const std::string key_label =
        config.curriculum_mode == CurriculumMode::AllAtOnce
            ? std::string("all")
            : shard.key.label();
    shard_list.push_back({{"file", std::string(files::kCurriculumDir) + "/" + name.str()},
                          {"key", key_label},
                          {"count", shard.samples.size()},
                          {"shuffle_seed", shard.shuffle_seed}});
    total += shard.samples.size();
  }

  json manifest = manifest_base(config);
  manifest["mode"] = config.curriculum_mode == CurriculumMode::AllAtOnce
                         ? "all_at_once"
                         : "preorder";
  manifest["seed"] = seed;
  manifest["shards"] = shard_list;
  manifest["counts"] = {{"shards", shards.size()}, {"samples", total}};
  manifest["decoding"] = {{"understand_temperature", config.understand_temperature},
                          {"generate_temperature", config.generate_temperature}};
  write_json(out_dir / files::kCurriculumManifest, manifest);

  return {shards.size(), total};
}

// --- eval: understanding -------------------------------------------------

UnderstandingReport run_eval_understand(const PipelineConfig& config,
                                        const fs::path& out_dir,
                                        const fs::path& outputs_path,
                                        const fs::path& benchmark_path,
                                        const EvalUnderstandOptions& options) {
  fs::create_directories(out_dir);

  std::vector<BenchmarkEntry> benchmark;
  for (const json& row : read_jsonl(benchmark_path)) {
    benchmark.push_back({row.at("id").get<std::string>(),
                         row.value("code", std::string()),
                         row.at("reference").get<std::string>()});
  }
  std::map<std::string, std::string> outputs;
  for (const json& row : read_jsonl(outputs_path)) {
    outputs[row.at("id").get<std::string>()] =
        row.at("candidate").get<std::string>();
  }

  std::shared_ptr<LlmClient> judge;
  std::shared_ptr<EmbedClient> embedder;
  if (!options.no_clients) {
    if (!options.mock_dir.empty()) {
      judge = std::make_shared<MockLlmClient>(options.mock_dir);
      embedder = std::make_shared<HashEmbedClient>();
    } else {
      if (!config.judge.endpoint.empty()) {
        judge = std::make_shared<HttpLlmClient>(config.judge);
      }
      if (!config.embedder.endpoint.empty()) {
        embedder = std::make_shared<HttpEmbedClient>(config.embedder);
      }
    }
    const fs::path embed_cache =
        resolve_cache_dir(config.embedder.cache_dir, out_dir);
    if (embedder != nullptr && !embed_cache.empty()) {
      embedder = std::make_shared<CachingEmbedClient>(embedder, embed_cache,
                                                      config.embedder.model);
    }
    const fs::path judge_cache = resolve_cache_dir(config.judge.cache_dir, out_dir);
    if (judge != nullptr && !judge_cache.empty()) {
      judge = std::make_shared<CachingLlmClient>(judge, judge_cache);
    }
  }

  JudgeSettings judge_cfg;
  judge_cfg.templates = PromptTemplates::load(config.prompts_dir);
  judge_cfg.profile = config.judge;
  judge_cfg.retries = config.annotate_retries;

  Warnings warnings;
  const UnderstandingReport report = evaluate_understanding(
      benchmark, outputs, embedder.get(), judge.get(), judge_cfg,
      config.rouge_mode, &warnings);

  json out = manifest_base(config);
  json pairs = json::array();
  for (const PairScores& p : report.pairs) {
    json row = {{"id", p.id},
                {"bleu4", p.bleu4},
                {"rouge1", p.rouge1},
                {"rouge2", p.rouge2},
                {"rougeL", p.rouge_l}};
    if (p.emb_sim) row["emb_sim"] = *p.emb_sim;
    if (p.gpt) row["gpt_score"] = *p.gpt;
    pairs.push_back(row);
  }
  out["pairs"] = pairs;
  out["means"] = {{"bleu4", report.mean_bleu4},
                  {"rouge1", report.mean_rouge1},
                  {"rouge2", report.mean_rouge2},
                  {"rougeL", report.mean_rouge_l}};
  if (report.mean_emb_sim) out["means"]["emb_sim"] = *report.mean_emb_sim;
  if (report.mean_gpt) out["means"]["gpt_score"] = *report.mean_gpt;
  out["unscored"] = {{"embedding", report.emb_unscored},
                     {"judge", report.gpt_unscored}};
  out["errors"] = report.errors;
  out["modes"] = {{"smoothing", report.smoothing},
                  {"aggregation", report.aggregation},
                  {"rouge", report.rouge_mode == RougeMode::F1 ? "f1" : "recall"}};
  out["warnings"] = warnings;
  write_json(out_dir / files::kUnderstandingReport, out);
  return report;
}

// --- eval: generation ------------------------------------------------------

GenerationReport run_eval_generate(const PipelineConfig& config,
                                   const fs::path& out_dir,
                                   const fs::path& problems_dir,
                                   const fs::path& samples_path) {
  fs::create_directories(out_dir);

  if (!probe_simulator(config.simulator)) {
    throw Error("simulator binary not found on PATH: " +
                simulator_binary_name(config.simulator));
  }

  const std::vector<Problem> problems = load_problems(problems_dir);
  std::map<std::string, std::vector<std::string>> samples;
  for (const json& row : read_jsonl(samples_path)) {
    const std::string id = row.at("problem_id").get<std::string>();
    const int index = row.at("sample_index").get<int>();
    auto& list = samples[id];
    if (static_cast<int>(list.size()) <= index) list.resize(index + 1);
    list[index] = row.at("code").get<std::string>();
  }

  std::vector<TrialResult> trial_log;
  const GenerationReport report =
      run_benchmark(problems, samples, config.simulator,
                    out_dir / "sim_work", &trial_log, config.pass1_mode);

  std::vector<json> trial_rows;
  for (const TrialResult& t : trial_log) {
    trial_rows.push_back({{"problem_id", t.problem_id},
                          {"sample_index", t.sample_index},
                          {"syntax_pass", t.syntax_pass},
                          {"function_pass", t.function_pass},
                          {"failure_reason", t.failure_reason},
                          {"wall_time_s", t.wall_time_s}});
  }
  write_jsonl(out_dir / files::kTrials, trial_rows);

  json out = manifest_base(config);
  json problem_rows = json::array();
  for (const ProblemTrials& p : report.problems) {
    const auto frac = [](const std::vector<bool>& v) {
      return static_cast<double>(std::count(v.begin(), v.end(), true)) /
             static_cast<double>(v.size());
    };
    problem_rows.push_back({{"id", p.problem_id},
                            {"category", std::string(to_string(p.category))},
                            {"syntax_fraction", frac(p.syntax)},
                            {"function_fraction", frac(p.function)}});
  }
  out["problems"] = problem_rows;
  out["samples_per_problem"] = report.samples_per_problem;
  out["pass1_mode"] = std::string(to_string(report.pass1_mode));
  out["aggregates"] = {
      {"syntax",
       {{"success_rate", report.syntax.success_rate},
        {"pass_at_1", report.syntax.pass_at_1},
        {"pass_at_5", report.syntax.pass_at_5}}},
      {"function",
       {{"success_rate", report.function.success_rate},
        {"pass_at_1", report.function.pass_at_1},
        {"pass_at_5", report.function.pass_at_5}}}};
  write_json(out_dir / files::kGenerationReport, out);

  std::error_code ec;
  fs::remove_all(out_dir / "sim_work", ec);
  return report;
}

// --- review sampling ---------------------------------------------------

std::size_t run_sample_for_review(const PipelineConfig& config,
                                  const fs::path& out_dir,
                                  std::optional<std::size_t> size_override,
                                  std::optional<std::uint64_t> seed_override) {
  require_file(out_dir / files::kAnnotations, "annotate");

  std::vector<AnnotationRecord> accepted;
  for (const char* file : {files::kAnnotations, files::kHumanAnnotations}) {
    const fs::path path = out_dir / file;
    if (!fs::exists(path)) continue;
    for (AnnotationRecord& r : read_annotations_jsonl(path)) {
      if (r.accepted) accepted.push_back(std::move(r));
    }
  }
  std::sort(accepted.begin(), accepted.end(),
            [](const AnnotationRecord& a, const AnnotationRecord& b) {
              return std::tie(a.module_id, a.level, a.target_id, a.line,
                              a.granularity, a.source) <
                     std::tie(b.module_id, b.level, b.target_id, b.line,
                              b.granularity, b.source);
            });

  const std::size_t want =
      size_override ? *size_override
                    : static_cast<std::size_t>(config.review_sample_size);
  const std::uint64_t seed = seed_override ? *seed_override : config.review_seed;

  // Seeded partial Fisher-Yates: the first `want` slots form the sample.
  std::mt19937_64 rng(seed);
  const std::size_t n = accepted.size();
  const std::size_t take = std::min(want, n);
  for (std::size_t i = 0; i < take; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng() % (n - i));
    std::swap(accepted[i], accepted[j]);
  }
  accepted.resize(take);

  std::vector<json> rows;
  for (const AnnotationRecord& r : accepted) {
    rows.push_back({{"target_id", r.target_id},
                    {"level", std::string(to_string(r.level))},
                    {"granularity", std::string(to_string(r.granularity))},
                    {"source", std::string(to_string(r.source))},
                    {"code", r.code},
                    {"description", r.description}});
  }
  write_jsonl(out_dir / files::kReview, rows);
  return take;
}

}  // namespace vcurate

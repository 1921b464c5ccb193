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
// Acceptance suite: nine release gates, one pass/fail line each. Gates
// cover aggregate reproduction of published per-problem result tables,
// exhaustive metric-oracle equivalence, MinHash estimation accuracy, the
// lexer/splitter properties, curriculum ordering, the offline end-to-end
// pipeline, the simulator path (skipped with a visible marker when no
// simulator is installed), and the pass@1 estimator identity.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <set>
#include <sstream>
#include <thread>
#include <vector>

#include <json.hpp>

#include "mock_llm.hpp"
#include "oracles.hpp"
#include "vcurate/generation.hpp"
#include "vcurate/metrics.hpp"
#include "vcurate/pipeline.hpp"
#include "vcurate/subprocess.hpp"

using namespace vcurate;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int g_failures = 0;

struct Gate {
  int number;
  std::string name;
  std::vector<std::string> problems;
  bool skipped = false;
  std::string skip_reason;

  void expect(bool ok, const std::string& message) {
    if (!ok) problems.push_back(message);
  }
  void expect_near(double actual, double want, double tol,
                   const std::string& label) {
    if (std::fabs(actual - want) > tol) {
      std::ostringstream msg;
      msg << label << ": got " << actual << ", want " << want << " (tol "
          << tol << ")";
      problems.push_back(msg.str());
    }
  }
  void finish() {
    if (skipped) {
      std::printf("[SKIP] criterion %d: %s -- %s\n", number, name.c_str(),
                  skip_reason.c_str());
      return;
    }
    if (problems.empty()) {
      std::printf("[PASS] criterion %d: %s\n", number, name.c_str());
    } else {
      ++g_failures;
      std::printf("[FAIL] criterion %d: %s\n", number, name.c_str());
      for (const std::string& p : problems) {
        std::printf("       - %s\n", p.c_str());
      }
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

const fs::path kSourceDir = VCURATE_SOURCE_DIR;

fs::path fresh_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("vcurate_accept_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// --- criterion 1: published-table aggregate reproduction -------------------

struct CellRow {
  const char* id;
  Category category;
  int syntax_pct;
  int function_pct;
};

// Per-problem (syntax%, function%) cells over five trials, transcribed from
// the published generation-results table for the three models checked here.
const CellRow kGpt35[] = {
    {"Johnson_Counter", Category::Logic, 40, 0},
    {"alu", Category::Logic, 0, 0},
    {"edge_detect", Category::Logic, 60, 20},
    {"freq_div", Category::Logic, 100, 0},
    {"mux", Category::Logic, 100, 100},
    {"parallel2serial", Category::Logic, 80, 0},
    {"pulse_detect", Category::Logic, 60, 40},
    {"right_shifter", Category::Logic, 60, 60},
    {"serial2parallel", Category::Logic, 60, 0},
    {"width_8to16", Category::Logic, 100, 0},
    {"accu", Category::Arithmetic, 100, 0},
    {"adder_16bit", Category::Arithmetic, 40, 0},
    {"adder_16bit_csa", Category::Arithmetic, 80, 80},
    {"adder_32bit", Category::Arithmetic, 100, 0},
    {"adder_64bit", Category::Arithmetic, 100, 0},
    {"adder_8bit", Category::Arithmetic, 100, 100},
    {"div_16bit", Category::Arithmetic, 0, 0},
    {"multi_16bit", Category::Arithmetic, 80, 0},
    {"multi_booth", Category::Arithmetic, 100, 0},
    {"multi_pipe_4bit", Category::Arithmetic, 60, 20},
    {"multi_pipe_8bit", Category::Arithmetic, 0, 0},
    {"1x2nocpe", Category::Advanced, 40, 40},
    {"1x4systolic", Category::Advanced, 100, 100},
    {"2x2systolic", Category::Advanced, 0, 0},
    {"4x4spatialacc", Category::Advanced, 0, 0},
    {"fsm", Category::Advanced, 60, 0},
    {"macpe", Category::Advanced, 0, 0},
    {"5state_fsm", Category::Advanced, 100, 0},
    {"3state_fsm", Category::Advanced, 20, 0},
    {"4state_fsm", Category::Advanced, 60, 40},
    {"2state_fsm", Category::Advanced, 80, 20},
};

const CellRow kGpt4[] = {
    {"Johnson_Counter", Category::Logic, 100, 0},
    {"alu", Category::Logic, 0, 0},
    {"edge_detect", Category::Logic, 100, 100},
    {"freq_div", Category::Logic, 100, 0},
    {"mux", Category::Logic, 100, 40},
    {"parallel2serial", Category::Logic, 100, 0},
    {"pulse_detect", Category::Logic, 100, 20},
    {"right_shifter", Category::Logic, 100, 100},
    {"serial2parallel", Category::Logic, 100, 0},
    {"width_8to16", Category::Logic, 20, 0},
    {"accu", Category::Arithmetic, 40, 0},
    {"adder_16bit", Category::Arithmetic, 20, 20},
    {"adder_16bit_csa", Category::Arithmetic, 0, 0},
    {"adder_32bit", Category::Arithmetic, 40, 0},
    {"adder_64bit", Category::Arithmetic, 100, 0},
    {"adder_8bit", Category::Arithmetic, 40, 40},
    {"div_16bit", Category::Arithmetic, 0, 0},
    {"multi_16bit", Category::Arithmetic, 100, 20},
    {"multi_booth", Category::Arithmetic, 60, 0},
    {"multi_pipe_4bit", Category::Arithmetic, 100, 100},
    {"multi_pipe_8bit", Category::Arithmetic, 0, 0},
    {"1x2nocpe", Category::Advanced, 80, 80},
    {"1x4systolic", Category::Advanced, 100, 100},
    {"2x2systolic", Category::Advanced, 0, 0},
    {"4x4spatialacc", Category::Advanced, 0, 0},
    {"fsm", Category::Advanced, 100, 0},
    {"macpe", Category::Advanced, 0, 0},
    {"5state_fsm", Category::Advanced, 100, 60},
    {"3state_fsm", Category::Advanced, 80, 20},
    {"4state_fsm", Category::Advanced, 100, 80},
    {"2state_fsm", Category::Advanced, 100, 80},
};

const CellRow kDeepRtl220m[] = {
    {"Johnson_Counter", Category::Logic, 100, 0},
    {"alu", Category::Logic, 0, 0},
    {"edge_detect", Category::Logic, 100, 0},
    {"freq_div", Category::Logic, 100, 0},
    {"mux", Category::Logic, 100, 100},
    {"parallel2serial", Category::Logic, 100, 0},
    {"pulse_detect", Category::Logic, 100, 100},
    {"right_shifter", Category::Logic, 100, 100},
    {"serial2parallel", Category::Logic, 100, 0},
    {"width_8to16", Category::Logic, 100, 0},
    {"accu", Category::Arithmetic, 100, 0},
    {"adder_16bit", Category::Arithmetic, 100, 0},
    {"adder_16bit_csa", Category::Arithmetic, 100, 100},
    {"adder_32bit", Category::Arithmetic, 80, 0},
    {"adder_64bit", Category::Arithmetic, 100, 0},
    {"adder_8bit", Category::Arithmetic, 80, 20},
    {"div_16bit", Category::Arithmetic, 0, 0},
    {"multi_16bit", Category::Arithmetic, 100, 0},
    {"multi_booth", Category::Arithmetic, 60, 0},
    {"multi_pipe_4bit", Category::Arithmetic, 100, 100},
    {"multi_pipe_8bit", Category::Arithmetic, 0, 0},
    {"1x2nocpe", Category::Advanced, 100, 80},
    {"1x4systolic", Category::Advanced, 100, 100},
    {"2x2systolic", Category::Advanced, 0, 0},
    {"4x4spatialacc", Category::Advanced, 0, 0},
    {"fsm", Category::Advanced, 100, 100},
    {"macpe", Category::Advanced, 0, 0},
    {"5state_fsm", Category::Advanced, 100, 100},
    {"3state_fsm", Category::Advanced, 100, 100},
    {"4state_fsm", Category::Advanced, 100, 100},
    {"2state_fsm", Category::Advanced, 100, 20},
};

std::vector<ProblemTrials> trials_from_cells(std::span<const CellRow> rows) {
  std::vector<ProblemTrials> trials;
  for (const CellRow& row : rows) {
    ProblemTrials t;
    t.problem_id = row.id;
    t.category = row.category;
    const int syn = row.syntax_pct / 20;
    const int fun = row.function_pct / 20;
    for (int i = 0; i < 5; ++i) {
      t.syntax.push_back(i < syn);
      t.function.push_back(i < fun);
    }
    trials.push_back(std::move(t));
  }
  return trials;
}

void criterion_1() {
  Gate gate{1, "published-table aggregates reproduce to 0.01pp"};
  const auto start = std::chrono::steady_clock::now();
  const double tol = 0.01;  // percentage points

  const auto gpt35 =
      aggregate_report(trials_from_cells(kGpt35), 5, PassKMode::FirstK);
  gate.expect_near(gpt35.syntax.success_rate * 100.0, 60.65, tol,
                   "GPT-3.5 syntax success rate");
  gate.expect_near(gpt35.function.success_rate * 100.0, 20.00, tol,
                   "GPT-3.5 function success rate");
  gate.expect_near(gpt35.syntax.pass_at_5 * 100.0, 80.65, tol,
                   "GPT-3.5 syntax Pass@5");
  gate.expect_near(gpt35.function.pass_at_5 * 100.0, 35.48, tol,
                   "GPT-3.5 function Pass@5");

  const auto gpt4 =
      aggregate_report(trials_from_cells(kGpt4), 5, PassKMode::FirstK);
  gate.expect_near(gpt4.syntax.pass_at_5 * 100.0, 77.42, tol,
                   "GPT-4 syntax Pass@5");

  const auto deeprtl =
      aggregate_report(trials_from_cells(kDeepRtl220m), 5, PassKMode::FirstK);
  gate.expect_near(deeprtl.syntax.success_rate * 100.0, 78.06, tol,
                   "DeepRTL-220m syntax success rate");
  gate.expect_near(deeprtl.syntax.pass_at_5 * 100.0, 80.65, tol,
                   "DeepRTL-220m syntax Pass@5");

  // Pass@1 is protocol-ambiguous for the published numbers; the report must
  // flag the mode it used instead of matching them.
  const std::string table = report_table(gpt35);
  gate.expect(table.find("Pass@1 (first_k)") != std::string::npos,
              "report does not name its Pass@1 mode");

  gate.expect(seconds_since(start) < 1.0, "aggregation exceeded 1 s");
  gate.finish();
}

// --- criterion 2: exhaustive metric-oracle equivalence ---------------------

void criterion_2() {
  Gate gate{2, "lexical metrics match the brute-force oracle on all pairs "
               "of length <= 8 over a 3-symbol alphabet (1e-9)"};
  const auto start = std::chrono::steady_clock::now();

  std::vector<std::vector<std::int32_t>> seqs;
  for (int len = 0; len <= 8; ++len) {  // the empty sequence is pair 0
    std::vector<std::int32_t> cur(len, 0);
    for (;;) {
      seqs.push_back(cur);
      int i = len - 1;
      while (i >= 0 && cur[i] == 2) {
        cur[i] = 0;
        --i;
      }
      if (i < 0) break;
      ++cur[i];
    }
  }
  const std::size_t n = seqs.size();

  std::vector<NgramIndex> indexes;
  indexes.reserve(n);
  std::vector<oracle::SequenceProfile> profiles;
  profiles.reserve(n);
  for (const auto& seq : seqs) {
    indexes.emplace_back(seq);
    profiles.push_back(oracle::build_profile(seq));
  }

  const unsigned workers =
      std::max(2u, std::thread::hardware_concurrency());
  std::vector<double> max_diff(workers, 0.0);
  std::vector<std::uint64_t> pair_counts(workers, 0);
  std::atomic<std::size_t> next_candidate{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      double md = 0;
      std::uint64_t pairs = 0;
      for (;;) {
        const std::size_t a = next_candidate.fetch_add(1);
        if (a >= n) break;
        for (std::size_t b = 0; b < n; ++b) {
          const LexicalScores impl = lexical_scores(indexes[a], indexes[b]);
          const oracle::AllMetrics orc =
              oracle::all_metrics(profiles[a], profiles[b]);
          md = std::max(md, std::fabs(impl.bleu4 - orc.bleu4));
          md = std::max(md, std::fabs(impl.rouge1 - orc.rouge1));
          md = std::max(md, std::fabs(impl.rouge2 - orc.rouge2));
          md = std::max(md, std::fabs(impl.rouge_l - orc.rouge_l));
          ++pairs;
        }
      }
      max_diff[w] = md;
      pair_counts[w] = pairs;
    });
  }
  for (std::thread& t : pool) t.join();

  double md = 0;
  std::uint64_t pairs = 0;
  for (unsigned w = 0; w < workers; ++w) {
    md = std::max(md, max_diff[w]);
    pairs += pair_counts[w];
  }
  gate.expect(pairs == static_cast<std::uint64_t>(n) * n,
              "pair enumeration incomplete");
  gate.expect_near(md, 0.0, 1e-9, "max |implementation - oracle|");
  const double elapsed = seconds_since(start);
  std::printf("       criterion 2 detail: %llu pairs, max diff %.3g, %.1f s\n",
              static_cast<unsigned long long>(pairs), md, elapsed);
  gate.expect(elapsed < 60.0, "exhaustive sweep exceeded 1 min");
  gate.finish();
}

// --- criterion 3: pinned metric fixtures -------------------------------

void criterion_3() {
  Gate gate{3, "identity/disjoint/pinned metric fixtures"};
  const std::string id_text = "the design counts rising edges of the clock";
  gate.expect_near(bleu4_smoothed(id_text, id_text), 100.0, 1e-9,
                   "identity BLEU-4");
  gate.expect_near(rouge_n(id_text, id_text, 1), 100.0, 1e-9, "identity ROUGE-1");
  gate.expect_near(rouge_n(id_text, id_text, 2), 100.0, 1e-9, "identity ROUGE-2");
  gate.expect_near(rouge_l(id_text, id_text), 100.0, 1e-9, "identity ROUGE-L");

  const std::string a = "alpha beta gamma delta";
  const std::string b = "one two three four";
  gate.expect_near(bleu4_smoothed(a, b), 0.0, 1e-12, "disjoint BLEU-4");
  gate.expect_near(rouge_n(a, b, 1), 0.0, 1e-12, "disjoint ROUGE-1");
  gate.expect_near(rouge_n(a, b, 2), 0.0, 1e-12, "disjoint ROUGE-2");
  gate.expect_near(rouge_l(a, b), 0.0, 1e-12, "disjoint ROUGE-L");

  // hand-derived: p=(5/6, 4/6, 3/5, 2/4), BP=1 -> 100*(1/6)^(1/4)
  gate.expect_near(
      bleu4_smoothed("the cat sat on the mat", "the cat sat on a mat"),
      63.89431042462724, 1e-6, "cat-sat BLEU-4");
  // hand-derived: P=1, R=1/2 -> F1 = 2/3
  gate.expect_near(rouge_n("the cat sat", "the cat sat on the mat", 1),
                   100.0 * 2.0 / 3.0, 1e-6, "cat-sat ROUGE-1");
  const std::vector<double> u = {1, 2, 3};
  const std::vector<double> v = {4, 5, 6};
  gate.expect_near(cosine(u, v), 0.974632, 1e-6, "cosine fixture");
  gate.finish();
}

// --- criterion 4: MinHash estimation accuracy ------------------------------

void criterion_4() {
  Gate gate{4, "MinHash estimate within 0.03 mean abs error at H=256"};
  const auto start = std::chrono::steady_clock::now();

  const std::size_t union_size = 80;
  const std::size_t inters[5] = {0, 20, 40, 60, 80};
  double total_error = 0;
  std::size_t pairs = 0;

  for (std::size_t i = 0; i < 1000; ++i) {
    const std::size_t inter = inters[i % 5];
    const std::uint64_t seed = 1000 + (i % 100);
    const std::size_t only = (union_size - inter) / 2;

    ShingleSet left;
    ShingleSet right;
    left.k = 1;
    right.k = 1;
    for (std::size_t e = 0; e < inter; ++e) {
      const std::uint64_t v = mix64(i * 1315423911ULL + e);
      left.shingles.push_back(v);
      right.shingles.push_back(v);
    }
    for (std::size_t e = 0; e < only; ++e) {
      left.shingles.push_back(mix64((i + 7) * 2654435761ULL + e));
      right.shingles.push_back(mix64((i + 13) * 334214467ULL + e));
    }
    std::sort(left.shingles.begin(), left.shingles.end());
    std::sort(right.shingles.begin(), right.shingles.end());

    const double exact = exact_jaccard(left, right);
    const double want =
        static_cast<double>(inter) / static_cast<double>(union_size);
    if (std::fabs(exact - want) > 1e-12) {
      gate.expect(false, "constructed pair missed its target Jaccard");
      break;
    }
    const auto sig_l = minhash_signature(left, 256, seed);
    const auto sig_r = minhash_signature(right, 256, seed);
    total_error += std::fabs(estimate_jaccard(sig_l, sig_r) - exact);
    ++pairs;
  }
  const double mean_error = total_error / static_cast<double>(pairs);
  std::printf("       criterion 4 detail: mean |estimate - exact| = %.4f over "
              "%zu pairs\n",
              mean_error, pairs);
  gate.expect(mean_error <= 0.03, "mean absolute error above 0.03");
  gate.expect(seconds_since(start) < 60.0, "minhash sweep exceeded 1 min");
  gate.finish();
}

// --- criterion 5: lexer/splitter gates ----------------------------------

void criterion_5() {
  Gate gate{5, "ingest yields 20 tiling modules; strip is idempotent and "
               "string-safe over 1000+ generated programs"};
  PipelineConfig config = default_config();
  config.corpus_root = (kSourceDir / "fixtures/corpus").string();
  const fs::path out = fresh_dir("c5");
  const IngestSummary summary = run_ingest(config, out);
  gate.expect(summary.modules_kept == 20,
              "expected exactly 20 modules, got " +
                  std::to_string(summary.modules_kept));

  const auto modules = read_modules_jsonl(out / files::kModules);
  gate.expect(modules.size() == 20, "modules.jsonl row count");
  std::map<std::string, std::vector<const VerilogModule*>> by_file;
  for (const VerilogModule& m : modules) by_file[m.path].push_back(&m);
  for (const auto& [path, units] : by_file) {
    const std::string text = sanitize_utf8(read_text_file(path));
    for (std::size_t i = 0; i < units.size(); ++i) {
      const VerilogModule& m = *units[i];
      gate.expect(text.substr(m.span_start, m.span_end - m.span_start) ==
                      m.raw_text,
                  m.name + ": span does not reproduce raw_text");
      if (i > 0) {
        gate.expect(units[i - 1]->span_end <= m.span_start,
                    m.name + ": spans overlap or are unordered");
      }
    }
  }

  std::mt19937_64 rng(20260810);
  const char* frags[] = {
      "module m;",   "assign a = b;\n", "// note\n",   "/* block */",
      "wire w;\n",   "\"str // x\"",    "\"a /* b\"",  "x <= y + 1;\n",
      "endmodule\n", "/* multi\nline */", "if (a) begin b <= c; end\n",
  };
  std::uniform_int_distribution<std::size_t> pick(0, std::size(frags) - 1);
  std::uniform_int_distribution<int> len(1, 24);
  std::size_t checked = 0;
  for (int iter = 0; iter < 1200; ++iter) {
    std::string program;
    std::vector<std::string> strings_embedded;
    const int pieces = len(rng);
    for (int p = 0; p < pieces; ++p) {
      const std::string frag = frags[pick(rng)];
      if (frag.front() == '"') strings_embedded.push_back(frag);
      program += frag;
      program += ' ';
    }
    const std::string once = strip_comments(program);
    if (strip_comments(once) != once) {
      gate.expect(false, "strip_comments not idempotent on a generated program");
      break;
    }
    for (const std::string& s : strings_embedded) {
      if (once.find(s) == std::string::npos) {
        gate.expect(false, "string literal bytes altered: " + s);
        break;
      }
    }
    ++checked;
  }
  gate.expect(checked >= 1000, "fewer than 1000 generated programs checked");
  fs::remove_all(out);
  gate.finish();
}

// --- criterion 6: curriculum ordering ------------------------------------

void criterion_6() {
  Gate gate{6, "curriculum emits strict pre-order shards and conserves the "
               "sample multiset; all-at-once emits one shard"};
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
    for (int i = 0; i < 4; ++i) {
      InstructionSample s;
      s.level = cell.level;
      s.granularity = cell.granularity;
      s.source = cell.source;
      s.task = static_cast<TaskKind>(serial % 3);
      s.origin_target_id = "s" + std::to_string(serial++);
      samples.push_back(std::move(s));
    }
  }
  std::mt19937_64 rng(5);
  for (std::size_t i = samples.size(); i > 1; --i) {
    std::swap(samples[i - 1], samples[rng() % i]);
  }

  const auto shards = preorder_shards(samples, 11);
  const std::vector<std::string> expected = {
      "line_line_comment_gpt",     "line_line_comment_human",
      "block_detailed_gpt",        "block_detailed_human",
      "block_medium_detail_human", "block_high_level_gpt",
      "block_high_level_human",    "module_detailed_gpt",
      "module_detailed_human",     "module_high_level_gpt",
      "module_high_level_human",
  };
  gate.expect(shards.size() == expected.size(), "shard count");
  for (std::size_t i = 0; i < shards.size() && i < expected.size(); ++i) {
    gate.expect(shards[i].key.label() == expected[i],
                "shard " + std::to_string(i) + " is " +
                    shards[i].key.label() + ", want " + expected[i]);
    if (i > 0) {
      gate.expect(shards[i - 1].key < shards[i].key,
                  "shard keys not strictly increasing");
    }
  }
  std::multiset<std::string> before;
  for (const auto& s : samples) before.insert(s.origin_target_id);
  std::multiset<std::string> after;
  for (const auto& shard : shards) {
    for (const auto& s : shard.samples) after.insert(s.origin_target_id);
  }
  gate.expect(before == after, "sample multiset not conserved");

  const auto baseline = all_at_once_shard(samples, 11);
  gate.expect(baseline.size() == 1, "all-at-once did not emit one shard");
  gate.expect(baseline[0].samples.size() == samples.size(),
              "all-at-once shard lost samples");
  gate.finish();
}

// --- criterion 7: offline end-to-end -------------------------------------

void criterion_7() {
  Gate gate{7, "offline ingest->dedup->annotate(mock)->instructions->"
               "curriculum under 1 min with the hand tally"};
  const fs::path cli = VCURATE_CLI_PATH;
  if (!fs::exists(cli)) {
    gate.expect(false, "CLI binary missing: " + cli.string());
    gate.finish();
    return;
  }
  const fs::path out = fresh_dir("c7");
  const fs::path config_path = out / "config.json";
  const json config_json = {
      {"corpus", {{"root", (kSourceDir / "fixtures/corpus").string()}}},
      {"clients",
       {{"annotator",
         {{"model", "mock-annotator"}, {"cache_dir", ".cache/llm"}}}}},
  };
  write_text_file_atomic(config_path, config_json.dump(2));
  const PipelineConfig config = load_config(config_path);

  auto cli_run = [&](std::vector<std::string> args) {
    args.insert(args.begin(), cli.string());
    args.push_back("--config");
    args.push_back(config_path.string());
    args.push_back("--out");
    args.push_back(out.string());
    return exec_command(args, out, 120000);
  };

  const auto start = std::chrono::steady_clock::now();
  ExecResult r = cli_run({"ingest"});
  gate.expect(r.exit_code == 0, "ingest failed: " + r.output);
  r = cli_run({"dedup"});
  gate.expect(r.exit_code == 0, "dedup failed: " + r.output);

  testing::write_mock_fixtures(
      config, read_modules_jsonl(out / files::kModulesDedup), out / "mock");
  r = cli_run({"annotate", "--mock-llm", (out / "mock").string()});
  gate.expect(r.exit_code == 0, "annotate failed: " + r.output);
  r = cli_run({"build-instructions"});
  gate.expect(r.exit_code == 0, "build-instructions failed: " + r.output);
  r = cli_run({"curriculum"});
  gate.expect(r.exit_code == 0, "curriculum failed: " + r.output);
  const double elapsed = seconds_since(start);
  std::printf("       criterion 7 detail: pipeline wall time %.1f s\n",
              elapsed);
  gate.expect(elapsed < 60.0, "pipeline exceeded 1 min");

  // the statistics table matches the hand tally over the fixture corpus:
  //   17 whole modules with 162 commented code lines, plus the segmented
  //   module's 8 blocks carrying 244 lines
  r = cli_run({"stats"});
  gate.expect(r.exit_code == 0, "stats failed: " + r.output);
  const json stats = json::parse(read_text_file(out / files::kAnnotationStats));
  const std::map<std::string, std::size_t> want = {
      {"Line Level/N/A", 406},
      {"Block Level/High-level Description", 8},
      {"Block Level/Medium-Detail Description", 0},
      {"Block Level/Detailed Description", 8},
      {"Module Level/High-level Functional Description", 17},
      {"Module Level/Detailed Specification", 17},
  };
  for (const json& row : stats.at("rows")) {
    const std::string key = row.at("level").get<std::string>() + "/" +
                            row.at("granularity").get<std::string>();
    const auto it = want.find(key);
    if (it == want.end()) {
      gate.expect(false, "unexpected stats row: " + key);
      continue;
    }
    gate.expect(row.at("count").get<std::size_t>() == it->second,
                key + ": got " + row.at("count").dump() + ", want " +
                    std::to_string(it->second));
  }
  gate.expect(stats.at("total").get<std::size_t>() == 456, "stats total");

  // the mutating mock must trip the step-1 code gate
  const fs::path mutant_out = fresh_dir("c7m");
  write_text_file_atomic(mutant_out / "config.json", config_json.dump(2));
  {
    PipelineConfig mutant_config = load_config(mutant_out / "config.json");
    run_ingest(mutant_config, mutant_out);
    run_dedup(mutant_config, mutant_out);
    testing::write_mock_fixtures(
        mutant_config, read_modules_jsonl(mutant_out / files::kModulesDedup),
        mutant_out / "mock", {.mutate_step1 = true});
    const AnnotateSummary summary = run_annotate(
        mutant_config, mutant_out, {.mock_dir = (mutant_out / "mock").string()});
    gate.expect(summary.accepted_records == 0,
                "mutating mock still produced accepted records");
    gate.expect(summary.unit_errors == 25,
                "expected 25 unit errors, got " +
                    std::to_string(summary.unit_errors));
    const json manifest =
        json::parse(read_text_file(mutant_out / files::kAnnotateManifest));
    bool saw = false;
    for (const json& e : manifest.at("unit_errors")) {
      if (e.at("reason") == "code_mutated") saw = true;
    }
    gate.expect(saw, "no code_mutated unit error recorded");
  }
  fs::remove_all(out);
  fs::remove_all(mutant_out);
  gate.finish();
}

// --- criterion 8: simulator path ------------------------------------------

void criterion_8() {
  Gate gate{8, "simulator-backed trial verdicts on the bundled adder"};
  SimulatorConfig config;  // defaults name the iverilog flow
  const auto sim = probe_simulator(config);
  if (!sim) {
    gate.skipped = true;
    gate.skip_reason = "simulator binary '" + simulator_binary_name(config) +
                       "' not found on PATH; install it to run this gate";
    gate.finish();
    return;
  }
  const auto start = std::chrono::steady_clock::now();
  const auto problems =
      load_problems(kSourceDir / "fixtures/genbench/problems");
  const Problem& adder = problems.at(0);
  const std::string golden = read_text_file(*adder.golden);
  const fs::path work = fresh_dir("c8");

  const TrialResult ok = run_trial(adder, golden, config, work);
  gate.expect(ok.syntax_pass, "golden solution failed to compile");
  gate.expect(ok.function_pass,
              "golden solution failed its testbench: " + ok.sim_log);

  std::string mutated = golden;
  const auto pos = mutated.find("assign cout = total[8];");
  gate.expect(pos != std::string::npos, "golden fixture changed shape");
  if (pos != std::string::npos) {
    mutated.replace(pos, 23, "assign cout = ~total[8];");
  }
  const TrialResult bad_fn = run_trial(adder, mutated, config, work);
  gate.expect(bad_fn.syntax_pass, "mutated-carry solution failed to compile");
  gate.expect(!bad_fn.function_pass,
              "mutated-carry solution passed the testbench");

  const TrialResult bad_syntax =
      run_trial(adder, golden + "\nxyzzy stray token", config, work);
  gate.expect(!bad_syntax.syntax_pass, "stray-token solution compiled");

  gate.expect(seconds_since(start) < 30.0, "simulator gate exceeded 30 s");
  fs::remove_all(work);
  gate.finish();
}

// --- criterion 9: estimator identity ------------------------------------

void criterion_9() {
  Gate gate{9, "estimator pass@1 equals success rate to 1e-12 on 1000 "
               "random fixtures"};
  std::mt19937_64 rng(909);
  for (int fixture = 0; fixture < 1000; ++fixture) {
    const int problems = 1 + static_cast<int>(rng() % 40);
    std::vector<std::vector<bool>> passes;
    std::vector<double> fractions;
    for (int p = 0; p < problems; ++p) {
      std::vector<bool> row(5);
      int c = 0;
      for (int i = 0; i < 5; ++i) {
        row[i] = rng() % 2 == 0;
        c += row[i] ? 1 : 0;
      }
      passes.push_back(std::move(row));
      fractions.push_back(c / 5.0);
    }
    const double estimator = pass_at_k(passes, 1, PassKMode::Estimator);
    const double rate = success_rate(fractions);
    if (std::fabs(estimator - rate) > 1e-12) {
      gate.expect(false, "identity violated at fixture " +
                             std::to_string(fixture));
      break;
    }
  }
  gate.finish();
}

}  // namespace

int main() {
  std::printf("vcurate acceptance suite\n");
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  if (g_failures == 0) {
    std::printf("all criteria passed (skips reported above, if any)\n");
  } else {
    std::printf("%d criterion(s) failed\n", g_failures);
  }
  return g_failures == 0 ? 0 : 1;
}

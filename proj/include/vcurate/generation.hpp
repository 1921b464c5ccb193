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
// Generation evaluation: drive an external HDL simulator over a benchmark
// of problems, judge syntax and functional correctness per trial, and
// aggregate success rate and Pass@k.

#ifndef VCURATE_GENERATION_HPP
#define VCURATE_GENERATION_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vcurate/util.hpp"

namespace vcurate {

enum class Category { Logic, Arithmetic, Advanced };

std::string_view to_string(Category category);
Category category_from_string(std::string_view s);

struct Problem {
  std::string id;
  Category category = Category::Logic;
  std::string prompt;
  std::string module_header;
  std::filesystem::path testbench;
  std::optional<std::filesystem::path> golden;
};

/// Loads `problems/index.json` plus each problem directory
/// (prompt.txt, header.v, testbench.v, golden.v?).
std::vector<Problem> load_problems(const std::filesystem::path& dir);

struct SimulatorConfig {
  // Command templates; {output} is the compiled image, {sources} expands
  // to the source file list. Binary names live in config, not code.
  std::string compile_cmd = "iverilog -o {output} {sources}";
  std::string run_cmd = "vvp {output}";
  std::string pass_marker = "PASS";
  std::string fail_marker = "FAIL";
  int compile_timeout_s = 30;
  int sim_timeout_s = 60;
  int samples_per_problem = 5;
  int workers = 2;
};

/// The simulator binary named by the compile template, resolved against
/// PATH; nullopt when missing.
std::optional<std::filesystem::path> probe_simulator(
    const SimulatorConfig& config);
std::string simulator_binary_name(const SimulatorConfig& config);

struct TrialResult {
  std::string problem_id;
  int sample_index = 0;
  bool syntax_pass = false;
  bool function_pass = false;  // implies syntax_pass
  std::string compile_log;
  std::string sim_log;
  double wall_time_s = 0;
  std::string failure_reason;  // "", "compile", "timeout", "verdict", ...
};

/// Stage 1 compiles the generated code alone (syntax); stage 2 compiles it
/// with the testbench and runs it. The functional verdict requires exit 0,
/// the pass marker present, and the fail marker absent.
TrialResult run_trial(const Problem& problem, const std::string& generated_code,
                      const SimulatorConfig& config,
                      const std::filesystem::path& work_root);

struct ProblemTrials {
  std::string problem_id;
  Category category = Category::Logic;
  std::vector<bool> syntax;    // ordered by sample index
  std::vector<bool> function;
};

enum class PassKMode { AnyOfN, Estimator, FirstK };

std::string_view to_string(PassKMode mode);
PassKMode passk_mode_from_string(std::string_view s);

/// Arithmetic mean of per-problem pass fractions; empty input is an error.
double success_rate(std::span<const double> fractions);

/// Pass@k over per-problem ordered pass vectors.
///  - AnyOfN (requires k == n): fraction of problems with >= 1 pass.
///  - Estimator: mean of 1 - C(n-c, k)/C(n, k).
///  - FirstK: fraction with >= 1 pass among the first k samples.
double pass_at_k(std::span<const std::vector<bool>> per_problem_passes,
                 int k, PassKMode mode);

struct GenerationAggregates {
  double success_rate = 0;
  double pass_at_1 = 0;
  double pass_at_5 = 0;
};

struct GenerationReport {
  std::vector<ProblemTrials> problems;
  int samples_per_problem = 5;
  PassKMode pass1_mode = PassKMode::FirstK;  // always named in the report
  GenerationAggregates syntax;
  GenerationAggregates function;
};

/// Aggregation over stored trials; replaying identical trials yields an
/// identical report.
GenerationReport aggregate_report(std::vector<ProblemTrials> trials,
                                  int samples_per_problem,
                                  PassKMode pass1_mode);

/// Runs every (problem, sample) trial through the simulator with a bounded
/// worker pool. `samples` must hold exactly n entries per problem id.
GenerationReport run_benchmark(
    const std::vector<Problem>& problems,
    const std::map<std::string, std::vector<std::string>>& samples,
    const SimulatorConfig& config, const std::filesystem::path& work_root,
    std::vector<TrialResult>* trial_log = nullptr,
    PassKMode pass1_mode = PassKMode::FirstK);

/// Category-grouped percentage table with Success Rate / Pass@1 / Pass@5
/// footer rows.
std::string report_table(const GenerationReport& report);

}  // namespace vcurate

#endif  // VCURATE_GENERATION_HPP

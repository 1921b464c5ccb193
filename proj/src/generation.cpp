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

#include "vcurate/generation.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "vcurate/subprocess.hpp"

namespace vcurate {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view to_string(Category category) {
  switch (category) {
    case Category::Logic: return "Logic";
    case Category::Arithmetic: return "Arithmetic";
    case Category::Advanced: return "Advanced";
  }
  return "Unknown";
}

Category category_from_string(std::string_view s) {
  if (s == "Logic" || s == "logic") return Category::Logic;
  if (s == "Arithmetic" || s == "arithmetic") return Category::Arithmetic;
  if (s == "Advanced" || s == "advanced") return Category::Advanced;
  throw Error("unknown category: " + std::string(s));
}

std::string_view to_string(PassKMode mode) {
  switch (mode) {
    case PassKMode::AnyOfN: return "any_of_n";
    case PassKMode::Estimator: return "estimator";
    case PassKMode::FirstK: return "first_k";
  }
  return "unknown";
}

PassKMode passk_mode_from_string(std::string_view s) {
  if (s == "any_of_n") return PassKMode::AnyOfN;
  if (s == "estimator") return PassKMode::Estimator;
  if (s == "first_k") return PassKMode::FirstK;
  throw Error("unknown pass@k mode: " + std::string(s));
}

std::vector<Problem> load_problems(const fs::path& dir) {
  const fs::path index_path = dir / "index.json";
  json index;
  try {
    index = json::parse(read_text_file(index_path));
  } catch (const json::exception& e) {
    throw Error("benchmark index unparseable: " + index_path.string() + ": " +
                e.what());
  }
  std::vector<Problem> problems;
  for (const json& row : index) {
    Problem p;
    p.id = row.at("id").get<std::string>();
    p.category = category_from_string(row.at("category").get<std::string>());
    const fs::path pdir = dir / p.id;
    p.prompt = read_text_file(pdir / "prompt.txt");
    p.module_header = read_text_file(pdir / "header.v");
    p.testbench = pdir / "testbench.v";
    if (!fs::exists(p.testbench)) {
      throw Error("problem " + p.id + " has no testbench.v");
    }
    const fs::path golden = pdir / "golden.v";
    if (fs::exists(golden)) p.golden = golden;
    problems.push_back(std::move(p));
  }
  return problems;
}

namespace {

// Splits a command template on spaces and substitutes {output} and
// {sources}; {sources} may expand to several argv entries.
std::vector<std::string> build_argv(const std::string& command_template,
                                    const std::vector<std::string>& sources,
                                    const std::string& output) {
  std::vector<std::string> argv;
  std::istringstream in(command_template);
  std::string word;
  while (in >> word) {
    if (word == "{sources}") {
      argv.insert(argv.end(), sources.begin(), sources.end());
    } else {
      std::size_t pos;
      while ((pos = word.find("{output}")) != std::string::npos) {
        word.replace(pos, 8, output);
      }
      argv.push_back(word);
    }
  }
  return argv;
}

std::atomic<std::uint64_t> g_trial_counter{0};

}  // namespace

std::string simulator_binary_name(const SimulatorConfig& config) {
  std::istringstream in(config.compile_cmd);
  std::string first;
  in >> first;
  return first;
}

std::optional<fs::path> probe_simulator(const SimulatorConfig& config) {
  return find_executable(simulator_binary_name(config));
}

TrialResult run_trial(const Problem& problem, const std::string& generated_code,
                      const SimulatorConfig& config,
                      const fs::path& work_root) {
  const auto start = std::chrono::steady_clock::now();
  TrialResult result;
  result.problem_id = problem.id;

  // Isolated directory per trial: simulators drop artifacts next to their
  // inputs and parallel trials must not collide.
  const fs::path trial_dir =
      work_root / ("trial_" + problem.id + "_" +
                   std::to_string(g_trial_counter.fetch_add(1)));
  std::error_code ec;
  fs::create_directories(trial_dir, ec);
  if (ec) throw Error("cannot create trial directory: " + trial_dir.string());

  write_text_file_atomic(trial_dir / "generated.v", generated_code);
  fs::copy_file(problem.testbench, trial_dir / "testbench.v",
                fs::copy_options::overwrite_existing);

  // Stage 1: compile the generated code alone.
  const auto compile_argv =
      build_argv(config.compile_cmd, {"generated.v"}, "syntax.out");
  const ExecResult compiled =
      exec_command(compile_argv, trial_dir, config.compile_timeout_s * 1000);
  result.compile_log = compiled.output;
  if (compiled.timed_out) {
    result.failure_reason = "compile timeout";
  } else if (compiled.exit_code != 0) {
    result.failure_reason = "compile";
  } else {
    result.syntax_pass = true;
  }

  // Stage 2: recompile with the testbench and execute.
  if (result.syntax_pass) {
    const auto tb_argv = build_argv(
        config.compile_cmd, {"generated.v", "testbench.v"}, "sim.out");
    const ExecResult tb_compiled =
        exec_command(tb_argv, trial_dir, config.compile_timeout_s * 1000);
    if (tb_compiled.timed_out || tb_compiled.exit_code != 0) {
      result.failure_reason = tb_compiled.timed_out ? "testbench compile timeout"
                                                    : "testbench compile";
      result.sim_log = tb_compiled.output;
    } else {
      const auto run_argv = build_argv(config.run_cmd, {}, "sim.out");
      const ExecResult ran =
          exec_command(run_argv, trial_dir, config.sim_timeout_s * 1000);
      result.sim_log = ran.output;
      if (ran.timed_out) {
        result.failure_reason = "simulation timeout";
      } else {
        const bool has_pass =
            ran.output.find(config.pass_marker) != std::string::npos;
        const bool has_fail =
            ran.output.find(config.fail_marker) != std::string::npos;
        result.function_pass = ran.exit_code == 0 && has_pass && !has_fail;
        if (!result.function_pass) result.failure_reason = "verdict";
      }
    }
  }

  fs::remove_all(trial_dir, ec);
  result.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

double success_rate(std::span<const double> fractions) {
  if (fractions.empty()) throw Error("success_rate: no problems");
  double sum = 0;
  for (double f : fractions) sum += f;
  return sum / static_cast<double>(fractions.size());
}

namespace {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  double value = 1;
  for (int i = 0; i < k; ++i) {
    value = value * static_cast<double>(n - i) / static_cast<double>(i + 1);
  }
  return value;
}

}  // namespace

double pass_at_k(std::span<const std::vector<bool>> per_problem_passes, int k,
                 PassKMode mode) {
  if (per_problem_passes.empty()) throw Error("pass_at_k: no problems");
  std::size_t solved = 0;
  double estimator_sum = 0;
  for (const std::vector<bool>& passes : per_problem_passes) {
    const int n = static_cast<int>(passes.size());
    if (k < 1 || k > n) {
      throw Error("pass_at_k: k must satisfy 1 <= k <= n");
    }
    const int c = static_cast<int>(
        std::count(passes.begin(), passes.end(), true));
    switch (mode) {
      case PassKMode::AnyOfN:
        if (k != n) throw Error("pass_at_k: AnyOfN mode requires k == n");
        if (c >= 1) ++solved;
        break;
      case PassKMode::Estimator:
        estimator_sum += 1.0 - binomial(n - c, k) / binomial(n, k);
        break;
      case PassKMode::FirstK: {
        bool any = false;
        for (int i = 0; i < k; ++i) any = any || passes[i];
        if (any) ++solved;
        break;
      }
    }
  }
  const double n_problems = static_cast<double>(per_problem_passes.size());
  if (mode == PassKMode::Estimator) return estimator_sum / n_problems;
  return static_cast<double>(solved) / n_problems;
}

GenerationReport aggregate_report(std::vector<ProblemTrials> trials,
                                  int samples_per_problem,
                                  PassKMode pass1_mode) {
  std::sort(trials.begin(), trials.end(),
            [](const ProblemTrials& a, const ProblemTrials& b) {
              return std::tie(a.category, a.problem_id) <
                     std::tie(b.category, b.problem_id);
            });
  GenerationReport report;
  report.samples_per_problem = samples_per_problem;
  report.pass1_mode = pass1_mode;

  std::vector<double> syntax_fracs;
  std::vector<double> function_fracs;
  std::vector<std::vector<bool>> syntax_passes;
  std::vector<std::vector<bool>> function_passes;
  for (const ProblemTrials& p : trials) {
    if (static_cast<int>(p.syntax.size()) != samples_per_problem ||
        static_cast<int>(p.function.size()) != samples_per_problem) {
      throw Error("problem " + p.problem_id + " does not have exactly " +
                  std::to_string(samples_per_problem) + " samples");
    }
    const auto frac = [](const std::vector<bool>& v) {
      return static_cast<double>(std::count(v.begin(), v.end(), true)) /
             static_cast<double>(v.size());
    };
    syntax_fracs.push_back(frac(p.syntax));
    function_fracs.push_back(frac(p.function));
    syntax_passes.push_back(p.syntax);
    function_passes.push_back(p.function);
  }

  report.syntax.success_rate = success_rate(syntax_fracs);
  report.function.success_rate = success_rate(function_fracs);
  report.syntax.pass_at_1 = pass_at_k(syntax_passes, 1, pass1_mode);
  report.function.pass_at_1 = pass_at_k(function_passes, 1, pass1_mode);
  report.syntax.pass_at_5 =
      pass_at_k(syntax_passes, samples_per_problem, PassKMode::AnyOfN);
  report.function.pass_at_5 =
      pass_at_k(function_passes, samples_per_problem, PassKMode::AnyOfN);
  report.problems = std::move(trials);
  return report;
}

GenerationReport run_benchmark(
    const std::vector<Problem>& problems,
    const std::map<std::string, std::vector<std::string>>& samples,
    const SimulatorConfig& config, const fs::path& work_root,
    std::vector<TrialResult>* trial_log, PassKMode pass1_mode) {
  const int n = config.samples_per_problem;

  std::vector<std::string> bad_ids;
  for (const Problem& p : problems) {
    const auto it = samples.find(p.id);
    if (it == samples.end() || static_cast<int>(it->second.size()) != n) {
      bad_ids.push_back(p.id);
    }
  }
  if (!bad_ids.empty()) {
    std::string joined;
    for (const std::string& id : bad_ids) {
      if (!joined.empty()) joined += ", ";
      joined += id;
    }
    throw Error("sample-count mismatch (need exactly " + std::to_string(n) +
                " per problem): " + joined);
  }

  struct Job {
    const Problem* problem;
    int sample_index;
  };
  std::vector<Job> jobs;
  for (const Problem& p : problems) {
    for (int s = 0; s < n; ++s) jobs.push_back({&p, s});
  }

  std::vector<TrialResult> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      const Job& job = jobs[i];
      TrialResult r = run_trial(*job.problem,
                                samples.at(job.problem->id)[job.sample_index],
                                config, work_root);
      r.sample_index = job.sample_index;
      results[i] = std::move(r);
    }
  };
  const int workers =
      std::max(1, std::min<int>(config.workers,
                                static_cast<int>(jobs.size())));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();

  std::map<std::string, ProblemTrials> by_problem;
  for (const Problem& p : problems) {
    ProblemTrials trials;
    trials.problem_id = p.id;
    trials.category = p.category;
    trials.syntax.assign(n, false);
    trials.function.assign(n, false);
    by_problem[p.id] = std::move(trials);
  }
  for (const TrialResult& r : results) {
    ProblemTrials& trials = by_problem[r.problem_id];
    trials.syntax[r.sample_index] = r.syntax_pass;
    trials.function[r.sample_index] = r.function_pass;
  }
  if (trial_log != nullptr) {
    *trial_log = results;
    std::sort(trial_log->begin(), trial_log->end(),
              [](const TrialResult& a, const TrialResult& b) {
                return std::tie(a.problem_id, a.sample_index) <
                       std::tie(b.problem_id, b.sample_index);
              });
  }

  std::vector<ProblemTrials> trials;
  trials.reserve(by_problem.size());
  for (auto& [id, t] : by_problem) trials.push_back(std::move(t));
  return aggregate_report(std::move(trials), n, pass1_mode);
}

std::string report_table(const GenerationReport& report) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(2);
  auto pct = [](double v) {
    std::ostringstream c;
    c << std::fixed << std::setprecision(2) << v * 100.0 << "%";
    return c.str();
  };

  out << "category    problem               syntax    function\n";
  for (const Category category :
       {Category::Logic, Category::Arithmetic, Category::Advanced}) {
    bool any = false;
    for (const ProblemTrials& p : report.problems) {
      if (p.category != category) continue;
      any = true;
      const auto frac = [](const std::vector<bool>& v) {
        return static_cast<double>(std::count(v.begin(), v.end(), true)) /
               static_cast<double>(v.size());
      };
      out << std::setw(10) << std::left << to_string(category) << "  "
          << std::setw(20) << p.problem_id << std::right << std::setw(8)
          << pct(frac(p.syntax)) << std::setw(12) << pct(frac(p.function))
          << std::left << "\n";
    }
    (void)any;  // empty categories simply print no rows
  }
  out << "\n";
  out << "Success Rate   syntax " << pct(report.syntax.success_rate)
      << "   function " << pct(report.function.success_rate) << "\n";
  out << "Pass@1 (" << to_string(report.pass1_mode) << ")   syntax "
      << pct(report.syntax.pass_at_1) << "   function "
      << pct(report.function.pass_at_1) << "\n";
  out << "Pass@" << report.samples_per_problem << "         syntax "
      << pct(report.syntax.pass_at_5) << "   function "
      << pct(report.function.pass_at_5) << "\n";
  return out.str();
}

}  // namespace vcurate

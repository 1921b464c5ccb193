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

#include "vcurate/understanding.hpp"

#include <cctype>
#include <cstdlib>
#include <iomanip>
#include <sstream>

namespace vcurate {

std::optional<double> parse_judge_score(std::string_view text) {
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    const bool digit = std::isdigit(static_cast<unsigned char>(c)) != 0;
    const bool dot_start = c == '.' && i + 1 < text.size() &&
                           std::isdigit(static_cast<unsigned char>(text[i + 1]));
    if (!digit && !dot_start) continue;
    const std::string slice(text.substr(i));
    char* end = nullptr;
    const double value = std::strtod(slice.c_str(), &end);
    if (end == slice.c_str()) continue;
    if (value >= 0.0 && value <= 1.0) return value;
    return std::nullopt;  // first decimal is out of range: not a score
  }
  return std::nullopt;
}

double embedding_similarity(const TextPair& pair, EmbedClient& client) {
  const std::vector<double> u = client.embed(pair.candidate);
  const std::vector<double> v = client.embed(pair.reference);
  return cosine(u, v);
}

std::optional<double> gpt_score(const TextPair& pair, LlmClient& judge,
                                const JudgeSettings& settings,
                                Warnings* warnings) {
  const int attempts = 1 + std::max(0, settings.retries);
  for (int attempt = 0; attempt < attempts; ++attempt) {
    std::string text;
    try {
      text = judge
                 .complete(build_judge_request(settings.templates,
                                               settings.profile,
                                               pair.candidate, pair.reference,
                                               attempt))
                 .text;
    } catch (const TransportError& e) {
      warn(warnings, pair.id + ": judge unavailable: " + e.what());
      return std::nullopt;
    }
    if (const auto score = parse_judge_score(text)) return score;
  }
  warn(warnings, pair.id + ": judge output unparseable after retries");
  return std::nullopt;
}

UnderstandingReport evaluate_understanding(
    const std::vector<BenchmarkEntry>& benchmark,
    const std::map<std::string, std::string>& outputs_by_id,
    EmbedClient* embedder, LlmClient* judge, const JudgeSettings& judge_cfg,
    RougeMode rouge_mode, Warnings* warnings) {
  UnderstandingReport report;
  report.rouge_mode = rouge_mode;

  double sum_bleu = 0;
  double sum_r1 = 0;
  double sum_r2 = 0;
  double sum_rl = 0;
  double sum_emb = 0;
  double sum_gpt = 0;
  std::size_t emb_scored = 0;
  std::size_t gpt_scored = 0;

  for (const BenchmarkEntry& entry : benchmark) {
    const auto it = outputs_by_id.find(entry.id);
    if (it == outputs_by_id.end()) {
      report.errors.push_back("no output for benchmark id " + entry.id);
      continue;
    }
    TextPair pair{entry.id, it->second, entry.reference};
    PairScores scores;
    scores.id = entry.id;
    const LexicalScores lexical =
        lexical_scores(pair.candidate, pair.reference, rouge_mode, warnings);
    scores.bleu4 = lexical.bleu4;
    scores.rouge1 = lexical.rouge1;
    scores.rouge2 = lexical.rouge2;
    scores.rouge_l = lexical.rouge_l;
    sum_bleu += scores.bleu4;
    sum_r1 += scores.rouge1;
    sum_r2 += scores.rouge2;
    sum_rl += scores.rouge_l;

    if (embedder != nullptr) {
      try {
        scores.emb_sim = embedding_similarity(pair, *embedder);
        sum_emb += *scores.emb_sim;
        ++emb_scored;
      } catch (const Error& e) {
        warn(warnings, entry.id + ": embedding unscored: " + e.what());
        ++report.emb_unscored;
      }
    }
    if (judge != nullptr) {
      scores.gpt = gpt_score(pair, *judge, judge_cfg, warnings);
      if (scores.gpt) {
        sum_gpt += *scores.gpt;
        ++gpt_scored;
      } else {
        ++report.gpt_unscored;
      }
    }
    report.pairs.push_back(std::move(scores));
  }

  const double n = static_cast<double>(report.pairs.size());
  if (!report.pairs.empty()) {
    report.mean_bleu4 = sum_bleu / n;
    report.mean_rouge1 = sum_r1 / n;
    report.mean_rouge2 = sum_r2 / n;
    report.mean_rouge_l = sum_rl / n;
  }
  if (emb_scored > 0) report.mean_emb_sim = sum_emb / emb_scored;
  if (gpt_scored > 0) report.mean_gpt = sum_gpt / gpt_scored;
  return report;
}

std::string render_understanding_table(const UnderstandingReport& report) {
  std::ostringstream out;
  out << std::fixed;
  out << "id            BLEU-4  ROUGE-1  ROUGE-2  ROUGE-L  Emb.Sim  GPT\n";
  auto cell = [&](std::optional<double> v, int precision) {
    std::ostringstream c;
    if (v) {
      c << std::fixed << std::setprecision(precision) << *v;
    } else {
      c << "-";
    }
    return c.str();
  };
  for (const PairScores& p : report.pairs) {
    out << std::setw(12) << std::left << p.id << std::right << "  "
        << std::setw(6) << std::setprecision(2) << p.bleu4 << "  "
        << std::setw(7) << p.rouge1 << "  " << std::setw(7) << p.rouge2
        << "  " << std::setw(7) << p.rouge_l << "  " << std::setw(7)
        << cell(p.emb_sim, 3) << "  " << std::setw(5) << cell(p.gpt, 3)
        << "\n";
  }
  out << std::setw(12) << std::left << "mean" << std::right << "  "
      << std::setw(6) << std::setprecision(2) << report.mean_bleu4 << "  "
      << std::setw(7) << report.mean_rouge1 << "  " << std::setw(7)
      << report.mean_rouge2 << "  " << std::setw(7) << report.mean_rouge_l
      << "  " << std::setw(7) << cell(report.mean_emb_sim, 3) << "  "
      << std::setw(5) << cell(report.mean_gpt, 3) << "\n";
  if (report.emb_unscored + report.gpt_unscored > 0) {
    out << "unscored: embedding " << report.emb_unscored << ", judge "
        << report.gpt_unscored << "\n";
  }
  return out.str();
}

}  // namespace vcurate

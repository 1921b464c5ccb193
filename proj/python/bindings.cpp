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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vcurate/corpus.hpp"
#include "vcurate/curriculum.hpp"
#include "vcurate/dedup.hpp"
#include "vcurate/generation.hpp"
#include "vcurate/metrics.hpp"
#include "vcurate/tokenizer.hpp"

namespace py = pybind11;
using namespace vcurate;

namespace {

py::list split_modules_py(const std::string& text) {
  SourceFile file;
  file.path = "<memory>";
  file.text = sanitize_utf8(text);
  file.byte_len = text.size();
  py::list out;
  for (const VerilogModule& m : split_modules(file)) {
    py::dict d;
    d["id"] = m.id;
    d["name"] = m.name;
    d["span_start"] = m.span_start;
    d["span_end"] = m.span_end;
    d["raw_text"] = m.raw_text;
    d["stripped_text"] = m.stripped_text;
    out.append(d);
  }
  return out;
}

double exact_jaccard_text(const std::string& a, const std::string& b, int k) {
  const auto sa = shingle(code_tokens(a), static_cast<std::size_t>(k));
  const auto sb = shingle(code_tokens(b), static_cast<std::size_t>(k));
  return exact_jaccard(sa, sb);
}

double minhash_estimate_text(const std::string& a, const std::string& b, int k,
                             int num_hashes, std::uint64_t seed) {
  const auto sa = shingle(code_tokens(a), static_cast<std::size_t>(k));
  const auto sb = shingle(code_tokens(b), static_cast<std::size_t>(k));
  return estimate_jaccard(
      minhash_signature(sa, static_cast<std::size_t>(num_hashes), seed),
      minhash_signature(sb, static_cast<std::size_t>(num_hashes), seed));
}

double pass_at_k_py(const std::vector<std::vector<bool>>& passes, int k,
                    const std::string& mode) {
  return pass_at_k(passes, k, passk_mode_from_string(mode));
}

py::list curriculum_order_py(
    const std::vector<std::tuple<std::string, std::string, std::string>>& keys) {
  std::vector<InstructionSample> samples;
  for (const auto& [level, granularity, source] : keys) {
    InstructionSample s;
    s.level = level_from_string(level);
    s.granularity = granularity_from_string(granularity);
    s.source = source_from_string(source);
    samples.push_back(std::move(s));
  }
  auto shards = preorder_shards(std::move(samples), 0);
  py::list out;
  for (const CurriculumShard& shard : shards) {
    out.append(shard.key.label());
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_vcurate, m) {
  m.doc() = "Verilog corpus curation and evaluation primitives";

  py::register_exception<Error>(m, "VcurateError");

  m.def("strip_comments",
        [](const std::string& text) { return strip_comments(text); },
        py::arg("text"),
        "Remove // and /* */ comments; string literals survive verbatim.");
  m.def("split_modules", &split_modules_py, py::arg("text"),
        "Split Verilog source into module...endmodule units.");
  m.def("count_tokens",
        [](const std::string& text) { return count_tokens(text); },
        py::arg("text"), "Code-lexical token count.");
  m.def("code_tokens",
        [](const std::string& text) { return code_tokens(text); },
        py::arg("text"));

  m.def("exact_jaccard", &exact_jaccard_text, py::arg("a"), py::arg("b"),
        py::arg("k") = 7);
  m.def("minhash_estimate", &minhash_estimate_text, py::arg("a"), py::arg("b"),
        py::arg("k") = 7, py::arg("num_hashes") = 256, py::arg("seed") = 1);

  m.def("bleu4",
        [](const std::string& c, const std::string& r) {
          return bleu4_smoothed(c, r);
        },
        py::arg("candidate"), py::arg("reference"), "Smoothed BLEU-4 (0-100).");
  m.def("rouge_n",
        [](const std::string& c, const std::string& r, int n) {
          return rouge_n(c, r, n);
        },
        py::arg("candidate"), py::arg("reference"), py::arg("n"));
  m.def("rouge_l",
        [](const std::string& c, const std::string& r) { return rouge_l(c, r); },
        py::arg("candidate"), py::arg("reference"));
  m.def("cosine",
        [](const std::vector<double>& u, const std::vector<double>& v) {
          return cosine(u, v);
        },
        py::arg("u"), py::arg("v"));

  m.def("success_rate",
        [](const std::vector<double>& fractions) {
          return success_rate(fractions);
        },
        py::arg("fractions"));
  m.def("pass_at_k", &pass_at_k_py, py::arg("passes"), py::arg("k"),
        py::arg("mode") = "estimator",
        "Pass@k over per-problem pass vectors; modes: any_of_n, estimator, "
        "first_k.");
  m.def("curriculum_order", &curriculum_order_py, py::arg("keys"),
        "Shard labels in curriculum pre-order for (level, granularity, "
        "source) keys.");

  m.attr("__version__") = "0.1.0";
}

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
// Corpus ingestion: walk .v trees, strip comments, split files into
// individual module units, and apply structural filters.

#ifndef VCURATE_CORPUS_HPP
#define VCURATE_CORPUS_HPP

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vcurate/util.hpp"

namespace vcurate {

struct SourceFile {
  std::string path;      // unique within an ingest run
  std::string text;      // UTF-8 after lossy normalization
  std::size_t byte_len;  // size of the file on disk
};

struct SkipEntry {
  std::string path;
  std::string reason;
};

struct ScanResult {
  std::vector<SourceFile> files;  // lexicographic by path
  std::vector<SkipEntry> skipped;
};

/// Collects every regular file under `root` whose name ends in one of
/// `extensions` (default {".v"}). Unreadable root is fatal; unreadable
/// individual files are recorded as skips.
ScanResult scan_corpus(const std::filesystem::path& root,
                       const std::vector<std::string>& extensions = {".v"});

/// Removes `//` and `/* */` comments. String literals are preserved
/// verbatim even if they contain comment markers. Line comments vanish
/// (their newline survives); block comments become a single space.
std::string strip_comments(std::string_view text, Warnings* warnings = nullptr);

struct VerilogModule {
  std::string id;  // content hash of whitespace-normalized stripped text
  std::string path;
  std::size_t span_start = 0;  // byte offsets into the source file text
  std::size_t span_end = 0;
  std::string name;  // declared module identifier ("" if missing)
  std::string raw_text;
  std::string stripped_text;
  std::size_t token_count = 0;  // filled by the tokenizer stage
};

/// Deterministic id for a unit of code: hash of its whitespace-normalized
/// comment-stripped text, so formatting noise does not split identical
/// modules.
std::string module_content_id(std::string_view stripped_text);

/// Splits a file into `module ... endmodule` units using the
/// comment/string-aware token stream. A second `module` keyword before
/// `endmodule` closes the current unit (with a warning) so malformed files
/// still yield their salvageable tail. A dangling `module` at EOF emits
/// nothing.
std::vector<VerilogModule> split_modules(const SourceFile& file,
                                         Warnings* warnings = nullptr);

enum class FilterReason {
  Ok,
  NoEndmodule,
  NoModule,
  PredominantlyComments,
  Empty,
};

struct FilterVerdict {
  bool keep = false;
  FilterReason reason = FilterReason::Empty;
};

std::string_view to_string(FilterReason reason);

/// Structural filters: drop units that are predominantly comments
/// (character ratio >= threshold) or lack a module/endmodule pair.
FilterVerdict structural_filter(const VerilogModule& module,
                                double comment_ratio_threshold = 0.8);

/// `module name [#(...)] [(...)] ;` header slice of a module's stripped
/// text, ending at the first top-level semicolon. Empty when the unit has
/// no parseable header.
std::optional<std::string> parse_module_header(std::string_view stripped_text);

}  // namespace vcurate

#endif  // VCURATE_CORPUS_HPP

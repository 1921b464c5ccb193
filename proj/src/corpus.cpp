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

#include "vcurate/corpus.hpp"

#include <algorithm>

#include "vcurate/lexer.hpp"

namespace vcurate {

namespace fs = std::filesystem;

ScanResult scan_corpus(const fs::path& root,
                       const std::vector<std::string>& extensions) {
  std::error_code ec;
  if (!fs::exists(root, ec) || ec) {
    throw Error("corpus root does not exist: " + root.string());
  }
  if (!fs::is_directory(root, ec) || ec) {
    throw Error("corpus root is not a directory: " + root.string());
  }

  auto matches = [&](const fs::path& p) {
    const std::string name = p.filename().string();
    for (const std::string& ext : extensions) {
      if (name.size() >= ext.size() &&
          name.compare(name.size() - ext.size(), ext.size(), ext) == 0) {
        return true;
      }
    }
    return false;
  };

  std::vector<fs::path> paths;
  fs::recursive_directory_iterator it(
      root, fs::directory_options::skip_permission_denied, ec);
  if (ec) throw Error("cannot read corpus root: " + root.string());
  for (const auto& entry : it) {
    if (entry.is_regular_file(ec) && !ec && matches(entry.path())) {
      paths.push_back(entry.path());
    }
  }
  std::sort(paths.begin(), paths.end(),
            [](const fs::path& a, const fs::path& b) {
              return a.generic_string() < b.generic_string();
            });

  ScanResult result;
  for (const fs::path& p : paths) {
    try {
      std::string bytes = read_text_file(p);
      SourceFile file;
      file.path = p.generic_string();
      file.byte_len = bytes.size();
      file.text = sanitize_utf8(bytes);
      result.files.push_back(std::move(file));
    } catch (const Error& e) {
      result.skipped.push_back({p.generic_string(), e.what()});
    }
  }
  return result;
}

std::string strip_comments(std::string_view text, Warnings* warnings) {
  std::string out;
  out.reserve(text.size());
  for (const Region& region : scan_regions(text, warnings)) {
    switch (region.kind) {
      case RegionKind::Code:
      case RegionKind::String:
        out.append(text.substr(region.begin, region.end - region.begin));
        break;
      case RegionKind::LineComment:
        break;  // removed; the newline lives in the next code region
      case RegionKind::BlockComment:
        out.push_back(' ');
        break;
    }
  }
  return out;
}

std::string module_content_id(std::string_view stripped_text) {
  return fingerprint128(normalize_whitespace(stripped_text));
}

namespace {

VerilogModule make_unit(const SourceFile& file, std::size_t begin,
                        std::size_t end, std::string name) {
  VerilogModule unit;
  unit.path = file.path;
  unit.span_start = begin;
  unit.span_end = end;
  unit.raw_text = std::string(
      std::string_view(file.text).substr(begin, end - begin));
  unit.stripped_text = strip_comments(unit.raw_text);
  unit.name = std::move(name);
  unit.id = module_content_id(unit.stripped_text);
  return unit;
}

}  // namespace

std::vector<VerilogModule> split_modules(const SourceFile& file,
                                         Warnings* warnings) {
  std::vector<VerilogModule> units;
  const auto tokens = lex_tokens(file.text);

  bool open = false;
  std::size_t open_begin = 0;
  std::string open_name;
  bool want_name = false;

  for (const Token& tok : tokens) {
    if (tok.in_string) continue;
    if (want_name && tok.is_identifier && tok.text != "module" &&
        tok.text != "endmodule") {
      open_name = std::string(tok.text);
      want_name = false;
      continue;
    }
    if (tok.is_identifier && tok.text == "module") {
      if (open) {
        warn(warnings, file.path + ": `module` at byte " +
                           std::to_string(tok.begin) +
                           " before `endmodule`; closing previous unit");
        units.push_back(make_unit(file, open_begin, tok.begin, open_name));
      }
      open = true;
      open_begin = tok.begin;
      open_name.clear();
      want_name = true;
    } else if (tok.is_identifier && tok.text == "endmodule") {
      if (!open) {
        warn(warnings, file.path + ": stray `endmodule` at byte " +
                           std::to_string(tok.begin) + "; skipped");
        continue;
      }
      units.push_back(make_unit(file, open_begin, tok.end, open_name));
      open = false;
      want_name = false;
    }
  }
  if (open) {
    warn(warnings, file.path + ": `module` without `endmodule` at EOF; unit dropped");
  }
  return units;
}

std::string_view to_string(FilterReason reason) {
  switch (reason) {
    case FilterReason::Ok: return "Ok";
    case FilterReason::NoEndmodule: return "NoEndmodule";
    case FilterReason::NoModule: return "NoModule";
    case FilterReason::PredominantlyComments: return "PredominantlyComments";
    case FilterReason::Empty: return "Empty";
  }
  return "Unknown";
}

FilterVerdict structural_filter(const VerilogModule& module,
                                double comment_ratio_threshold) {
  if (module.raw_text.empty()) return {false, FilterReason::Empty};
  if (comment_char_ratio(module.raw_text) >= comment_ratio_threshold) {
    return {false, FilterReason::PredominantlyComments};
  }
  bool has_module = false;
  bool has_endmodule = false;
  for (const Token& tok : lex_tokens(module.stripped_text)) {
    if (tok.in_string || !tok.is_identifier) continue;
    if (tok.text == "module") has_module = true;
    if (tok.text == "endmodule") has_endmodule = true;
  }
  if (!has_module) return {false, FilterReason::NoModule};
  if (!has_endmodule) return {false, FilterReason::NoEndmodule};
  return {true, FilterReason::Ok};
}

std::optional<std::string> parse_module_header(
    std::string_view stripped_text) {
  const auto tokens = lex_tokens(stripped_text);
  std::size_t begin = std::string_view::npos;
  int paren_depth = 0;
  bool in_module = false;
  for (const Token& tok : tokens) {
    if (tok.in_string) continue;
    if (!in_module) {
      if (tok.is_identifier && tok.text == "module") {
        in_module = true;
        begin = tok.begin;
      }
      continue;
    }
    if (tok.text == "(") ++paren_depth;
    if (tok.text == ")") --paren_depth;
    if (tok.text == ";" && paren_depth == 0) {
      return std::string(stripped_text.substr(begin, tok.end - begin));
    }
  }
  return std::nullopt;
}

}  // namespace vcurate

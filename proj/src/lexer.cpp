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

#include "vcurate/lexer.hpp"

#include <cctype>

namespace vcurate {

std::vector<Region> scan_regions(std::string_view text, Warnings* warnings) {
  std::vector<Region> regions;
  const std::size_t n = text.size();
  std::size_t i = 0;
  std::size_t code_start = 0;

  auto flush_code = [&](std::size_t end) {
    if (end > code_start) {
      regions.push_back({RegionKind::Code, code_start, end});
    }
  };

  while (i < n) {
    const char c = text[i];
    if (c == '/' && i + 1 < n && text[i + 1] == '/') {
      flush_code(i);
      std::size_t j = i + 2;
      while (j < n && text[j] != '\n') ++j;
      regions.push_back({RegionKind::LineComment, i, j});
      i = j;  // the newline itself stays in the following code region
      code_start = i;
    } else if (c == '/' && i + 1 < n && text[i + 1] == '*') {
      flush_code(i);
      std::size_t j = i + 2;
      while (j + 1 < n && !(text[j] == '*' && text[j + 1] == '/')) ++j;
      if (j + 1 < n) {
        j += 2;
      } else {
        j = n;
        warn(warnings, "unterminated block comment at byte " +
                           std::to_string(i));
      }
      regions.push_back({RegionKind::BlockComment, i, j});
      i = j;
      code_start = i;
    } else if (c == '"') {
      flush_code(i);
      std::size_t j = i + 1;
      while (j < n) {
        if (text[j] == '\\' && j + 1 < n) {
          j += 2;
          continue;
        }
        if (text[j] == '"') break;
        ++j;
      }
      if (j < n) {
        ++j;  // include closing quote
      } else {
        warn(warnings,
             "unterminated string literal at byte " + std::to_string(i));
      }
      regions.push_back({RegionKind::String, i, j});
      i = j;
      code_start = i;
    } else {
      ++i;
    }
  }
  flush_code(n);
  return regions;
}

std::vector<Token> lex_tokens(std::string_view text, Warnings* warnings) {
  std::vector<Token> tokens;
  const auto regions = scan_regions(text, warnings);
  for (const Region& region : regions) {
    if (region.kind == RegionKind::LineComment ||
        region.kind == RegionKind::BlockComment) {
      continue;
    }
    const bool in_string = region.kind == RegionKind::String;
    std::size_t i = region.begin;
    while (i < region.end) {
      const char c = text[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      if (is_ident_char(c)) {
        std::size_t j = i + 1;
        while (j < region.end && is_ident_char(text[j])) ++j;
        const std::string_view word = text.substr(i, j - i);
        tokens.push_back({word, i, j, is_ident_start(text[i]), in_string});
        i = j;
      } else {
        tokens.push_back({text.substr(i, 1), i, i + 1, false, in_string});
        ++i;
      }
    }
  }
  return tokens;
}

double comment_char_ratio(std::string_view text) {
  if (text.empty()) return 0.0;
  std::size_t comment_bytes = 0;
  for (const Region& region : scan_regions(text)) {
    if (region.kind == RegionKind::LineComment ||
        region.kind == RegionKind::BlockComment) {
      comment_bytes += region.end - region.begin;
    }
  }
  return static_cast<double>(comment_bytes) / static_cast<double>(text.size());
}

}  // namespace vcurate

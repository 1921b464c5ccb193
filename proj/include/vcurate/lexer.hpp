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
// A minimal comment/string-aware scanner for Verilog source text. This is
// deliberately not a Verilog grammar: it only distinguishes code, string
// literals, and the two comment forms, which is all the corpus pipeline
// needs to split modules and strip comments safely.

#ifndef VCURATE_LEXER_HPP
#define VCURATE_LEXER_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "vcurate/util.hpp"

namespace vcurate {

enum class RegionKind { Code, LineComment, BlockComment, String };

struct Region {
  RegionKind kind;
  std::size_t begin;  // byte offset, inclusive
  std::size_t end;    // byte offset, exclusive
};

/// Partitions `text` into contiguous regions. Regions tile the input:
/// they are ordered, disjoint, and cover every byte.
/// An unterminated block comment or string extends to end of input and is
/// reported through `warnings`.
std::vector<Region> scan_regions(std::string_view text,
                                 Warnings* warnings = nullptr);

struct Token {
  std::string_view text;
  std::size_t begin;
  std::size_t end;
  bool is_identifier;  // maximal [A-Za-z0-9_$] run
  bool in_string;      // token lies inside a string literal
};

/// Lexical token stream: identifier-character runs are one token each,
/// every other non-whitespace character is its own token. String literals
/// contribute their two quote tokens plus the interior tokens. Comment
/// text contributes nothing.
std::vector<Token> lex_tokens(std::string_view text,
                              Warnings* warnings = nullptr);

/// Fraction of bytes (including delimiters) that belong to comments.
double comment_char_ratio(std::string_view text);

}  // namespace vcurate

#endif  // VCURATE_LEXER_HPP

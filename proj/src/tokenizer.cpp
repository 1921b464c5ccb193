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

#include "vcurate/tokenizer.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "vcurate/lexer.hpp"
#include "vcurate/util.hpp"

namespace vcurate {

std::vector<std::string> code_tokens(std::string_view text) {
  std::vector<std::string> out;
  for (const Token& tok : lex_tokens(text)) {
    out.emplace_back(tok.text);
  }
  return out;
}

std::size_t count_tokens(std::string_view text) {
  return lex_tokens(text).size();
}

std::size_t count_tokens(std::string_view text, const LengthPolicy& policy) {
  if (policy.scheme == TokenScheme::CodeLexical) return count_tokens(text);
  VocabCounter counter(policy.vocab_path);
  return counter.count(text);
}

VocabCounter::VocabCounter(const std::string& vocab_path) {
  std::ifstream in(vocab_path);
  if (!in) throw Error("vocabulary file not found: " + vocab_path);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    entries_.push_back(line);
    max_len_ = std::max(max_len_, line.size());
  }
  if (entries_.empty()) throw Error("vocabulary file is empty: " + vocab_path);
  std::sort(entries_.begin(), entries_.end(),
            [](const std::string& a, const std::string& b) {
              if (a.size() != b.size()) return a.size() > b.size();
              return a < b;
            });
  entries_.erase(std::unique(entries_.begin(), entries_.end()),
                 entries_.end());
}

std::size_t VocabCounter::count(std::string_view text) const {
  std::size_t count = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    bool matched = false;
    for (const std::string& entry : entries_) {
      if (entry.size() <= text.size() - i &&
          text.compare(i, entry.size(), entry) == 0) {
        i += entry.size();
        ++count;
        matched = true;
        break;
      }
    }
    if (!matched) {
      ++i;
      ++count;
    }
  }
  return count;
}

std::string_view to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::Keep: return "Keep";
    case VerdictKind::SegmentCandidate: return "SegmentCandidate";
    case VerdictKind::Discard: return "Discard";
  }
  return "Unknown";
}

LengthVerdict length_gate(std::size_t token_count, UnitKind unit,
                          const LengthPolicy& policy) {
  if (policy.max_tokens == 0) throw Error("length policy: max_tokens must be >= 1");
  if (policy.alt_max && *policy.alt_max >= policy.max_tokens) {
    throw Error("length policy: alt_max must be < max_tokens");
  }
  const std::size_t limit = policy.alt_max ? *policy.alt_max : policy.max_tokens;
  if (token_count <= limit) return {VerdictKind::Keep, token_count};
  if (unit == UnitKind::Module) {
    return {VerdictKind::SegmentCandidate, token_count};
  }
  return {VerdictKind::Discard, token_count};
}

}  // namespace vcurate

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
// Deterministic token counting and the length gate that decides whether a
// module is annotated whole, segmented into blocks, or discarded.

#ifndef VCURATE_TOKENIZER_HPP
#define VCURATE_TOKENIZER_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vcurate {

enum class TokenScheme {
  CodeLexical,    // identifier runs + one token per other non-ws char
  ExternalVocab,  // greedy longest match over a vocabulary file
};

struct LengthPolicy {
  std::size_t max_tokens = 2048;
  // Ablation limit (512). Must be < max_tokens; when set it becomes the
  // operative gate so a single config switch reproduces the short-context
  // variant of the dataset.
  std::optional<std::size_t> alt_max;
  TokenScheme scheme = TokenScheme::CodeLexical;
  std::string vocab_path;  // required for ExternalVocab
};

/// Code-lexical token stream of `text` as strings. Comments contribute no
/// tokens; a string literal counts as its two quotes plus interior tokens.
std::vector<std::string> code_tokens(std::string_view text);

std::size_t count_tokens(std::string_view text, const LengthPolicy& policy);
std::size_t count_tokens(std::string_view text);  // CodeLexical

/// Greedy longest-match token count over a newline-separated vocabulary.
/// Whitespace is skipped; a byte matching no entry counts as one token.
class VocabCounter {
 public:
  explicit VocabCounter(const std::string& vocab_path);
  std::size_t count(std::string_view text) const;

 private:
  std::vector<std::string> entries_;  // sorted by length desc then lex
  std::size_t max_len_ = 0;
};

enum class UnitKind { Module, Block };

enum class VerdictKind { Keep, SegmentCandidate, Discard };

struct LengthVerdict {
  VerdictKind kind;
  std::size_t token_count;
};

std::string_view to_string(VerdictKind kind);

/// The limit is inclusive: token_count <= max keeps. Whole modules over
/// the limit become segmentation candidates; blocks over the limit are
/// discarded.
LengthVerdict length_gate(std::size_t token_count, UnitKind unit,
                          const LengthPolicy& policy);

}  // namespace vcurate

#endif  // VCURATE_TOKENIZER_HPP

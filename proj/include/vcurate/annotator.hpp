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
// The three-step annotation chain (commenting, detailed specification,
// high-level description), line-annotation extraction and validation,
// oversize-module segmentation, and human-annotation import.

#ifndef VCURATE_ANNOTATOR_HPP
#define VCURATE_ANNOTATOR_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vcurate/corpus.hpp"
#include "vcurate/llm.hpp"
#include "vcurate/prompts.hpp"
#include "vcurate/tokenizer.hpp"

namespace vcurate {

enum class Level { Line, Block, Module };
enum class Granularity { LineComment, Detailed, MediumDetail, HighLevel };
enum class Source { Gpt, Human };

std::string_view to_string(Level level);
std::string_view to_string(Granularity granularity);
std::string_view to_string(Source source);
Level level_from_string(std::string_view s);
Granularity granularity_from_string(std::string_view s);
Source source_from_string(std::string_view s);

enum class RejectReason {
  None,
  CodeMutated,
  LlmUnavailable,
  MalformedSpec,
  TooLong,
  IdentifierOutsideLine,
  RoleWordOutsideDeclaration,
  CheckerRejected,
  ParseFailure,
};

std::string_view to_string(RejectReason reason);

struct AnnotationRecord {
  std::string target_id;  // annotated unit (module or block content id)
  std::string module_id;  // owning module
  std::string block_id;   // set when the unit is a block
  std::optional<int> line;  // 1-based, module-relative; Line level only
  Level level = Level::Module;
  Granularity granularity = Granularity::HighLevel;
  Source source = Source::Gpt;
  std::string description;
  std::string code;  // exact code the description refers to
  bool accepted = true;
  RejectReason reject_reason = RejectReason::None;
};

struct AnnotationStats {
  std::map<std::pair<Level, Granularity>, std::size_t> counts;

  void add(const AnnotationRecord& record) {
    if (record.accepted) ++counts[{record.level, record.granularity}];
  }
  std::size_t total() const {
    std::size_t sum = 0;
    for (const auto& [key, n] : counts) sum += n;
    return sum;
  }
  std::size_t at(Level level, Granularity granularity) const {
    const auto it = counts.find({level, granularity});
    return it == counts.end() ? 0 : it->second;
  }
};

// --- segmentation ----------------------------------------------------------

enum class BlockKind { Always, Assign, Instantiation, Declaration, Other };

std::string_view to_string(BlockKind kind);

struct CodeBlock {
  std::string id;         // <module_id>:b<index>
  std::string module_id;
  BlockKind kind = BlockKind::Other;
  std::string text;
  std::size_t span_start = 0;  // offsets into the module's stripped text
  std::size_t span_end = 0;
  std::size_t token_count = 0;
};

/// Deterministic syntactic segmentation of a module body into always
/// blocks, continuous assignments, instantiations, declarations, and
/// residual regions. Blocks tile the body: spans are disjoint, ordered,
/// and concatenate back to it.
std::vector<CodeBlock> extract_blocks(const VerilogModule& module,
                                      Warnings* warnings = nullptr);

// --- annotation steps --------------------------------------------------

struct AnnotateContext {
  PromptTemplates templates;
  ClientProfile annotator_profile;
  ClientProfile checker_profile;
  LlmClient* annotator = nullptr;
  LlmClient* checker = nullptr;  // optional line-annotation checker
  int semantic_retries = 2;      // re-asks after a failed post-check
  int high_level_max_words = 120;
  std::string few_shot;
  LengthPolicy length_policy;
};

struct StepOutcome {
  bool accepted = false;
  RejectReason reason = RejectReason::None;
  std::string text;
  int attempts = 0;
};

/// Step 1: returns commented code. Post-check: stripping all comments from
/// the response must reproduce the input modulo whitespace; on mismatch the
/// request is retried with a fresh attempt salt, then rejected CodeMutated.
StepOutcome annotate_comments(const std::string& code, AnnotateContext& ctx);

/// Step 2: detailed specification; must contain both required section
/// headers or is rejected MalformedSpec.
StepOutcome detailed_spec(const std::string& commented_code,
                          AnnotateContext& ctx);

/// Step 3: short high-level description; the word ceiling is enforced with
/// retry then rejection TooLong.
StepOutcome high_level_description(const std::string& qualified_code,
                                   const std::string& spec,
                                   AnnotateContext& ctx);

/// Pairs comments with code lines: a full-line comment annotates the next
/// non-blank code line, a trailing comment its own line; both merge when
/// present. Records come back Accepted with Line level and line numbers
/// relative to the commented unit plus `line_offset`.
std::vector<AnnotationRecord> extract_line_annotations(
    std::string_view commented_code, const std::string& target_id,
    const std::string& module_id, const std::string& block_id = "",
    int line_offset = 0, Warnings* warnings = nullptr);

struct ValidationResult {
  bool accepted = true;
  RejectReason reason = RejectReason::None;
  Warnings warnings;
};

/// Offline rule first: every signal-like identifier mentioned in the
/// description must occur among the line's tokens, and the port role words
/// are only allowed on port declarations. A configured checker client is
/// consulted only for rule-accepted records and may downgrade them;
/// checker transport failures keep the rule verdict.
ValidationResult validate_line_annotation(std::string_view line,
                                          std::string_view description,
                                          AnnotateContext* ctx = nullptr);

// --- human annotations -------------------------------------------------

struct HumanImport {
  std::vector<AnnotationRecord> records;
  std::vector<std::string> errors;  // per-record problems, not fatal
};

/// Reads the human-annotation JSONL: one object per line with
/// {target_id, level, entries:{H, M?, D?}}. Module records require H and D;
/// block records require H and M, with D optional. An unparseable file is
/// fatal and names the line.
HumanImport import_human_annotations(const std::filesystem::path& file);

// --- whole-module orchestration -----------------------------------------

struct UnitError {
  std::string unit_id;
  std::string stage;
  RejectReason reason;
};

struct ModuleAnnotation {
  std::vector<AnnotationRecord> records;  // sorted, both accepted + rejected
  std::vector<UnitError> unit_errors;
  std::vector<std::string> discarded_blocks;  // blocks over the length limit
  Warnings warnings;
};

/// Gate, optional segmentation, then steps 1-3 per qualified unit with
/// line extraction and validation. Failures isolate to their unit.
ModuleAnnotation annotate_module(const VerilogModule& module,
                                 AnnotateContext& ctx);

}  // namespace vcurate

#endif  // VCURATE_ANNOTATOR_HPP

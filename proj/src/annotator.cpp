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

#include "vcurate/annotator.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_set>

#include <json.hpp>

#include "vcurate/lexer.hpp"

namespace vcurate {

using nlohmann::json;

std::string_view to_string(Level level) {
  switch (level) {
    case Level::Line: return "line";
    case Level::Block: return "block";
    case Level::Module: return "module";
  }
  return "unknown";
}

std::string_view to_string(Granularity granularity) {
  switch (granularity) {
    case Granularity::LineComment: return "line_comment";
    case Granularity::Detailed: return "detailed";
    case Granularity::MediumDetail: return "medium_detail";
    case Granularity::HighLevel: return "high_level";
  }
  return "unknown";
}

std::string_view to_string(Source source) {
  return source == Source::Gpt ? "gpt" : "human";
}

Level level_from_string(std::string_view s) {
  if (s == "line") return Level::Line;
  if (s == "block") return Level::Block;
  if (s == "module") return Level::Module;
  throw Error("unknown level: " + std::string(s));
}

Granularity granularity_from_string(std::string_view s) {
  if (s == "line_comment") return Granularity::LineComment;
  if (s == "detailed") return Granularity::Detailed;
  if (s == "medium_detail") return Granularity::MediumDetail;
  if (s == "high_level") return Granularity::HighLevel;
  throw Error("unknown granularity: " + std::string(s));
}

Source source_from_string(std::string_view s) {
  if (s == "gpt") return Source::Gpt;
  if (s == "human") return Source::Human;
  throw Error("unknown source: " + std::string(s));
}

std::string_view to_string(RejectReason reason) {
  switch (reason) {
    case RejectReason::None: return "none";
    case RejectReason::CodeMutated: return "code_mutated";
    case RejectReason::LlmUnavailable: return "llm_unavailable";
    case RejectReason::MalformedSpec: return "malformed_spec";
    case RejectReason::TooLong: return "too_long";
    case RejectReason::IdentifierOutsideLine: return "identifier_outside_line";
    case RejectReason::RoleWordOutsideDeclaration:
      return "role_word_outside_declaration";
    case RejectReason::CheckerRejected: return "checker_rejected";
    case RejectReason::ParseFailure: return "parse_failure";
  }
  return "unknown";
}

std::string_view to_string(BlockKind kind) {
  switch (kind) {
    case BlockKind::Always: return "always";
    case BlockKind::Assign: return "assign";
    case BlockKind::Instantiation: return "instantiation";
    case BlockKind::Declaration: return "declaration";
    case BlockKind::Other: return "other";
  }
  return "unknown";
}

// --- segmentation ----------------------------------------------------------

namespace {

const std::unordered_set<std::string_view> kDeclKeywords = {
    "input",  "output", "inout",     "wire",    "reg",     "parameter",
    "localparam", "integer", "real", "genvar",  "tri",     "supply0",
    "supply1", "time",  "realtime",  "event",   "logic",
};

bool is_always_keyword(std::string_view text) {
  return text == "always" || text == "always_ff" || text == "always_comb" ||
         text == "always_latch" || text == "initial";
}

struct BodySpan {
  std::size_t begin;
  std::size_t end;
};

// Module body: after the header's top-level ';', before `endmodule`.
std::optional<BodySpan> module_body_span(std::string_view stripped,
                                         const std::vector<Token>& tokens) {
  std::size_t body_begin = std::string_view::npos;
  std::size_t body_end = stripped.size();
  int paren_depth = 0;
  bool in_module = false;
  for (const Token& tok : tokens) {
    if (tok.in_string) continue;
    if (!in_module) {
      if (tok.is_identifier && tok.text == "module") in_module = true;
      continue;
    }
    if (body_begin == std::string_view::npos) {
      if (tok.text == "(") ++paren_depth;
      if (tok.text == ")") --paren_depth;
      if (tok.text == ";" && paren_depth == 0) body_begin = tok.end;
      continue;
    }
    if (tok.is_identifier && tok.text == "endmodule") {
      body_end = tok.begin;
      break;
    }
  }
  if (body_begin == std::string_view::npos || body_begin > body_end) {
    return std::nullopt;
  }
  return BodySpan{body_begin, body_end};
}

}  // namespace

std::vector<CodeBlock> extract_blocks(const VerilogModule& module,
                                      Warnings* warnings) {
  std::vector<CodeBlock> blocks;
  const std::string_view stripped = module.stripped_text;
  const auto tokens = lex_tokens(stripped);
  const auto body = module_body_span(stripped, tokens);
  if (!body) return blocks;

  // Tokens inside the body only.
  std::vector<const Token*> body_tokens;
  for (const Token& tok : tokens) {
    if (tok.begin >= body->begin && tok.end <= body->end) {
      body_tokens.push_back(&tok);
    }
  }
  if (body_tokens.empty()) return blocks;

  struct Pending {
    BlockKind kind;
    std::size_t first_token;  // index into body_tokens
  };
  std::vector<Pending> statements;

  std::size_t i = 0;
  const std::size_t n = body_tokens.size();
  auto consume_until_semicolon = [&](std::size_t from) {
    int depth = 0;
    std::size_t j = from;
    for (; j < n; ++j) {
      const std::string_view t = body_tokens[j]->text;
      if (t == "(" || t == "[" || t == "{") ++depth;
      if (t == ")" || t == "]" || t == "}") --depth;
      if (t == ";" && depth <= 0) return j + 1;
    }
    return j;
  };
  auto consume_statement = [&](std::size_t from) -> std::size_t {
    // single statement or begin..end group after an always/initial header
    std::size_t j = from;
    // skip sensitivity list @(...)
    if (j < n && body_tokens[j]->text == "@") {
      ++j;
      if (j < n && body_tokens[j]->text == "(") {
        int depth = 0;
        for (; j < n; ++j) {
          if (body_tokens[j]->text == "(") ++depth;
          if (body_tokens[j]->text == ")") {
            --depth;
            if (depth == 0) {
              ++j;
              break;
            }
          }
        }
      } else if (j < n) {
        ++j;  // @* or @event
      }
    }
    if (j < n && body_tokens[j]->is_identifier &&
        body_tokens[j]->text == "begin") {
      int depth = 0;
      for (; j < n; ++j) {
        if (body_tokens[j]->is_identifier && body_tokens[j]->text == "begin") {
          ++depth;
        }
        if (body_tokens[j]->is_identifier && body_tokens[j]->text == "end") {
          --depth;
          if (depth == 0) return j + 1;
        }
      }
      warn(warnings, module.id + ": unbalanced begin/end; block closed at endmodule");
      return n;
    }
    return consume_until_semicolon(j);
  };

  while (i < n) {
    const Token& tok = *body_tokens[i];
    BlockKind kind = BlockKind::Other;
    std::size_t next;
    if (tok.is_identifier && is_always_keyword(tok.text)) {
      kind = tok.text == "initial" ? BlockKind::Other : BlockKind::Always;
      next = consume_statement(i + 1);
    } else if (tok.is_identifier && tok.text == "assign") {
      kind = BlockKind::Assign;
      next = consume_until_semicolon(i);
    } else if (tok.is_identifier && kDeclKeywords.count(tok.text) > 0) {
      kind = BlockKind::Declaration;
      next = consume_until_semicolon(i);
    } else if (tok.is_identifier && i + 1 < n &&
               (body_tokens[i + 1]->is_identifier ||
                body_tokens[i + 1]->text == "#")) {
      kind = BlockKind::Instantiation;
      next = consume_until_semicolon(i);
    } else {
      kind = BlockKind::Other;
      next = consume_until_semicolon(i);
    }
    if (next <= i) next = i + 1;
    statements.push_back({kind, i});
    i = next;
  }

  // Block spans: each starts at its first token and runs to the next
  // block's first token, so the blocks tile the body exactly. The first
  // block absorbs any leading whitespace.
  for (std::size_t s = 0; s < statements.size(); ++s) {
    const std::size_t begin =
        s == 0 ? body->begin : body_tokens[statements[s].first_token]->begin;
    const std::size_t end = s + 1 < statements.size()
                                ? body_tokens[statements[s + 1].first_token]->begin
                                : body->end;
    CodeBlock block;
    block.module_id = module.id;
    block.id = module.id + ":b" + std::to_string(s);
    block.kind = statements[s].kind;
    block.span_start = begin;
    block.span_end = end;
    block.text = std::string(stripped.substr(begin, end - begin));
    block.token_count = count_tokens(block.text);
    blocks.push_back(std::move(block));
  }
  return blocks;
}

// --- annotation steps --------------------------------------------------

namespace {

std::string normalized_code(std::string_view text) {
  return normalize_whitespace(strip_comments(text));
}

StepOutcome run_step(AnnotateContext& ctx,
                     const std::function<ChatRequest(int)>& make_request,
                     const std::function<bool(const std::string&)>& valid,
                     RejectReason failure_reason) {
  StepOutcome outcome;
  if (ctx.annotator == nullptr) {
    outcome.reason = RejectReason::LlmUnavailable;
    return outcome;
  }
  const int total_attempts = 1 + std::max(0, ctx.semantic_retries);
  for (int attempt = 0; attempt < total_attempts; ++attempt) {
    ++outcome.attempts;
    std::string text;
    try {
      text = ctx.annotator->complete(make_request(attempt)).text;
    } catch (const TransportError&) {
      outcome.reason = RejectReason::LlmUnavailable;
      return outcome;
    }
    if (valid(text)) {
      outcome.accepted = true;
      outcome.reason = RejectReason::None;
      outcome.text = std::move(text);
      return outcome;
    }
    outcome.text = std::move(text);
  }
  outcome.accepted = false;
  outcome.reason = failure_reason;
  return outcome;
}

std::size_t word_count(std::string_view text) {
  std::size_t count = 0;
  bool in_word = false;
  for (char c : text) {
    const bool space = std::isspace(static_cast<unsigned char>(c)) != 0;
    if (!space && !in_word) ++count;
    in_word = !space;
  }
  return count;
}

}  // namespace

StepOutcome annotate_comments(const std::string& code, AnnotateContext& ctx) {
  const std::string want = normalized_code(code);
  return run_step(
      ctx,
      [&](int attempt) {
        return build_step1_request(ctx.templates, ctx.annotator_profile, code,
                                   ctx.few_shot, attempt);
      },
      [&](const std::string& text) { return normalized_code(text) == want; },
      RejectReason::CodeMutated);
}

StepOutcome detailed_spec(const std::string& commented_code,
                          AnnotateContext& ctx) {
  return run_step(
      ctx,
      [&](int attempt) {
        return build_step2_request(ctx.templates, ctx.annotator_profile,
                                   commented_code, ctx.few_shot, attempt);
      },
      [](const std::string& text) {
        return text.find("## Functionality") != std::string::npos &&
               text.find("## Implementation") != std::string::npos;
      },
      RejectReason::MalformedSpec);
}

StepOutcome high_level_description(const std::string& qualified_code,
                                   const std::string& spec,
                                   AnnotateContext& ctx) {
  const std::size_t ceiling =
      static_cast<std::size_t>(std::max(1, ctx.high_level_max_words));
  return run_step(
      ctx,
      [&](int attempt) {
        return build_step3_request(ctx.templates, ctx.annotator_profile,
                                   qualified_code, spec,
                                   ctx.high_level_max_words, ctx.few_shot,
                                   attempt);
      },
      [&](const std::string& text) { return word_count(text) <= ceiling; },
      RejectReason::TooLong);
}

// --- line extraction ---------------------------------------------------

namespace {

struct LineParts {
  std::string code;     // comment-free content, trimmed
  std::string comment;  // concatenated comment text, trimmed
};

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

LineParts split_line(std::string_view line) {
  LineParts parts;
  std::string code;
  std::string comment;
  for (const Region& region : scan_regions(line)) {
    const std::string_view piece =
        line.substr(region.begin, region.end - region.begin);
    switch (region.kind) {
      case RegionKind::Code:
      case RegionKind::String:
        code.append(piece);
        break;
      case RegionKind::LineComment:
        comment.append(piece.substr(2));
        comment.push_back(' ');
        break;
      case RegionKind::BlockComment: {
        std::string_view inner = piece.substr(2);
        if (inner.size() >= 2 && inner.ends_with("*/")) {
          inner.remove_suffix(2);
        }
        comment.append(inner);
        comment.push_back(' ');
        code.push_back(' ');
        break;
      }
    }
  }
  parts.code = trim(code);
  parts.comment = trim(comment);
  return parts;
}

}  // namespace

std::vector<AnnotationRecord> extract_line_annotations(
    std::string_view commented_code, const std::string& target_id,
    const std::string& module_id, const std::string& block_id,
    int line_offset, Warnings* warnings) {
  std::vector<AnnotationRecord> records;
  std::string pending;
  const auto lines = split_lines(commented_code);
  for (std::size_t idx = 0; idx < lines.size(); ++idx) {
    const LineParts parts = split_line(lines[idx]);
    if (parts.code.empty() && parts.comment.empty()) continue;  // blank
    if (parts.code.empty()) {
      // full-line comment annotates the next code line
      if (!pending.empty()) pending.push_back(' ');
      pending.append(parts.comment);
      continue;
    }
    std::string description = pending;
    pending.clear();
    if (!parts.comment.empty()) {
      if (!description.empty()) description.push_back(' ');
      description.append(parts.comment);
    }
    if (description.empty()) continue;  // uncommented code line
    AnnotationRecord record;
    record.target_id = target_id;
    record.module_id = module_id;
    record.block_id = block_id;
    record.line = static_cast<int>(idx) + 1 + line_offset;
    record.level = Level::Line;
    record.granularity = Granularity::LineComment;
    record.source = Source::Gpt;
    record.description = std::move(description);
    record.code = parts.code;
    records.push_back(std::move(record));
  }
  if (!pending.empty()) {
    warn(warnings, target_id + ": trailing comment with no following code dropped");
  }
  return records;
}

// --- validation ----------------------------------------------------------

namespace {

bool is_role_word(std::string_view word) {
  const std::string w = lowercase(word);
  return w == "input" || w == "output" || w == "inout";
}

// Words that read as signal identifiers rather than prose: anything with a
// digit/underscore/dollar, short all-caps names (excluding the English
// words "A" and "I"), and camelCase.
bool looks_like_identifier(std::string_view word) {
  if (word.empty() || !is_ident_start(word.front())) return false;
  bool has_mark = false;
  bool has_upper = false;
  bool has_lower = false;
  bool upper_after_start = false;
  for (std::size_t i = 0; i < word.size(); ++i) {
    const char c = word[i];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '_' || c == '$') {
      has_mark = true;
    }
    if (std::isupper(static_cast<unsigned char>(c))) {
      has_upper = true;
      if (i > 0) upper_after_start = true;
    }
    if (std::islower(static_cast<unsigned char>(c))) has_lower = true;
  }
  if (has_mark) return true;
  if (has_upper && !has_lower && word.size() <= 8 && word != "A" && word != "I") {
    return true;
  }
  if (has_lower && upper_after_start) return true;  // camelCase
  return false;
}

std::vector<std::string> description_words(std::string_view description) {
  std::vector<std::string> words;
  std::string current;
  for (char c : description) {
    if (is_ident_char(c)) {
      current.push_back(c);
    } else if (!current.empty()) {
      words.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) words.push_back(std::move(current));
  return words;
}

}  // namespace

ValidationResult validate_line_annotation(std::string_view line,
                                          std::string_view description,
                                          AnnotateContext* ctx) {
  ValidationResult result;
  std::set<std::string, std::less<>> line_tokens;
  bool is_port_declaration = false;
  for (const Token& tok : lex_tokens(line)) {
    line_tokens.emplace(tok.text);
    if (!tok.in_string && tok.is_identifier && is_role_word(tok.text)) {
      is_port_declaration = true;
    }
  }

  for (const std::string& word : description_words(description)) {
    if (is_role_word(word)) {
      if (!is_port_declaration) {
        result.accepted = false;
        result.reason = RejectReason::RoleWordOutsideDeclaration;
        return result;
      }
      continue;
    }
    if (looks_like_identifier(word) && line_tokens.count(word) == 0) {
      result.accepted = false;
      result.reason = RejectReason::IdentifierOutsideLine;
      return result;
    }
  }

  if (ctx != nullptr && ctx->checker != nullptr) {
    try {
      const ChatResponse response = ctx->checker->complete(
          build_line_check_request(ctx->templates, ctx->checker_profile, line,
                                   description, 0));
      const std::string upper = [&] {
        std::string u = response.text;
        for (char& c : u) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        return u;
      }();
      if (upper.find("REJECT") != std::string::npos) {
        result.accepted = false;
        result.reason = RejectReason::CheckerRejected;
      } else if (upper.find("ACCEPT") == std::string::npos) {
        result.warnings.push_back("checker verdict unparseable; rule verdict kept");
      }
    } catch (const TransportError& e) {
      result.warnings.push_back(std::string("checker unavailable: ") + e.what());
    }
  }
  return result;
}

// --- human annotations -------------------------------------------------

HumanImport import_human_annotations(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error("cannot open human annotations: " + file.string());
  HumanImport result;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    json row;
    try {
      row = json::parse(line);
    } catch (const json::exception& e) {
      throw Error(file.string() + ":" + std::to_string(line_no) +
                  ": unparseable human annotation: " + e.what());
    }
    auto record_error = [&](const std::string& message) {
      result.errors.push_back(file.string() + ":" + std::to_string(line_no) +
                              ": " + message);
    };
    if (!row.contains("target_id") || !row.contains("level") ||
        !row.contains("entries")) {
      record_error("record must have target_id, level, entries");
      continue;
    }
    const std::string target_id = row["target_id"].get<std::string>();
    const std::string level_str = row["level"].get<std::string>();
    if (level_str != "module" && level_str != "block") {
      record_error(target_id + ": level must be module or block");
      continue;
    }
    const Level level = level_str == "module" ? Level::Module : Level::Block;
    const json& entries = row["entries"];
    for (const auto& [key, value] : entries.items()) {
      if (key != "H" && key != "M" && key != "D") {
        record_error(target_id + ": unknown entry key '" + key + "'");
      }
    }
    if (!entries.contains("H")) {
      record_error(target_id + ": missing mandatory H entry");
      continue;
    }
    if (level == Level::Module && !entries.contains("D")) {
      record_error(target_id + ": module record missing mandatory D entry");
      continue;
    }
    if (level == Level::Module && entries.contains("M")) {
      record_error(target_id + ": module records have no M entry");
      continue;
    }
    if (level == Level::Block && !entries.contains("M")) {
      record_error(target_id + ": block record missing mandatory M entry");
      continue;
    }

    auto emit = [&](Granularity granularity, const json& text) {
      AnnotationRecord record;
      record.target_id = target_id;
      record.module_id = level == Level::Module ? target_id : "";
      record.block_id = level == Level::Block ? target_id : "";
      record.level = level;
      record.granularity = granularity;
      record.source = Source::Human;
      record.description = text.get<std::string>();
      result.records.push_back(std::move(record));
    };
    emit(Granularity::HighLevel, entries["H"]);
    if (entries.contains("M")) emit(Granularity::MediumDetail, entries["M"]);
    if (entries.contains("D")) emit(Granularity::Detailed, entries["D"]);
  }
  return result;
}

// --- orchestration -------------------------------------------------------

namespace {

struct Unit {
  std::string target_id;
  std::string block_id;  // empty for whole-module units
  Level level;
  std::string code;
  int line_offset;
};

void annotate_unit(const Unit& unit, const std::string& module_id,
                   AnnotateContext& ctx, ModuleAnnotation& out) {
  const StepOutcome commented = annotate_comments(unit.code, ctx);
  if (!commented.accepted) {
    out.unit_errors.push_back({unit.target_id, "step1", commented.reason});
    return;
  }

  auto lines = extract_line_annotations(commented.text, unit.target_id,
                                        module_id, unit.block_id,
                                        unit.line_offset, &out.warnings);
  for (AnnotationRecord& record : lines) {
    const ValidationResult verdict =
        validate_line_annotation(record.code, record.description, &ctx);
    for (const std::string& w : verdict.warnings) out.warnings.push_back(w);
    record.accepted = verdict.accepted;
    record.reject_reason = verdict.reason;
    out.records.push_back(std::move(record));
  }

  const StepOutcome spec = detailed_spec(commented.text, ctx);
  if (!spec.accepted) {
    out.unit_errors.push_back({unit.target_id, "step2", spec.reason});
    return;
  }
  AnnotationRecord detailed;
  detailed.target_id = unit.target_id;
  detailed.module_id = module_id;
  detailed.block_id = unit.block_id;
  detailed.level = unit.level;
  detailed.granularity = Granularity::Detailed;
  detailed.source = Source::Gpt;
  detailed.description = spec.text;
  detailed.code = unit.code;
  out.records.push_back(detailed);

  const StepOutcome high = high_level_description(unit.code, spec.text, ctx);
  if (!high.accepted) {
    out.unit_errors.push_back({unit.target_id, "step3", high.reason});
    return;
  }
  AnnotationRecord high_record;
  high_record.target_id = unit.target_id;
  high_record.module_id = module_id;
  high_record.block_id = unit.block_id;
  high_record.level = unit.level;
  high_record.granularity = Granularity::HighLevel;
  high_record.source = Source::Gpt;
  high_record.description = high.text;
  high_record.code = unit.code;
  out.records.push_back(high_record);
}

}  // namespace

ModuleAnnotation annotate_module(const VerilogModule& module,
                                 AnnotateContext& ctx) {
  ModuleAnnotation out;
  const std::size_t tokens =
      count_tokens(module.stripped_text, ctx.length_policy);
  const LengthVerdict verdict =
      length_gate(tokens, UnitKind::Module, ctx.length_policy);

  std::vector<Unit> units;
  if (verdict.kind == VerdictKind::Keep) {
    units.push_back({module.id, "", Level::Module, module.stripped_text, 0});
  } else {
    for (const CodeBlock& block : extract_blocks(module, &out.warnings)) {
      const LengthVerdict block_verdict =
          length_gate(block.token_count, UnitKind::Block, ctx.length_policy);
      if (block_verdict.kind != VerdictKind::Keep) {
        out.discarded_blocks.push_back(block.id);
        continue;
      }
      const int line_offset = static_cast<int>(
          std::count(module.stripped_text.begin(),
                     module.stripped_text.begin() +
                         static_cast<std::ptrdiff_t>(block.span_start),
                     '\n'));
      units.push_back({block.id, block.id, Level::Block, block.text,
                       line_offset});
    }
  }

  for (const Unit& unit : units) {
    annotate_unit(unit, module.id, ctx, out);
  }

  std::sort(out.records.begin(), out.records.end(),
            [](const AnnotationRecord& a, const AnnotationRecord& b) {
              return std::tie(a.module_id, a.level, a.target_id, a.line,
                              a.granularity, a.source) <
                     std::tie(b.module_id, b.level, b.target_id, b.line,
                              b.granularity, b.source);
            });
  return out;
}

}  // namespace vcurate

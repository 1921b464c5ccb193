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
// Instruction-tuning sample construction from annotation records:
// understanding, generation, and module completion, with instruction text
// drawn from a per-scenario template table.

#ifndef VCURATE_INSTRUCTIONS_HPP
#define VCURATE_INSTRUCTIONS_HPP

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vcurate/annotator.hpp"

namespace vcurate {

enum class TaskKind { Understand, Generate, Complete };

std::string_view to_string(TaskKind task);
TaskKind task_from_string(std::string_view s);

struct InstructionSample {
  std::string instruction;
  std::string input;
  std::string output;
  TaskKind task = TaskKind::Understand;
  Level level = Level::Module;
  Granularity granularity = Granularity::HighLevel;
  Source source = Source::Gpt;
  std::string origin_module_id;
  std::string origin_target_id;
  std::optional<int> origin_line;
};

/// Instruction text keyed by (task, level, granularity); loaded from the
/// versioned JSON asset.
class InstructionTemplates {
 public:
  static InstructionTemplates from_json(const std::string& json_text);
  const std::string& lookup(TaskKind task, Level level,
                            Granularity granularity) const;

 private:
  std::map<std::string, std::string> table_;
};

/// Builds one sample. `code` is the exact code the record describes.
/// Understand: input=code, output=description. Generate: the reverse.
/// Complete (module level only): input = description + module header,
/// output = the full module, which begins with that header.
InstructionSample build_instruction(const AnnotationRecord& record,
                                    std::string_view code, TaskKind task,
                                    const InstructionTemplates& templates);

struct DatasetCounts {
  // key: (task, level, granularity, source)
  std::map<std::tuple<TaskKind, Level, Granularity, Source>, std::size_t>
      per_cell;
};

struct DatasetEmission {
  std::vector<InstructionSample> samples;  // deterministic order
  DatasetCounts counts;
  Warnings warnings;  // e.g. human records whose target id is unknown
};

/// One sample per applicable task per accepted record: Understand and
/// Generate always, Complete only at module level. Records without inline
/// code resolve it through `module_code_by_id`.
DatasetEmission emit_dataset(
    std::span<const AnnotationRecord> records,
    const std::map<std::string, std::string>& module_code_by_id,
    const InstructionTemplates& templates);

}  // namespace vcurate

#endif  // VCURATE_INSTRUCTIONS_HPP

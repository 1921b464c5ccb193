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

#include "vcurate/instructions.hpp"

#include <algorithm>

#include <json.hpp>

namespace vcurate {

using nlohmann::json;

std::string_view to_string(TaskKind task) {
  switch (task) {
    case TaskKind::Understand: return "understand";
    case TaskKind::Generate: return "generate";
    case TaskKind::Complete: return "complete";
  }
  return "unknown";
}

TaskKind task_from_string(std::string_view s) {
  if (s == "understand") return TaskKind::Understand;
  if (s == "generate") return TaskKind::Generate;
  if (s == "complete") return TaskKind::Complete;
  throw Error("unknown task: " + std::string(s));
}

InstructionTemplates InstructionTemplates::from_json(
    const std::string& json_text) {
  InstructionTemplates templates;
  json parsed;
  try {
    parsed = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(std::string("instruction template table unparseable: ") +
                e.what());
  }
  for (const auto& [task, levels] : parsed.items()) {
    for (const auto& [level, cells] : levels.items()) {
      for (const auto& [granularity, text] : cells.items()) {
        templates.table_[task + "." + level + "." + granularity] =
            text.get<std::string>();
      }
    }
  }
  return templates;
}

const std::string& InstructionTemplates::lookup(TaskKind task, Level level,
                                                Granularity granularity) const {
  const std::string key = std::string(to_string(task)) + "." +
                          std::string(to_string(level)) + "." +
                          std::string(to_string(granularity));
  const auto it = table_.find(key);
  if (it == table_.end()) {
    throw Error("no instruction template for scenario " + key);
  }
  return it->second;
}

InstructionSample build_instruction(const AnnotationRecord& record,
                                    std::string_view code, TaskKind task,
                                    const InstructionTemplates& templates) {
  if (!record.accepted) {
    throw Error("build_instruction: record for " + record.target_id +
                " is not accepted");
  }
  InstructionSample sample;
  sample.task = task;
  sample.level = record.level;
  sample.granularity = record.granularity;
  sample.source = record.source;
  sample.origin_module_id = record.module_id;
  sample.origin_target_id = record.target_id;
  sample.origin_line = record.line;
  sample.instruction = templates.lookup(task, record.level, record.granularity);

  switch (task) {
    case TaskKind::Understand:
      sample.input = std::string(code);
      sample.output = record.description;
      break;
    case TaskKind::Generate:
      sample.input = record.description;
      sample.output = std::string(code);
      break;
    case TaskKind::Complete: {
      if (record.level != Level::Module) {
        throw Error("completion is a module-level task; got " +
                    std::string(to_string(record.level)) + " for " +
                    record.target_id);
      }
      const auto header = parse_module_header(code);
      if (!header) {
        throw Error("module header unparseable for " + record.target_id);
      }
      sample.input = record.description + "\n\n" + *header;
      sample.output = std::string(code);
      break;
    }
  }
  return sample;
}

DatasetEmission emit_dataset(
    std::span<const AnnotationRecord> records,
    const std::map<std::string, std::string>& module_code_by_id,
    const InstructionTemplates& templates) {
  DatasetEmission out;

  std::vector<const AnnotationRecord*> accepted;
  for (const AnnotationRecord& record : records) {
    if (record.accepted) accepted.push_back(&record);
  }
  std::sort(accepted.begin(), accepted.end(),
            [](const AnnotationRecord* a, const AnnotationRecord* b) {
              return std::tie(a->module_id, a->level, a->target_id, a->line,
                              a->granularity, a->source) <
                     std::tie(b->module_id, b->level, b->target_id, b->line,
                              b->granularity, b->source);
            });

  for (const AnnotationRecord* record : accepted) {
    std::string code = record->code;
    if (code.empty()) {
      const auto it = module_code_by_id.find(record->target_id);
      if (it == module_code_by_id.end()) {
        out.warnings.push_back("no code found for target " +
                               record->target_id + "; record skipped");
        continue;
      }
      code = it->second;
    }
    std::vector<TaskKind> tasks = {TaskKind::Understand, TaskKind::Generate};
    if (record->level == Level::Module) tasks.push_back(TaskKind::Complete);
    for (TaskKind task : tasks) {
      try {
        out.samples.push_back(
            build_instruction(*record, code, task, templates));
        ++out.counts.per_cell[{task, record->level, record->granularity,
                               record->source}];
      } catch (const Error& e) {
        out.warnings.push_back(e.what());
      }
    }
  }
  return out;
}

}  // namespace vcurate

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

#ifndef VCURATE_SUBPROCESS_HPP
#define VCURATE_SUBPROCESS_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace vcurate {

struct ExecResult {
  int exit_code = -1;
  bool timed_out = false;
  std::string output;  // combined stdout + stderr
};

/// Runs argv in `cwd` with a wall-clock timeout; the whole process group is
/// killed on expiry. No shell is involved.
ExecResult exec_command(const std::vector<std::string>& argv,
                        const std::filesystem::path& cwd, int timeout_ms);

/// Resolves a program name against PATH (or verifies an explicit path).
std::optional<std::filesystem::path> find_executable(const std::string& name);

}  // namespace vcurate

#endif  // VCURATE_SUBPROCESS_HPP

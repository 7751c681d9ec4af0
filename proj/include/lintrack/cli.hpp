/*
 * Copyright (c) 2026, The lintrack Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef LINTRACK_CLI_HPP_
#define LINTRACK_CLI_HPP_

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lintrack/checker.hpp"
#include "lintrack/json_io.hpp"

namespace lintrack::cli {

inline constexpr const char* kReportSchema = "lintrack-report/1";
inline constexpr const char* kReplaySchema = "lintrack-replay/1";

enum ExitCode : int {
  kExitOk = 0,
  kExitViolation = 1,
  kExitError = 2,
  kExitResourceLimit = 3,
};

struct JobConfig {
  enum class Format { Text, Json };

  std::string implementation_path;
  ExploreParams params;
  /// (object name, domain text) overrides, applied in order.
  std::vector<std::pair<std::string, std::string>> domains;
  std::optional<int> int_bits;
  Format format = Format::Text;
};

struct CommandResult {
  int exit_code = kExitOk;
  std::string out;
  std::string err;
};

/// Loads the implementation and applies the domain and integer-width
/// overrides. Throws std::runtime_error or LoadError.
Implementation load_job(const JobConfig& cfg);

json check_report(const JobConfig& cfg, const Implementation& impl, const Verdict& v);
std::string render_report_text(const json& report);

CommandResult cmd_check(const JobConfig& cfg);
CommandResult cmd_witness(const JobConfig& cfg, const std::string& trace_path);
CommandResult cmd_trace(const JobConfig& cfg, const std::string& schedule_path, bool verbose);

/// Entry point of the `lintrack` tool; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lintrack::cli

#endif  // LINTRACK_CLI_HPP_

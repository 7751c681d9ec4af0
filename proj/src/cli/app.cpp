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

#include <algorithm>
#include <ostream>

#include "CLI11.hpp"
#include "lintrack/cli.hpp"

namespace lintrack::cli {

namespace {

void add_job_options(CLI::App& cmd, JobConfig& cfg, std::vector<std::string>& domains) {
  cmd.add_option("--format", cfg.format, "Output format")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, JobConfig::Format>{{"text", JobConfig::Format::Text}, {"json", JobConfig::Format::Json}}));
  cmd.add_option("--domain", domains, "Override an object's value domain, e.g. cell={0,1,2}");
  cmd.add_option("--int-bits", cfg.int_bits, "Integer width in bits")->check(CLI::Range(2, 63));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bounded linearizability checking by tracking all linearizations", "lintrack"};
  app.require_subcommand(1);

  JobConfig cfg;
  std::vector<std::string> domains;
  std::string trace_path;
  bool verbose = false;
  std::string mode = "exhaustive";
  bool no_dedup = false;

  auto* check = app.add_subcommand("check", "Explore all schedules up to a depth bound");
  check->add_option("file", cfg.implementation_path, "Implementation source")->required();
  check->add_option("--procs", cfg.params.process_count, "Number of processes")->check(CLI::Range(1, 64));
  check->add_option("--depth", cfg.params.max_events, "Maximum events per run")->check(CLI::NonNegativeNumber);
  check->add_option("--mode", mode, "Search mode")->check(CLI::IsMember({"exhaustive", "random"}));
  check->add_option("--seed", cfg.params.seed, "Random seed");
  check->add_option("--trials", cfg.params.trials, "Random schedules to sample")->check(CLI::PositiveNumber);
  check->add_option("--jobs", cfg.params.jobs, "Worker threads")->check(CLI::Range(1, 256));
  check->add_option("--state-budget", cfg.params.state_budget, "Expanded states before giving up (0 = no limit)");
  check->add_flag("--provenance", cfg.params.record_provenance, "Linearize the prefix before a counterexample");
  check->add_flag("--minimize", cfg.params.minimize, "Report a shortest counterexample");
  check->add_flag("--no-dedup", no_dedup, "Disable visited-state pruning");
  add_job_options(*check, cfg, domains);

  auto* witness = app.add_subcommand("witness", "Print a linearization of a trace");
  witness->add_option("file", cfg.implementation_path, "Implementation source")->required();
  witness->add_option("trace", trace_path, "Trace or report (JSON)")->required();
  add_job_options(*witness, cfg, domains);

  auto* trace = app.add_subcommand("trace", "Replay a schedule with tracker snapshots");
  trace->add_option("file", cfg.implementation_path, "Implementation source")->required();
  trace->add_option("schedule", trace_path, "Trace or report (JSON)")->required();
  trace->add_flag("--verbose", verbose, "Print configurations and tracker contents");
  add_job_options(*trace, cfg, domains);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  for (const auto& d : domains) {
    auto eq = d.find('=');
    if (eq == std::string::npos || eq == 0) {
      err << "lintrack: --domain expects NAME=DOMAIN, got '" << d << "'\n";
      return kExitError;
    }
    cfg.domains.emplace_back(d.substr(0, eq), d.substr(eq + 1));
  }
  cfg.params.mode = mode == "random" ? ExploreParams::Mode::Random : ExploreParams::Mode::Exhaustive;
  cfg.params.dedup = !no_dedup;

  CommandResult r;
  if (*check)
    r = cmd_check(cfg);
  else if (*witness)
    r = cmd_witness(cfg, trace_path);
  else
    r = cmd_trace(cfg, trace_path, verbose);
  out << r.out;
  err << r.err;
  return r.exit_code;
}

}  // namespace lintrack::cli

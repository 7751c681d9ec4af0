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

#include <fstream>
#include <sstream>

#include "lintrack/cli.hpp"
#include "lintrack/parser.hpp"

namespace lintrack::cli {

namespace {

std::string value_text(const json& j) { return val_from_json(j).to_string(); }

std::string atomic_text(const json& ac) {
  std::string s = "(" + value_text(ac.at("sigma")) + ";";
  std::size_t p = 0;
  for (const auto& st : ac.at("statuses")) {
    s += (p ? ", p" : " p") + std::to_string(p) + "=";
    const std::string kind = st.at("kind").get<std::string>();
    if (kind == "idle")
      s += "Idle";
    else if (kind == "pending")
      s += "Pending " + st.at("op").get<std::string>() + "(" + value_text(st.at("arg")) + ")";
    else
      s += "Linearized " + value_text(st.at("res"));
    ++p;
  }
  return s + ")";
}

void render_events(std::ostringstream& os, const json& events, std::size_t mark = 0) {
  std::size_t i = 1;
  for (const auto& e : events) {
    os << (i == mark ? " >" : "  ") << std::string(i < 10 ? 3 : 2, ' ') << i << "  "
       << event_from_json(e).to_string() << "\n";
    ++i;
  }
}

void render_tracker(std::ostringstream& os, const std::string& title, const json& tracker) {
  os << title << " (" << tracker.size() << (tracker.size() == 1 ? " configuration" : " configurations") << ")\n";
  for (const auto& ac : tracker) os << "    " << atomic_text(ac) << "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json read_json_file(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw TraceFormatError(path + ": invalid JSON: " + e.what());
  }
}

CommandResult error(const std::string& message, int code = kExitError) {
  return CommandResult{code, {}, "lintrack: " + message + "\n"};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// Runs `body`, mapping load and format failures to exit code 2.
template <typename F>
CommandResult guarded(F&& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    return error(std::string("parse error: ") + e.what());
  } catch (const LoadError& e) {
    return error(std::string("invalid implementation: ") + e.what());
  } catch (const TraceFormatError& e) {
    return error(std::string("invalid trace: ") + e.what());
  } catch (const json::exception& e) {
    return error(std::string("invalid trace: ") + e.what());
  } catch (const std::invalid_argument& e) {
    return error(std::string("invalid configuration: ") + e.what());
  } catch (const std::runtime_error& e) {
    return error(e.what());
  }
}

const char* mode_name(ExploreParams::Mode m) { return m == ExploreParams::Mode::Random ? "random" : "exhaustive"; }

}  // namespace

Implementation load_job(const JobConfig& cfg) {
  Implementation impl = load_implementation(cfg.implementation_path);
  if (cfg.domains.empty() && !cfg.int_bits) return impl;
  for (const auto& [name, text] : cfg.domains) {
    std::vector<Val> domain;
    try {
      domain = parse_domain(text);
    } catch (const ParseError& e) {
      throw std::invalid_argument("domain for " + name + ": " + e.what());
    }
    if (name == impl.name) {
      // Argument domains that were defaulted from the old type follow the new one.
      for (auto it = impl.invoke_domain.begin(); it != impl.invoke_domain.end();) {
        if (it->second == impl.object_type->arg_domain(it->first))
          it = impl.invoke_domain.erase(it);
        else
          ++it;
      }
      impl.object_spec.domain = std::move(domain);
      continue;
    }
    auto decl = std::find_if(impl.base_decls.begin(), impl.base_decls.end(),
                             [&](const BaseObjectDecl& d) { return d.name == name; });
    if (decl == impl.base_decls.end()) throw std::invalid_argument("--domain: no object named " + name);
    decl->spec.domain = std::move(domain);
  }
  if (cfg.int_bits) impl.int_bits = *cfg.int_bits;
  finalize(impl);
  return impl;
}

json check_report(const JobConfig& cfg, const Implementation& impl, const Verdict& v) {
  const ExploreParams& p = cfg.params;
  json params = {{"processes", p.process_count}, {"depth", p.max_events},  {"mode", mode_name(p.mode)},
                 {"dedup", p.dedup},             {"jobs", p.jobs},         {"minimize", p.minimize},
                 {"provenance", p.record_provenance}};
  if (p.mode == ExploreParams::Mode::Random) {
    params["seed"] = p.seed;
    params["trials"] = p.trials;
  }
  json report = {{"tool", "lintrack"},
                 {"schema", kReportSchema},
                 {"implementation", {{"name", impl.name}, {"path", cfg.implementation_path}}},
                 {"params", std::move(params)},
                 {"verdict", verdict_name(v.kind)},
                 {"stats",
                  {{"explored_states", v.stats.explored_states},
                   {"explored_runs", v.stats.explored_runs},
                   {"max_tracker_size", v.stats.max_tracker_size},
                   {"engine", v.stats.engine}}}};
  if (v.run) {
    const auto& run = *v.run;
    json cex = {{"failing_index", v.failing_index},
                {"trace", trace_document(impl, p.process_count, run.events())},
                {"tracker_before", to_json(run.config_at(v.failing_index - 1).tracker)},
                {"tracker_at_failure", to_json(run.config_at(v.failing_index).tracker)}};
    if (p.record_provenance) {
      Run<Configuration> base = project(impl, run.prefix(v.failing_index - 1));
      cex["witness_before_failure"] = atomic_trace_document(impl, extract_witness(impl, base));
    }
    report["counterexample"] = std::move(cex);
  } else {
    report["counterexample"] = nullptr;
  }
  json diags = json::array();
  for (const auto& s : v.stuck) {
    diags.push_back({{"proc", s.diagnostic.proc.index},
                     {"op", s.diagnostic.op},
                     {"pc", s.diagnostic.pc},
                     {"kind", eval_error_kind_name(s.diagnostic.kind)},
                     {"message", s.diagnostic.message},
                     {"trace", trace_document(impl, p.process_count, s.trace)}});
  }
  report["diagnostics"] = std::move(diags);
  return report;
}

std::string render_report_text(const json& report) {
  std::ostringstream os;
  const json& params = report.at("params");
  const json& stats = report.at("stats");
  os << "implementation " << report.at("implementation").at("name").get<std::string>() << " ("
     << report.at("implementation").at("path").get<std::string>() << ")\n";
  os << "processes " << params.at("processes") << ", depth " << params.at("depth") << ", mode "
     << params.at("mode").get<std::string>();
  if (params.contains("seed")) os << " (seed " << params.at("seed") << ", " << params.at("trials") << " trials)";
  os << ", engine " << stats.at("engine").get<std::string>() << "\n";
  os << "verdict: " << report.at("verdict").get<std::string>() << "\n";
  os << "explored " << stats.at("explored_states") << " states, " << stats.at("explored_runs")
     << " runs, max tracker size " << stats.at("max_tracker_size") << "\n";

  const json& cex = report.at("counterexample");
  if (!cex.is_null()) {
    std::size_t k = cex.at("failing_index").get<std::size_t>();
    os << "\ncounterexample: tracker empty after event " << k << "\n";
    render_events(os, cex.at("trace").at("events"), k);
    render_tracker(os, "tracker before event " + std::to_string(k), cex.at("tracker_before"));
    if (cex.contains("witness_before_failure")) {
      os << "linearization of the first " << k - 1 << " events:\n";
      render_events(os, cex.at("witness_before_failure").at("events"));
    }
  }
  const json& diags = report.at("diagnostics");
  if (!diags.empty()) {
    os << "\nstuck processes:\n";
    for (const auto& d : diags) {
      os << "  p" << d.at("proc") << " in " << d.at("op").get<std::string>() << " at line " << d.at("pc") << " ("
         << d.at("kind").get<std::string>() << "): " << d.at("message").get<std::string>() << "\n";
      os << "  reached by:\n";
      render_events(os, d.at("trace").at("events"));
    }
  }
  return os.str();
}

CommandResult cmd_check(const JobConfig& cfg) {
  return guarded([&] {
    Implementation impl = load_job(cfg);
    Verdict v = check(impl, cfg.params);
    json report = check_report(cfg, impl, v);
    CommandResult r;
    r.out = cfg.format == JobConfig::Format::Json ? dump(report) : render_report_text(report);
    switch (v.kind) {
      case Verdict::Kind::LinearizableUpToBound:
        r.exit_code = kExitOk;
        break;
      case Verdict::Kind::Counterexample:
        r.exit_code = kExitViolation;
        break;
      case Verdict::Kind::Stuck:
        r.exit_code = kExitError;
        break;
      case Verdict::Kind::ResourceLimit:
        r.exit_code = kExitResourceLimit;
        break;
    }
    return r;
  });
}

CommandResult cmd_witness(const JobConfig& cfg, const std::string& trace_path) {
  return guarded([&] {
    Implementation impl = load_job(cfg);
    TraceInput in = read_trace(read_json_file(trace_path));
    ReplayResult rep = replay(impl, in.process_count, in.events);
    if (!rep.run) {
      std::string msg = "trace is not a run of " + impl.name + ": event " + std::to_string(rep.applied + 1) + " (" +
                        in.events[rep.applied].to_string() + ") cannot be applied";
      if (rep.stuck) msg += "; " + rep.stuck->to_string();
      return error(msg);
    }
    Run<AtomicConfiguration> witness(AtomicConfiguration{});
    try {
      witness = extract_witness(impl, *rep.run);
    } catch (const NoLinearization& e) {
      return error(e.what(), kExitViolation);
    }
    CommandResult r;
    if (cfg.format == JobConfig::Format::Json) {
      r.out = dump(atomic_trace_document(impl, witness));
    } else {
      std::ostringstream os;
      os << "linearization of " << rep.run->size() << " events (" << witness.size() << " atomic events)\n";
      os << "     0  initial  " << witness.initial.to_string() << "\n";
      for (std::size_t i = 0; i < witness.size(); ++i) {
        std::string ev = witness.steps[i].event.to_string();
        os << std::string(i + 1 < 10 ? 5 : 4, ' ') << i + 1 << "  " << ev
           << std::string(ev.size() < 24 ? 24 - ev.size() : 1, ' ') << witness.steps[i].config.to_string() << "\n";
      }
      r.out = os.str();
    }
    return r;
  });
}

CommandResult cmd_trace(const JobConfig& cfg, const std::string& schedule_path, bool verbose) {
  return guarded([&] {
    Implementation impl = load_job(cfg);
    TraceInput in = read_trace(read_json_file(schedule_path));
    ReplayResult rep = replay(impl, in.process_count, in.events);
    std::size_t applied = rep.applied;
    Run<Configuration> run = rep.run ? *rep.run : *replay(impl, in.process_count,
                                                           std::vector<Event>(in.events.begin(),
                                                                              in.events.begin() + applied))
                                                         .run;
    Run<AugmentedConfiguration> aug = embed(impl, run);

    json steps = json::array();
    std::size_t empty_at = 0;
    for (std::size_t i = 0; i <= aug.size(); ++i) {
      const auto& c = aug.config_at(i);
      json step = {{"index", i},
                   {"event", i ? to_json(aug.steps[i - 1].event) : json(nullptr)},
                   {"configuration", to_json(impl, c.base)},
                   {"tracker_size", c.tracker.size()}};
      if (verbose) step["tracker"] = to_json(c.tracker);
      steps.push_back(std::move(step));
      if (c.tracker.empty()) {
        empty_at = i;
        break;
      }
    }
    json doc = {{"format", kReplaySchema},
                {"implementation", impl.name},
                {"processes", in.process_count},
                {"steps", steps}};
    CommandResult r;
    std::string blocked;
    if (empty_at) {
      doc["result"] = "tracker_empty";
      doc["failing_index"] = empty_at;
      r.exit_code = kExitViolation;
    } else if (!rep.run) {
      blocked = "event " + std::to_string(applied + 1) + " (" + in.events[applied].to_string() + ") cannot be applied";
      if (rep.stuck) blocked += "; " + rep.stuck->to_string();
      doc["result"] = "blocked";
      doc["failing_index"] = applied + 1;
      doc["error"] = blocked;
      r.exit_code = kExitError;
    } else {
      doc["result"] = "ok";
    }

    if (cfg.format == JobConfig::Format::Json) {
      r.out = dump(doc);
    } else {
      std::ostringstream os;
      for (std::size_t i = 0; i < steps.size(); ++i) {
        const json& s = steps[i];
        std::string ev = i ? event_from_json(s.at("event")).to_string() : "initial";
        os << std::string(i < 10 ? 5 : 4, ' ') << i << "  " << ev
           << std::string(ev.size() < 24 ? 24 - ev.size() : 1, ' ') << "tracker " << s.at("tracker_size") << "\n";
        if (verbose) {
          os << "        configuration " << s.at("configuration").dump() << "\n";
          for (const auto& ac : s.at("tracker")) os << "        " << atomic_text(ac) << "\n";
        }
      }
      if (empty_at) os << "tracker empty after event " << empty_at << "\n";
      r.out = os.str();
    }
    if (!blocked.empty()) r.err = "lintrack: " + blocked + "\n";
    return r;
  });
}

}  // namespace lintrack::cli

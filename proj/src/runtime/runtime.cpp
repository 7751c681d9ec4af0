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

#include "lintrack/runtime.hpp"

#include <algorithm>
#include <sstream>

namespace lintrack {

std::string Line::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Invoke:
      os << "Invoke " << op << "(" << value << ")";
      break;
    case Kind::Intermediate:
      os << "Intermediate";
      break;
    case Kind::Response:
      os << "Response " << value;
      break;
  }
  return os.str();
}

std::string Event::to_string() const { return "p" + std::to_string(proc.index) + ": " + line.to_string(); }

std::vector<Event> behavior(const std::vector<Event>& events) {
  std::vector<Event> out;
  for (const auto& e : events)
    if (e.line.kind != Line::Kind::Intermediate) out.push_back(e);
  return out;
}

Configuration Configuration::initial(const Implementation& impl, std::size_t process_count) {
  return Configuration{std::vector<std::optional<Frame>>(process_count), impl.initial_base_states()};
}

std::size_t hash_value(const Configuration& c) {
  std::size_t seed = c.outstanding.size();
  for (const auto& f : c.outstanding) hash_combine(seed, f ? hash_value(*f) : 0x7f4a7c15);
  for (const auto& v : c.eps) hash_combine(seed, v.hash());
  return seed;
}

std::string StuckDiagnostic::to_string() const {
  return "p" + std::to_string(proc.index) + " stuck in " + op + " at line " + std::to_string(pc) + " (" +
         std::string(eval_error_kind_name(kind)) + "): " + message;
}

namespace {

StuckDiagnostic make_stuck(ProcessId proc, const Frame& f, const EvalError& e) {
  return StuckDiagnostic{proc, f.op, f.pc, e.kind(), e.what()};
}

}  // namespace

GlobalStepResult global_step(const Implementation& impl, const Configuration& c, ProcessId proc,
                             const Line& line) {
  GlobalStepResult result;
  if (proc.index >= c.outstanding.size()) return result;
  const auto& slot = c.outstanding[proc.index];
  if (line.kind == Line::Kind::Invoke) {
    if (slot || !impl.procedures.count(line.op)) return result;
    Configuration next = c;
    next.outstanding[proc.index] = initial_frame(impl, line.op, line.value);
    result.successors.push_back(std::move(next));
    return result;
  }
  if (!slot) return result;
  std::vector<FrameOutcome> outcomes;
  try {
    outcomes = step_frame(impl, proc, c.eps, *slot);
  } catch (const EvalError& e) {
    result.stuck = make_stuck(proc, *slot, e);
    return result;
  }
  for (auto& o : outcomes) {
    bool wants_return = line.kind == Line::Kind::Response;
    if (o.sig.is_return != wants_return) continue;
    if (wants_return && o.sig.value != line.value) continue;
    Configuration next{c.outstanding, std::move(o.eps)};
    if (wants_return)
      next.outstanding[proc.index].reset();
    else
      next.outstanding[proc.index] = std::move(o.sig.next);
    if (std::find(result.successors.begin(), result.successors.end(), next) == result.successors.end())
      result.successors.push_back(std::move(next));
  }
  return result;
}

EnabledEvents enabled_events(const Implementation& impl, const Configuration& c) {
  EnabledEvents out;
  for (std::uint32_t p = 0; p < c.outstanding.size(); ++p) {
    ProcessId proc{p};
    const auto& slot = c.outstanding[p];
    if (!slot) {
      for (const auto& [op, domain] : impl.invoke_domain) {
        for (const auto& arg : domain) {
          Configuration next = c;
          next.outstanding[p] = initial_frame(impl, op, arg);
          out.events.push_back({Event{proc, Line::invoke(op, arg)}, std::move(next)});
        }
      }
      continue;
    }
    std::vector<FrameOutcome> outcomes;
    try {
      outcomes = step_frame(impl, proc, c.eps, *slot);
    } catch (const EvalError& e) {
      out.stuck.push_back(make_stuck(proc, *slot, e));
      continue;
    }
    std::vector<EnabledEvent> mine;
    for (auto& o : outcomes) {
      Configuration next{c.outstanding, std::move(o.eps)};
      Line line;
      if (o.sig.is_return) {
        next.outstanding[p].reset();
        line = Line::response(std::move(o.sig.value));
      } else {
        next.outstanding[p] = std::move(o.sig.next);
      }
      mine.push_back({Event{proc, std::move(line)}, std::move(next)});
    }
    std::sort(mine.begin(), mine.end(), [](const EnabledEvent& a, const EnabledEvent& b) {
      return std::tie(a.event, a.successor) < std::tie(b.event, b.successor);
    });
    for (auto& e : mine) out.events.push_back(std::move(e));
  }
  return out;
}

WfResult wf_run(const Implementation& impl, const Run<Configuration>& r) {
  Configuration init = Configuration::initial(impl, r.initial.process_count());
  if (r.initial != init) {
    bool busy = std::any_of(r.initial.outstanding.begin(), r.initial.outstanding.end(),
                            [](const auto& f) { return f.has_value(); });
    return {false, 0, busy ? "initial configuration has outstanding frames"
                           : "initial base states differ from the declared initialization"};
  }
  for (std::size_t i = 0; i < r.steps.size(); ++i) {
    const auto& step = r.steps[i];
    const Configuration& before = r.config_at(i);
    auto result = global_step(impl, before, step.event.proc, step.event.line);
    if (std::find(result.successors.begin(), result.successors.end(), step.config) == result.successors.end()) {
      std::string why = "step " + step.event.to_string() + " does not follow the global dynamics";
      if (result.stuck) why += " (" + result.stuck->to_string() + ")";
      return {false, i + 1, why};
    }
  }
  return {};
}

namespace {

bool replay_from(const Implementation& impl, const std::vector<Event>& events, Run<Configuration>& run,
                 ReplayResult& best) {
  std::size_t i = run.size();
  if (i == events.size()) return true;
  const Event& e = events[i];
  if (e.proc.index >= run.final().process_count()) {
    best.applied = std::max(best.applied, i);
    return false;
  }
  auto step = global_step(impl, run.final(), e.proc, e.line);
  if (step.successors.empty() && i >= best.applied) {
    best.applied = i;
    best.stuck = step.stuck;
  }
  std::sort(step.successors.begin(), step.successors.end());
  for (auto& next : step.successors) {
    run.push(e, std::move(next));
    if (replay_from(impl, events, run, best)) return true;
    run.steps.pop_back();
  }
  return false;
}

}  // namespace

ReplayResult replay(const Implementation& impl, std::size_t process_count, const std::vector<Event>& events) {
  ReplayResult result;
  Run<Configuration> run(Configuration::initial(impl, process_count));
  if (replay_from(impl, events, run, result)) {
    result.applied = events.size();
    result.stuck.reset();
    result.run = std::move(run);
  }
  return result;
}

}  // namespace lintrack

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

#ifndef LINTRACK_RUNTIME_HPP_
#define LINTRACK_RUNTIME_HPP_

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "lintrack/ast.hpp"
#include "lintrack/eval.hpp"

namespace lintrack {

struct Line {
  enum class Kind : std::uint8_t { Invoke = 0, Intermediate = 1, Response = 2 };

  Kind kind = Kind::Intermediate;
  std::string op;  // Invoke only
  Val value;       // Invoke argument or Response value

  static Line invoke(std::string op, Val arg) { return {Kind::Invoke, std::move(op), std::move(arg)}; }
  static Line intermediate() { return {}; }
  static Line response(Val v) { return {Kind::Response, {}, std::move(v)}; }

  std::string to_string() const;
  friend auto operator<=>(const Line&, const Line&) = default;
  friend bool operator==(const Line&, const Line&) = default;
};

struct Event {
  ProcessId proc;
  Line line;

  std::string to_string() const;
  friend auto operator<=>(const Event&, const Event&) = default;
  friend bool operator==(const Event&, const Event&) = default;
};

/// A run: an initial configuration followed by (event, configuration) steps.
template <typename C>
struct Run {
  struct Step {
    Event event;
    C config;
    friend bool operator==(const Step&, const Step&) = default;
  };

  C initial;
  std::vector<Step> steps;

  explicit Run(C init) : initial(std::move(init)) {}

  const C& final() const { return steps.empty() ? initial : steps.back().config; }
  /// Configuration after `i` events (0 = initial).
  const C& config_at(std::size_t i) const { return i == 0 ? initial : steps.at(i - 1).config; }
  std::size_t size() const { return steps.size(); }
  void push(Event e, C c) { steps.push_back({std::move(e), std::move(c)}); }

  Run prefix(std::size_t n) const {
    Run r(initial);
    r.steps.assign(steps.begin(), steps.begin() + static_cast<std::ptrdiff_t>(std::min(n, steps.size())));
    return r;
  }

  std::vector<Event> events() const {
    std::vector<Event> out;
    out.reserve(steps.size());
    for (const auto& s : steps) out.push_back(s.event);
    return out;
  }

  friend bool operator==(const Run&, const Run&) = default;
};

/// Invocation and response events only, in order.
std::vector<Event> behavior(const std::vector<Event>& events);

template <typename C>
std::vector<Event> behavior(const Run<C>& r) {
  return behavior(r.events());
}

/// Global state of an implementation: a frame per busy process plus base states.
struct Configuration {
  std::vector<std::optional<Frame>> outstanding;
  BaseStates eps;

  static Configuration initial(const Implementation& impl, std::size_t process_count);
  std::size_t process_count() const { return outstanding.size(); }

  friend auto operator<=>(const Configuration&, const Configuration&) = default;
  friend bool operator==(const Configuration&, const Configuration&) = default;
};

std::size_t hash_value(const Configuration& c);

/// A process whose next line cannot execute.
struct StuckDiagnostic {
  ProcessId proc;
  std::string op;
  std::size_t pc = 0;
  EvalErrorKind kind = EvalErrorKind::TypeMismatch;
  std::string message;

  std::string to_string() const;
  friend bool operator==(const StuckDiagnostic&, const StuckDiagnostic&) = default;
};

struct GlobalStepResult {
  std::vector<Configuration> successors;
  std::optional<StuckDiagnostic> stuck;
};

/// Successors of `c` when `proc` executes `line`; empty when no rule applies.
GlobalStepResult global_step(const Implementation& impl, const Configuration& c, ProcessId proc,
                             const Line& line);

struct EnabledEvent {
  Event event;
  Configuration successor;
};

struct EnabledEvents {
  std::vector<EnabledEvent> events;
  std::vector<StuckDiagnostic> stuck;
};

/// Every (event, successor) with a nonempty global step, in canonical order:
/// by process, then invocations in (op, arg) order, then frame outcomes.
EnabledEvents enabled_events(const Implementation& impl, const Configuration& c);

struct WfResult {
  bool ok = true;
  std::size_t index = 0;  // configuration index of the first violation
  std::string reason;

  explicit operator bool() const { return ok; }
};

WfResult wf_run(const Implementation& impl, const Run<Configuration>& r);

struct ReplayResult {
  std::optional<Run<Configuration>> run;
  /// Length of the longest applicable prefix of the schedule.
  std::size_t applied = 0;
  std::optional<StuckDiagnostic> stuck;  // first diagnostic met at the blocking index
};

/// Rebuilds a run from its events. Where a step has several successors the
/// first one (in canonical order) that lets the rest of the schedule apply is
/// taken.
ReplayResult replay(const Implementation& impl, std::size_t process_count, const std::vector<Event>& events);

}  // namespace lintrack

#endif  // LINTRACK_RUNTIME_HPP_

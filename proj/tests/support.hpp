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

#ifndef LINTRACK_TESTS_SUPPORT_HPP_
#define LINTRACK_TESTS_SUPPORT_HPP_

#include <string>
#include <vector>

#include "lintrack/checker.hpp"
#include "lintrack/parser.hpp"

namespace lintrack::testing {

inline std::string case_path(const std::string& name) { return std::string(LINTRACK_CASES_DIR) + "/" + name; }

inline Implementation load_case(const std::string& name) { return load_implementation(case_path(name)); }

inline Val I(std::int64_t n) { return Val::integer(n); }
inline Val B(bool b) { return Val::boolean(b); }
inline Val U() { return Val::unit(); }
inline Val P(Val a, Val b) { return Val::pair(std::move(a), std::move(b)); }
inline ProcessId pid(std::uint32_t i) { return ProcessId{i}; }

inline Event inv(std::uint32_t p, std::string op, Val arg) { return Event{pid(p), Line::invoke(std::move(op), std::move(arg))}; }
inline Event mid(std::uint32_t p) { return Event{pid(p), Line::intermediate()}; }
inline Event res(std::uint32_t p, Val v) { return Event{pid(p), Line::response(std::move(v))}; }

inline AtomicConfiguration ac(Val sigma, std::vector<Status> statuses) { return {std::move(sigma), std::move(statuses)}; }
inline Status idle() { return Status::idle(); }
inline Status pending(std::string op, Val arg) { return Status::pending(std::move(op), std::move(arg)); }
inline Status lin(Val v) { return Status::linearized(std::move(v)); }

/// Replays `events`, requiring every event to apply.
inline Run<Configuration> run_of(const Implementation& impl, std::size_t procs, const std::vector<Event>& events) {
  auto r = replay(impl, procs, events);
  if (!r.run) throw std::runtime_error("schedule does not apply at event " + std::to_string(r.applied + 1));
  return *r.run;
}

/// The read/CAS register over {0, 1, 2}, large enough for three distinct writes.
inline Implementation rwcas_012() {
  return parse_implementation(R"(
object RW : register({0, 1, 2}, 0) uses { cell : rcas({0, 1, 2}, 0) }
proc Read(*) { x := invoke cell.Read(unit); return x; }
proc Write(*) { x := invoke cell.Read(unit); invoke cell.CAS(pair(x, Arg)); return unit; }
)");
}

}  // namespace lintrack::testing

#endif  // LINTRACK_TESTS_SUPPORT_HPP_

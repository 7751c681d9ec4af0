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
#include <stdexcept>

#include "lintrack/checker.hpp"

namespace lintrack {

namespace {

// Depth-first enumeration of atomic runs over a fixed invoke/response
// skeleton. At every point the search may either place an Intermediate for a
// pending process or consume the next skeleton event.
class SkeletonSearch {
 public:
  SkeletonSearch(const AtomicSpec& spec, const std::vector<Event>& skeleton)
      : type_(*spec.type), skeleton_(skeleton), run_(spec.initial_config()) {}

  template <typename Visit>
  void run(Visit&& visit) {
    walk(0, visit);
  }

 private:
  template <typename Visit>
  void walk(std::size_t next, Visit& visit) {
    const AtomicConfiguration cur = run_.final();
    if (next == skeleton_.size()) visit(run_);
    for (std::uint32_t p = 0; p < cur.statuses.size(); ++p) {
      if (cur.statuses[p].kind != Status::Kind::Pending) continue;
      Event e{ProcessId{p}, Line::intermediate()};
      for (auto& succ : atomic_step(type_, cur, e.proc, e.line)) {
        run_.push(e, std::move(succ));
        walk(next, visit);
        run_.steps.pop_back();
      }
    }
    if (next == skeleton_.size()) return;
    const Event& e = skeleton_[next];
    for (auto& succ : atomic_step(type_, cur, e.proc, e.line)) {
      run_.push(e, std::move(succ));
      walk(next + 1, visit);
      run_.steps.pop_back();
    }
  }

  const ObjectType& type_;
  const std::vector<Event>& skeleton_;
  Run<AtomicConfiguration> run_;
};

void require_skeleton(const AtomicSpec& spec, const std::vector<Event>& behavior) {
  for (const auto& e : behavior) {
    if (e.line.kind == Line::Kind::Intermediate)
      throw std::invalid_argument("oracle: behavior contains an intermediate event");
    if (e.proc.index >= spec.process_count) throw std::invalid_argument("oracle: process out of range");
  }
}

}  // namespace

std::vector<Linearization> oracle_linearizations(const AtomicSpec& spec, const std::vector<Event>& behavior) {
  require_skeleton(spec, behavior);
  std::vector<Linearization> out;
  SkeletonSearch(spec, behavior).run([&](const Run<AtomicConfiguration>& r) { out.push_back({r, r.final()}); });
  return out;
}

std::vector<Linearization> oracle_linearizations(const Implementation& impl, const Run<Configuration>& r) {
  if (auto wf = wf_run(impl, r); !wf) throw std::invalid_argument("oracle: run is not well formed: " + wf.reason);
  return oracle_linearizations(AtomicSpec::of(impl, r.initial.process_count()), behavior(r));
}

std::vector<AtomicConfiguration> oracle_final_configs(const AtomicSpec& spec, const std::vector<Event>& behavior) {
  require_skeleton(spec, behavior);
  std::vector<AtomicConfiguration> out;
  SkeletonSearch(spec, behavior).run([&](const Run<AtomicConfiguration>& r) { out.push_back(r.final()); });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace lintrack

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

struct Candidate {
  Run<AtomicConfiguration> run;
  /// Run position at which each Intermediate was placed, in witness order.
  std::vector<std::size_t> points;
};

// Walks provenance back from `member` and replays the collected steps forward.
Candidate rebuild(const ObjectType& type, const AtomicSpec& spec, const Run<Configuration>& r,
                  const Run<AugmentedConfiguration>& aug, AtomicConfiguration member) {
  std::vector<const std::vector<LinearizationStep>*> linearized(r.size());
  for (std::size_t i = r.size(); i > 0; --i) {
    const Provenance* prov = aug.config_at(i).tracker.provenance_of(member);
    if (!prov) throw std::logic_error("witness: missing provenance at event " + std::to_string(i));
    linearized[i - 1] = &prov->linearized;
    member = prov->parent;
  }
  if (member != spec.initial_config())
    throw std::logic_error("witness: provenance does not reach the initial configuration");

  Candidate c{Run<AtomicConfiguration>(spec.initial_config()), {}};
  for (std::size_t i = 0; i < r.size(); ++i) {
    const Event& e = r.steps[i].event;
    if (e.line.kind != Line::Kind::Intermediate) {
      auto next = atomic_step(type, c.run.final(), e.proc, e.line);
      if (next.size() != 1) throw std::logic_error("witness: skeleton event does not apply: " + e.to_string());
      c.run.push(e, std::move(next.front()));
    }
    for (const auto& lin : *linearized[i]) {
      c.run.push(Event{lin.proc, Line::intermediate()}, lin.after);
      c.points.push_back(i);
    }
  }
  return c;
}

}  // namespace

Run<AtomicConfiguration> extract_witness(const Implementation& impl, const Run<Configuration>& r) {
  const ObjectType& type = *impl.object_type;
  AtomicSpec spec = AtomicSpec::of(impl, r.initial.process_count());
  Run<AugmentedConfiguration> aug = embed(impl, r, true);
  if (aug.final().tracker.empty())
    throw NoLinearization("no linearization: tracker is empty after event " + std::to_string(aug.size()));

  // Among the final members, prefer the linearization whose points come earliest.
  std::optional<Candidate> best;
  for (const auto& member : aug.final().tracker) {
    Candidate c = rebuild(type, spec, r, aug, member);
    if (!best || c.points < best->points) best = std::move(c);
  }
  Run<AtomicConfiguration> out = std::move(best->run);

  if (auto wf = wf_atomic(spec, out); !wf) throw std::logic_error("witness is not a well-formed atomic run: " + wf.reason);
  if (behavior(out) != behavior(r)) throw std::logic_error("witness behavior differs from the run");
  return out;
}

}  // namespace lintrack

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

#include <map>

#include "lintrack/checker.hpp"

namespace lintrack {

namespace {

class Crosscheck {
 public:
  Crosscheck(const Implementation& impl, const ExploreParams& params)
      : impl_(impl),
        params_(params),
        spec_(AtomicSpec::of(impl, params.process_count)),
        run_(AugmentedConfiguration::initial(impl, params.process_count)) {}

  AdequacyReport run() {
    walk();
    report_.distinct_behaviors = oracle_cache_.size();
    return std::move(report_);
  }

 private:
  // Returns false once a discrepancy has been recorded.
  bool walk() {
    ++report_.runs_checked;
    const auto& cur = run_.final();
    auto events = run_.events();
    auto beh = behavior(events);
    auto it = oracle_cache_.find(beh);
    if (it == oracle_cache_.end()) it = oracle_cache_.emplace(beh, oracle_final_configs(spec_, beh)).first;
    if (cur.tracker.configs() != it->second) {
      report_.discrepancies.push_back({std::move(events), cur.tracker.configs(), it->second});
      return false;
    }
    if (run_.size() >= params_.max_events) return true;
    auto enabled = enabled_events(impl_, cur.base);
    MetaConfiguration from = cur.tracker;
    for (auto& e : enabled.events) {
      MetaConfiguration tracker = evolve(*impl_.object_type, e.event.proc, e.event.line, from);
      run_.push(e.event, AugmentedConfiguration{std::move(e.successor), std::move(tracker)});
      bool ok = walk();
      run_.steps.pop_back();
      if (!ok) return false;
    }
    return true;
  }

  const Implementation& impl_;
  const ExploreParams& params_;
  AtomicSpec spec_;
  Run<AugmentedConfiguration> run_;
  // Both sides of the comparison depend on the behavior only.
  std::map<std::vector<Event>, std::vector<AtomicConfiguration>> oracle_cache_;
  AdequacyReport report_;
};

}  // namespace

AdequacyReport adequacy_crosscheck(const Implementation& impl, const ExploreParams& params) {
  params.validate();
  return Crosscheck(impl, params).run();
}

}  // namespace lintrack

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

#include "lintrack/tracker.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_map>

namespace lintrack {

namespace {

struct AtomicHash {
  std::size_t operator()(const AtomicConfiguration& ac) const { return hash_value(ac); }
};

std::vector<AtomicConfiguration> sorted_unique(std::vector<AtomicConfiguration> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Successors of `ac` by linearizing one pending process.
template <typename F>
void for_each_linearization(const ObjectType& type, const AtomicConfiguration& ac, F&& visit) {
  for (std::uint32_t p = 0; p < ac.statuses.size(); ++p) {
    const Status& st = ac.statuses[p];
    if (st.kind != Status::Kind::Pending) continue;
    for (auto& t : type.delta(ac.sigma, ProcessId{p}, st.op, st.value)) {
      AtomicConfiguration next{std::move(t.next), ac.statuses};
      next.statuses[p] = Status::linearized(t.ret);
      visit(ProcessId{p}, t.ret, std::move(next));
    }
  }
}

// Breadth-first closure from `seeds`; each seed carries the previous-tracker
// member it came from. Each linearization removes a pending process, so the
// search is bounded by the process count.
MetaConfiguration close_under_pending(const ObjectType& type,
                                      std::vector<std::pair<AtomicConfiguration, AtomicConfiguration>> seeds,
                                      bool record_provenance) {
  std::unordered_map<AtomicConfiguration, Provenance, AtomicHash> reached;
  std::deque<AtomicConfiguration> work;
  std::sort(seeds.begin(), seeds.end());
  for (auto& [origin, seed] : seeds) {
    if (reached.count(seed)) continue;
    reached.emplace(seed, Provenance{origin, {}});
    work.push_back(seed);
  }
  while (!work.empty()) {
    AtomicConfiguration cur = std::move(work.front());
    work.pop_front();
    for_each_linearization(type, cur, [&](ProcessId p, const Val& res, AtomicConfiguration next) {
      if (reached.count(next)) return;
      Provenance prov;
      if (record_provenance) {
        prov = reached.at(cur);
        prov.linearized.push_back({p, res, next});
      }
      reached.emplace(next, std::move(prov));
      work.push_back(std::move(next));
    });
  }
  std::vector<AtomicConfiguration> members;
  members.reserve(reached.size());
  for (const auto& [ac, prov] : reached) members.push_back(ac);
  MetaConfiguration result(std::move(members));
  if (record_provenance) {
    MetaConfiguration::ProvenanceMap map;
    for (auto& [ac, prov] : reached) map.emplace(ac, std::move(prov));
    result.set_provenance(std::move(map));
  }
  return result;
}

}  // namespace

MetaConfiguration::MetaConfiguration(std::vector<AtomicConfiguration> configs)
    : configs_(sorted_unique(std::move(configs))) {}

MetaConfiguration MetaConfiguration::initial(const AtomicSpec& spec) {
  return MetaConfiguration({spec.initial_config()});
}

bool MetaConfiguration::contains(const AtomicConfiguration& ac) const {
  return std::binary_search(configs_.begin(), configs_.end(), ac);
}

bool MetaConfiguration::subset_of(const MetaConfiguration& other) const {
  return std::includes(other.configs_.begin(), other.configs_.end(), configs_.begin(), configs_.end());
}

const Provenance* MetaConfiguration::provenance_of(const AtomicConfiguration& ac) const {
  if (!provenance_) return nullptr;
  auto it = provenance_->find(ac);
  return it == provenance_->end() ? nullptr : &it->second;
}

void MetaConfiguration::set_provenance(ProvenanceMap map) {
  provenance_ = std::make_shared<const ProvenanceMap>(std::move(map));
}

std::size_t hash_value(const MetaConfiguration& m) {
  std::size_t seed = m.size();
  for (const auto& ac : m) hash_combine(seed, hash_value(ac));
  return seed;
}

std::vector<AtomicConfiguration> multistep(const ObjectType& type, const AtomicConfiguration& ac,
                                           std::span<const ProcessId> procs) {
  std::vector<AtomicConfiguration> frontier{ac};
  for (ProcessId p : procs) {
    std::vector<AtomicConfiguration> next;
    for (const auto& cur : frontier) {
      if (p.index >= cur.statuses.size()) continue;
      const Status& st = cur.statuses[p.index];
      if (st.kind != Status::Kind::Pending) continue;
      for (auto& t : type.delta(cur.sigma, p, st.op, st.value)) {
        AtomicConfiguration lin{std::move(t.next), cur.statuses};
        lin.statuses[p.index] = Status::linearized(std::move(t.ret));
        next.push_back(std::move(lin));
      }
    }
    frontier = sorted_unique(std::move(next));
  }
  return frontier;
}

MetaConfiguration linearize_pending(const ObjectType& type, const MetaConfiguration& c) {
  std::vector<std::pair<AtomicConfiguration, AtomicConfiguration>> seeds;
  for (const auto& ac : c) seeds.emplace_back(ac, ac);
  return close_under_pending(type, std::move(seeds), false);
}

MetaConfiguration evolve_inv(const MetaConfiguration& c, ProcessId proc, std::string_view op, const Val& arg) {
  std::vector<AtomicConfiguration> out;
  for (const auto& ac : c) {
    if (proc.index >= ac.statuses.size() || ac.statuses[proc.index].kind != Status::Kind::Idle) continue;
    AtomicConfiguration next = ac;
    next.statuses[proc.index] = Status::pending(std::string(op), arg);
    out.push_back(std::move(next));
  }
  return MetaConfiguration(std::move(out));
}

MetaConfiguration evolve_ret(const MetaConfiguration& c, ProcessId proc, const Val& v) {
  std::vector<AtomicConfiguration> out;
  for (const auto& ac : c) {
    if (proc.index >= ac.statuses.size()) continue;
    const Status& st = ac.statuses[proc.index];
    if (st.kind != Status::Kind::Linearized || st.value != v) continue;
    AtomicConfiguration next = ac;
    next.statuses[proc.index] = Status::idle();
    out.push_back(std::move(next));
  }
  return MetaConfiguration(std::move(out));
}

MetaConfiguration evolve(const ObjectType& type, ProcessId proc, const Line& line, const MetaConfiguration& c,
                         bool record_provenance) {
  // Pair every filtered member with its origin in `c`; both filters are
  // injective so the origin is unique.
  std::vector<std::pair<AtomicConfiguration, AtomicConfiguration>> seeds;
  for (const auto& ac : c) {
    if (proc.index >= ac.statuses.size()) continue;
    const Status& st = ac.statuses[proc.index];
    AtomicConfiguration next = ac;
    switch (line.kind) {
      case Line::Kind::Invoke:
        if (st.kind != Status::Kind::Idle) continue;
        next.statuses[proc.index] = Status::pending(line.op, line.value);
        break;
      case Line::Kind::Intermediate:
        break;
      case Line::Kind::Response:
        if (st.kind != Status::Kind::Linearized || st.value != line.value) continue;
        next.statuses[proc.index] = Status::idle();
        break;
    }
    seeds.emplace_back(ac, std::move(next));
  }
  return close_under_pending(type, std::move(seeds), record_provenance);
}

AugmentedConfiguration AugmentedConfiguration::initial(const Implementation& impl, std::size_t process_count) {
  return {Configuration::initial(impl, process_count),
          MetaConfiguration::initial(AtomicSpec::of(impl, process_count))};
}

std::size_t hash_value(const AugmentedConfiguration& c) {
  std::size_t seed = hash_value(c.base);
  hash_combine(seed, hash_value(c.tracker));
  return seed;
}

std::vector<AugmentedConfiguration> augmented_step(const Implementation& impl, const AugmentedConfiguration& c,
                                                   ProcessId proc, const Line& line) {
  auto step = global_step(impl, c.base, proc, line);
  std::vector<AugmentedConfiguration> out;
  if (step.successors.empty()) return out;
  MetaConfiguration tracker = evolve(*impl.object_type, proc, line, c.tracker);
  for (auto& base : step.successors) out.push_back({std::move(base), tracker});
  return out;
}

WfResult wf_aug(const Implementation& impl, const Run<AugmentedConfiguration>& r) {
  if (r.initial != AugmentedConfiguration::initial(impl, r.initial.base.process_count()))
    return {false, 0, "initial augmented configuration is not initial"};
  for (std::size_t i = 0; i < r.steps.size(); ++i) {
    const auto& step = r.steps[i];
    auto succ = augmented_step(impl, r.config_at(i), step.event.proc, step.event.line);
    if (std::find(succ.begin(), succ.end(), step.config) == succ.end())
      return {false, i + 1, "step " + step.event.to_string() + " does not follow the augmented dynamics"};
  }
  return {};
}

Run<AugmentedConfiguration> embed(const Implementation& impl, const Run<Configuration>& r, bool record_provenance) {
  if (auto wf = wf_run(impl, r); !wf) throw std::invalid_argument("embed: run is not well formed: " + wf.reason);
  const ObjectType& type = *impl.object_type;
  AtomicSpec spec = AtomicSpec::of(impl, r.initial.process_count());
  Run<AugmentedConfiguration> out(AugmentedConfiguration{r.initial, MetaConfiguration::initial(spec)});
  for (const auto& step : r.steps) {
    MetaConfiguration tracker = evolve(type, step.event.proc, step.event.line, out.final().tracker, record_provenance);
    out.push(step.event, AugmentedConfiguration{step.config, std::move(tracker)});
  }
  return out;
}

Run<Configuration> project(const Implementation& impl, const Run<AugmentedConfiguration>& r) {
  if (auto wf = wf_aug(impl, r); !wf) throw std::invalid_argument("project: run is not well formed: " + wf.reason);
  Run<Configuration> out(r.initial.base);
  for (const auto& step : r.steps) out.push(step.event, step.config.base);
  return out;
}

}  // namespace lintrack

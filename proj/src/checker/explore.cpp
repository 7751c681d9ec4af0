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
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "lintrack/checker.hpp"

namespace lintrack {

namespace {

using Clock = std::chrono::steady_clock;
constexpr std::size_t kMaxStuckReports = 16;

class StuckLog {
 public:
  void add(const StuckDiagnostic& d, const std::vector<Event>& trace) {
    if (reports_.size() >= kMaxStuckReports) return;
    for (const auto& r : reports_)
      if (r.diagnostic.op == d.op && r.diagnostic.pc == d.pc && r.diagnostic.kind == d.kind &&
          r.diagnostic.message == d.message)
        return;
    reports_.push_back({d, trace});
  }
  std::vector<StuckReport> take() { return std::move(reports_); }
  bool empty() const { return reports_.empty(); }

 private:
  std::vector<StuckReport> reports_;
};

// Trackers only depend on the event, so successors sharing an event share
// one evolve call.
class EvolveCache {
 public:
  EvolveCache(const ObjectType& type, const MetaConfiguration& from) : type_(type), from_(from) {}
  const MetaConfiguration& get(const Event& e) {
    for (const auto& [ev, tracker] : entries_)
      if (ev == e) return tracker;
    entries_.emplace_back(e, evolve(type_, e.proc, e.line, from_));
    return entries_.back().second;
  }

 private:
  const ObjectType& type_;
  const MetaConfiguration& from_;
  std::vector<std::pair<Event, MetaConfiguration>> entries_;
};

Verdict finish(Verdict v, StuckLog& stuck, bool over_budget, Clock::time_point start) {
  v.stats.elapsed = Clock::now() - start;
  v.stuck = stuck.take();
  if (v.kind == Verdict::Kind::Counterexample) return v;
  if (over_budget)
    v.kind = Verdict::Kind::ResourceLimit;
  else if (!v.stuck.empty())
    v.kind = Verdict::Kind::Stuck;
  return v;
}

class DepthFirst {
 public:
  DepthFirst(const Implementation& impl, const ExploreParams& params)
      : impl_(impl), params_(params), type_(*impl.object_type) {}

  Verdict run() {
    auto start = Clock::now();
    Verdict v;
    v.stats.engine = "dfs";
    // explore() holds references into the stack across recursive calls.
    stack_.reserve(params_.max_events + 1);
    stack_.push_back(AugmentedConfiguration::initial(impl_, params_.process_count));
    if (params_.dedup) visited_.emplace(stack_.back(), 0);
    if (explore(v.stats)) {
      v.kind = Verdict::Kind::Counterexample;
      Run<AugmentedConfiguration> run(stack_.front());
      for (std::size_t i = 0; i < path_.size(); ++i) run.push(path_[i], stack_[i + 1]);
      v.failing_index = path_.size();
      v.run = std::move(run);
    }
    return finish(std::move(v), stuck_, over_budget_, start);
  }

 private:
  bool explore(ExploreStats& stats) {
    const AugmentedConfiguration& cur = stack_.back();
    ++stats.explored_states;
    stats.max_tracker_size = std::max(stats.max_tracker_size, cur.tracker.size());
    if (params_.state_budget && stats.explored_states > params_.state_budget) {
      over_budget_ = true;
      return false;
    }
    if (path_.size() >= params_.max_events) {
      ++stats.explored_runs;
      return false;
    }
    auto enabled = enabled_events(impl_, cur.base);
    for (const auto& d : enabled.stuck) stuck_.add(d, path_);
    if (enabled.events.empty()) {
      ++stats.explored_runs;
      return false;
    }
    EvolveCache cache(type_, cur.tracker);
    std::size_t depth = path_.size() + 1;
    for (auto& e : enabled.events) {
      AugmentedConfiguration next{std::move(e.successor), cache.get(e.event)};
      bool failed = next.tracker.empty();
      if (!failed && params_.dedup) {
        auto [it, inserted] = visited_.try_emplace(next, depth);
        if (!inserted) {
          if (it->second <= depth) continue;
          it->second = depth;
        }
      }
      path_.push_back(e.event);
      stack_.push_back(std::move(next));
      if (failed) return true;
      if (explore(stats)) return true;
      if (over_budget_) return false;
      path_.pop_back();
      stack_.pop_back();
    }
    return false;
  }

  const Implementation& impl_;
  const ExploreParams& params_;
  const ObjectType& type_;
  std::vector<AugmentedConfiguration> stack_;
  std::vector<Event> path_;
  std::unordered_map<AugmentedConfiguration, std::size_t, AugmentedHash> visited_;
  StuckLog stuck_;
  bool over_budget_ = false;
};

// Level-synchronous search. Each level is expanded in parallel and merged in
// frontier order, so the result does not depend on the worker count.
class BreadthFirst {
 public:
  BreadthFirst(const Implementation& impl, const ExploreParams& params)
      : impl_(impl), params_(params), type_(*impl.object_type) {}

  Verdict run() {
    auto start = Clock::now();
    Verdict v;
    v.stats.engine = "bfs";
    std::vector<Node> frontier;
    auto root = std::make_shared<const Trail>(Trail{nullptr, AugmentedConfiguration::initial(impl_, params_.process_count), {}});
    if (params_.dedup) visited_.insert(root->cfg);
    frontier.push_back(Node{root, {}});

    for (std::size_t depth = 0;; ++depth) {
      v.stats.explored_states += frontier.size();
      for (const auto& n : frontier)
        v.stats.max_tracker_size = std::max(v.stats.max_tracker_size, n.trail->cfg.tracker.size());
      if (params_.state_budget && v.stats.explored_states > params_.state_budget) {
        over_budget_ = true;
        break;
      }
      if (depth >= params_.max_events || frontier.empty()) {
        v.stats.explored_runs += frontier.size();
        break;
      }
      auto expansions = expand(frontier);

      const Expansion* best_parent = nullptr;
      const Child* best_child = nullptr;
      const Node* best_node = nullptr;
      for (std::size_t i = 0; i < frontier.size(); ++i) {
        for (const auto& d : expansions[i].stuck) stuck_.add(d, frontier[i].path);
        for (const auto& c : expansions[i].children) {
          if (!c.cfg.tracker.empty()) continue;
          // Frontier and children are in path order: the first hit is minimal.
          if (!best_child) {
            best_parent = &expansions[i];
            best_child = &c;
            best_node = &frontier[i];
          }
        }
      }
      if (best_child) {
        (void)best_parent;
        v.kind = Verdict::Kind::Counterexample;
        std::vector<const Trail*> chain;
        for (const Trail* t = best_node->trail.get(); t; t = t->parent.get()) chain.push_back(t);
        std::reverse(chain.begin(), chain.end());
        Run<AugmentedConfiguration> run(chain.front()->cfg);
        for (std::size_t k = 1; k < chain.size(); ++k) run.push(chain[k]->event, chain[k]->cfg);
        run.push(best_child->event, best_child->cfg);
        v.failing_index = run.size();
        v.run = std::move(run);
        break;
      }

      std::vector<Node> next;
      for (std::size_t i = 0; i < frontier.size(); ++i) {
        if (expansions[i].children.empty()) ++v.stats.explored_runs;
        for (auto& c : expansions[i].children) {
          if (params_.dedup && !visited_.insert(c.cfg).second) continue;
          std::vector<Event> path = frontier[i].path;
          path.push_back(c.event);
          next.push_back(Node{std::make_shared<const Trail>(Trail{frontier[i].trail, std::move(c.cfg), c.event}),
                              std::move(path)});
        }
      }
      frontier = std::move(next);
    }
    return finish(std::move(v), stuck_, over_budget_, start);
  }

 private:
  struct Trail {
    std::shared_ptr<const Trail> parent;
    AugmentedConfiguration cfg;
    Event event;  // event leading here; unused at the root
  };
  struct Node {
    std::shared_ptr<const Trail> trail;
    std::vector<Event> path;
  };
  struct Child {
    Event event;
    AugmentedConfiguration cfg;
  };
  struct Expansion {
    std::vector<Child> children;
    std::vector<StuckDiagnostic> stuck;
  };

  Expansion expand_one(const Node& n) const {
    Expansion out;
    auto enabled = enabled_events(impl_, n.trail->cfg.base);
    out.stuck = std::move(enabled.stuck);
    EvolveCache cache(type_, n.trail->cfg.tracker);
    for (auto& e : enabled.events)
      out.children.push_back({e.event, AugmentedConfiguration{std::move(e.successor), cache.get(e.event)}});
    return out;
  }

  std::vector<Expansion> expand(const std::vector<Node>& frontier) const {
    std::vector<Expansion> out(frontier.size());
    std::size_t jobs = std::max<std::size_t>(1, std::min(params_.jobs, frontier.size()));
    if (jobs == 1) {
      for (std::size_t i = 0; i < frontier.size(); ++i) out[i] = expand_one(frontier[i]);
      return out;
    }
    std::vector<std::thread> workers;
    for (std::size_t w = 0; w < jobs; ++w) {
      workers.emplace_back([&, w] {
        for (std::size_t i = w; i < frontier.size(); i += jobs) out[i] = expand_one(frontier[i]);
      });
    }
    for (auto& t : workers) t.join();
    return out;
  }

  const Implementation& impl_;
  const ExploreParams& params_;
  const ObjectType& type_;
  std::unordered_set<AugmentedConfiguration, AugmentedHash> visited_;
  StuckLog stuck_;
  bool over_budget_ = false;
};

}  // namespace

void ExploreParams::validate() const {
  if (process_count < 1) throw std::invalid_argument("process count must be at least 1");
  if (jobs < 1) throw std::invalid_argument("jobs must be at least 1");
  if (mode == Mode::Random && trials < 1) throw std::invalid_argument("random mode needs at least one trial");
}

std::string_view verdict_name(Verdict::Kind kind) {
  switch (kind) {
    case Verdict::Kind::LinearizableUpToBound:
      return "linearizable_up_to_bound";
    case Verdict::Kind::Counterexample:
      return "counterexample";
    case Verdict::Kind::Stuck:
      return "stuck";
    case Verdict::Kind::ResourceLimit:
      return "resource_limit";
  }
  return "?";
}

Verdict check(const Implementation& impl, const ExploreParams& params) {
  params.validate();
  if (params.mode == ExploreParams::Mode::Random) return fuzz(impl, params);
  if (params.minimize || params.jobs > 1) return BreadthFirst(impl, params).run();
  return DepthFirst(impl, params).run();
}

Verdict fuzz(const Implementation& impl, const ExploreParams& params) {
  params.validate();
  auto start = Clock::now();
  const ObjectType& type = *impl.object_type;
  std::mt19937_64 rng(params.seed);
  Verdict v;
  v.stats.engine = "random";
  StuckLog stuck;
  bool over_budget = false;
  for (std::size_t trial = 0; trial < params.trials && !over_budget; ++trial) {
    Run<AugmentedConfiguration> run(AugmentedConfiguration::initial(impl, params.process_count));
    ++v.stats.explored_runs;
    for (std::size_t step = 0;; ++step) {
      const auto& cur = run.final();
      ++v.stats.explored_states;
      v.stats.max_tracker_size = std::max(v.stats.max_tracker_size, cur.tracker.size());
      if (params.state_budget && v.stats.explored_states > params.state_budget) {
        over_budget = true;
        break;
      }
      if (step >= params.max_events) break;
      auto enabled = enabled_events(impl, cur.base);
      for (const auto& d : enabled.stuck) stuck.add(d, run.events());
      if (enabled.events.empty()) break;
      std::uniform_int_distribution<std::size_t> pick(0, enabled.events.size() - 1);
      auto& chosen = enabled.events[pick(rng)];
      MetaConfiguration tracker = evolve(type, chosen.event.proc, chosen.event.line, cur.tracker);
      bool failed = tracker.empty();
      run.push(chosen.event, AugmentedConfiguration{std::move(chosen.successor), std::move(tracker)});
      if (failed) {
        v.kind = Verdict::Kind::Counterexample;
        v.failing_index = run.size();
        v.run = std::move(run);
        return finish(std::move(v), stuck, false, start);
      }
    }
  }
  return finish(std::move(v), stuck, over_budget, start);
}

Run<Configuration> sample_run(const Implementation& impl, std::size_t process_count, std::size_t length,
                              std::mt19937_64& rng) {
  Run<Configuration> run(Configuration::initial(impl, process_count));
  for (std::size_t step = 0; step < length; ++step) {
    auto enabled = enabled_events(impl, run.final());
    if (enabled.events.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, enabled.events.size() - 1);
    auto& chosen = enabled.events[pick(rng)];
    run.push(chosen.event, std::move(chosen.successor));
  }
  return run;
}

}  // namespace lintrack

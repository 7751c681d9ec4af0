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

#ifndef LINTRACK_CHECKER_HPP_
#define LINTRACK_CHECKER_HPP_

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "lintrack/atomic.hpp"
#include "lintrack/runtime.hpp"
#include "lintrack/tracker.hpp"

namespace lintrack {

struct ExploreParams {
  enum class Mode { Exhaustive, Random };

  std::size_t max_events = 8;
  std::size_t process_count = 2;
  bool dedup = true;
  Mode mode = Mode::Exhaustive;
  std::uint64_t seed = 0;
  std::size_t trials = 1000;
  bool record_provenance = false;
  /// Worker threads; more than one selects the level-synchronous search.
  std::size_t jobs = 1;
  /// Search breadth-first for a shortest counterexample.
  bool minimize = false;
  /// Abort once this many configurations have been expanded (0 = unlimited).
  std::size_t state_budget = 20'000'000;

  void validate() const;
};

struct ExploreStats {
  std::size_t explored_states = 0;
  std::size_t explored_runs = 0;
  std::size_t max_tracker_size = 0;
  std::chrono::nanoseconds elapsed{0};
  std::string engine;  // "dfs", "bfs" or "random"

  friend bool operator==(const ExploreStats& a, const ExploreStats& b) {
    return a.explored_states == b.explored_states && a.explored_runs == b.explored_runs &&
           a.max_tracker_size == b.max_tracker_size && a.engine == b.engine;
  }
};

/// A stuck process together with a run that reaches it.
struct StuckReport {
  StuckDiagnostic diagnostic;
  std::vector<Event> trace;
};

struct Verdict {
  enum class Kind { LinearizableUpToBound, Counterexample, Stuck, ResourceLimit };

  Kind kind = Kind::LinearizableUpToBound;
  ExploreStats stats;
  /// Counterexample: the augmented run whose final tracker is empty.
  std::optional<Run<AugmentedConfiguration>> run;
  std::size_t failing_index = 0;
  std::vector<StuckReport> stuck;

  bool linearizable() const { return kind == Kind::LinearizableUpToBound; }
};

std::string_view verdict_name(Verdict::Kind kind);

/// Bounded exhaustive search over augmented runs; stops at the first event
/// whose tracker becomes empty.
Verdict check(const Implementation& impl, const ExploreParams& params);

/// Random schedules of the same step relation; reproducible for a fixed seed.
Verdict fuzz(const Implementation& impl, const ExploreParams& params);

/// Uniformly random well-formed run of at most `length` events.
Run<Configuration> sample_run(const Implementation& impl, std::size_t process_count, std::size_t length,
                              std::mt19937_64& rng);

struct Linearization {
  Run<AtomicConfiguration> run;
  AtomicConfiguration final;
};

/// All well-formed atomic runs whose behavior equals `behavior`, found by
/// placing exactly one Intermediate per operation into the invoke/response
/// skeleton. Operations still pending at the end may or may not linearize.
std::vector<Linearization> oracle_linearizations(const AtomicSpec& spec, const std::vector<Event>& behavior);
std::vector<Linearization> oracle_linearizations(const Implementation& impl, const Run<Configuration>& r);

/// Final configurations of oracle_linearizations, sorted and deduplicated.
std::vector<AtomicConfiguration> oracle_final_configs(const AtomicSpec& spec, const std::vector<Event>& behavior);

struct Discrepancy {
  std::vector<Event> trace;
  std::vector<AtomicConfiguration> tracker;
  std::vector<AtomicConfiguration> oracle;
};

struct AdequacyReport {
  std::size_t runs_checked = 0;
  std::size_t distinct_behaviors = 0;
  std::vector<Discrepancy> discrepancies;

  bool ok() const { return discrepancies.empty(); }
};

/// Compares the tracker with the oracle on every run prefix of at most
/// params.max_events events. Stops at the first discrepancy, which is the
/// shortest one on its path.
AdequacyReport adequacy_crosscheck(const Implementation& impl, const ExploreParams& params);

class NoLinearization : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A linearization of `r` rebuilt from tracker provenance. Among the final
/// tracker members, the one whose linearization points come earliest wins
/// (positions compared lexicographically). Throws
/// NoLinearization when the final tracker is empty and std::invalid_argument
/// when `r` is not well formed.
Run<AtomicConfiguration> extract_witness(const Implementation& impl, const Run<Configuration>& r);

}  // namespace lintrack

#endif  // LINTRACK_CHECKER_HPP_

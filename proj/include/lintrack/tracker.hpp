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

#ifndef LINTRACK_TRACKER_HPP_
#define LINTRACK_TRACKER_HPP_

#include <map>
#include <memory>
#include <span>
#include <vector>

#include "lintrack/atomic.hpp"
#include "lintrack/runtime.hpp"

namespace lintrack {

/// One linearization performed while closing a tracker under pending
/// operations, together with the configuration it produced.
struct LinearizationStep {
  ProcessId proc;
  Val result;
  AtomicConfiguration after;
  friend bool operator==(const LinearizationStep&, const LinearizationStep&) = default;
};

/// How a tracker member arose from the previous tracker.
struct Provenance {
  AtomicConfiguration parent;
  std::vector<LinearizationStep> linearized;
};

/// The tracker: a deduplicated, canonically ordered set of atomic
/// configurations, each the final configuration of some linearization.
///
/// Provenance is optional ghost data; it never takes part in comparison.
class MetaConfiguration {
 public:
  using ProvenanceMap = std::map<AtomicConfiguration, Provenance>;

  MetaConfiguration() = default;
  explicit MetaConfiguration(std::vector<AtomicConfiguration> configs);
  static MetaConfiguration initial(const AtomicSpec& spec);

  const std::vector<AtomicConfiguration>& configs() const { return configs_; }
  bool empty() const { return configs_.empty(); }
  std::size_t size() const { return configs_.size(); }
  bool contains(const AtomicConfiguration& ac) const;
  /// True when every member of *this is a member of `other`.
  bool subset_of(const MetaConfiguration& other) const;
  auto begin() const { return configs_.begin(); }
  auto end() const { return configs_.end(); }

  const Provenance* provenance_of(const AtomicConfiguration& ac) const;
  bool has_provenance() const { return provenance_ != nullptr; }
  void set_provenance(ProvenanceMap map);
  MetaConfiguration without_provenance() const { return MetaConfiguration(configs_, {}); }

  friend bool operator==(const MetaConfiguration& a, const MetaConfiguration& b) { return a.configs_ == b.configs_; }
  friend std::strong_ordering operator<=>(const MetaConfiguration& a, const MetaConfiguration& b) {
    return a.configs_ <=> b.configs_;
  }

 private:
  MetaConfiguration(std::vector<AtomicConfiguration> sorted, std::shared_ptr<const ProvenanceMap> prov)
      : configs_(std::move(sorted)), provenance_(std::move(prov)) {}

  std::vector<AtomicConfiguration> configs_;
  std::shared_ptr<const ProvenanceMap> provenance_;
};

std::size_t hash_value(const MetaConfiguration& m);

/// Every configuration reached from `ac` by linearizing `procs` in order.
std::vector<AtomicConfiguration> multistep(const ObjectType& type, const AtomicConfiguration& ac,
                                           std::span<const ProcessId> procs);

/// Closure of `c` under linearizing any sequence of pending processes.
MetaConfiguration linearize_pending(const ObjectType& type, const MetaConfiguration& c);

MetaConfiguration evolve_inv(const MetaConfiguration& c, ProcessId proc, std::string_view op, const Val& arg);
MetaConfiguration evolve_ret(const MetaConfiguration& c, ProcessId proc, const Val& v);

/// Tracker after `proc` executes `line`. With `record_provenance`, each
/// member remembers its parent in `c` and the linearizations that followed.
MetaConfiguration evolve(const ObjectType& type, ProcessId proc, const Line& line, const MetaConfiguration& c,
                         bool record_provenance = false);

struct AugmentedConfiguration {
  Configuration base;
  MetaConfiguration tracker;

  static AugmentedConfiguration initial(const Implementation& impl, std::size_t process_count);

  friend bool operator==(const AugmentedConfiguration&, const AugmentedConfiguration&) = default;
  friend auto operator<=>(const AugmentedConfiguration&, const AugmentedConfiguration&) = default;
};

std::size_t hash_value(const AugmentedConfiguration& c);

struct AugmentedHash {
  std::size_t operator()(const AugmentedConfiguration& c) const { return hash_value(c); }
};

std::vector<AugmentedConfiguration> augmented_step(const Implementation& impl, const AugmentedConfiguration& c,
                                                   ProcessId proc, const Line& line);

WfResult wf_aug(const Implementation& impl, const Run<AugmentedConfiguration>& r);

/// Replays the tracker along a well-formed run. Throws std::invalid_argument
/// on runs that are not well formed.
Run<AugmentedConfiguration> embed(const Implementation& impl, const Run<Configuration>& r,
                                  bool record_provenance = false);

/// Drops the trackers of a well-formed augmented run. Throws
/// std::invalid_argument otherwise.
Run<Configuration> project(const Implementation& impl, const Run<AugmentedConfiguration>& r);

}  // namespace lintrack

#endif  // LINTRACK_TRACKER_HPP_

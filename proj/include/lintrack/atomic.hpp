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

#ifndef LINTRACK_ATOMIC_HPP_
#define LINTRACK_ATOMIC_HPP_

#include <compare>
#include <string>
#include <vector>

#include "lintrack/ast.hpp"
#include "lintrack/object_type.hpp"
#include "lintrack/runtime.hpp"

namespace lintrack {

struct Status {
  enum class Kind : std::uint8_t { Idle = 0, Pending = 1, Linearized = 2 };

  Kind kind = Kind::Idle;
  std::string op;  // Pending
  Val value;       // Pending argument or Linearized result

  static Status idle() { return {}; }
  static Status pending(std::string op, Val arg) { return {Kind::Pending, std::move(op), std::move(arg)}; }
  static Status linearized(Val res) { return {Kind::Linearized, {}, std::move(res)}; }

  std::string to_string() const;
  friend auto operator<=>(const Status&, const Status&) = default;
  friend bool operator==(const Status&, const Status&) = default;
};

/// Abstract object state plus a status per process.
struct AtomicConfiguration {
  Val sigma;
  std::vector<Status> statuses;

  static AtomicConfiguration initial(const Val& sigma0, std::size_t process_count);
  std::string to_string() const;

  friend auto operator<=>(const AtomicConfiguration&, const AtomicConfiguration&) = default;
  friend bool operator==(const AtomicConfiguration&, const AtomicConfiguration&) = default;
};

std::size_t hash_value(const AtomicConfiguration& ac);

/// The atomic object: a type, its initial state and the process count.
struct AtomicSpec {
  ObjectTypePtr type;
  Val initial;
  std::size_t process_count = 1;

  static AtomicSpec of(const Implementation& impl, std::size_t process_count) {
    return {impl.object_type, impl.initial_state, process_count};
  }
  AtomicConfiguration initial_config() const { return AtomicConfiguration::initial(initial, process_count); }
};

/// Successors of `ac` in an atomic run when `proc` executes `line`.
std::vector<AtomicConfiguration> atomic_step(const ObjectType& type, const AtomicConfiguration& ac,
                                             ProcessId proc, const Line& line);

WfResult wf_atomic(const AtomicSpec& spec, const Run<AtomicConfiguration>& r);

/// The two-line implementation of `spec` over itself: each operation is
/// `r := invoke self.op(Arg); return r;`.
Implementation atomic_implementation(const BuiltinSpec& spec, std::string name = "Atomic");
inline Implementation atomic_implementation(const ObjectType& type, std::string name = "Atomic") {
  return atomic_implementation(type.spec(), std::move(name));
}

}  // namespace lintrack

#endif  // LINTRACK_ATOMIC_HPP_

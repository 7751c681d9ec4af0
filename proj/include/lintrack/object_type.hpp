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

#ifndef LINTRACK_OBJECT_TYPE_HPP_
#define LINTRACK_OBJECT_TYPE_HPP_

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lintrack/val.hpp"

namespace lintrack {

struct ProcessId {
  std::uint32_t index = 0;

  friend auto operator<=>(const ProcessId&, const ProcessId&) = default;
};

/// Parameters of a built-in object type, as written in the DSL.
struct BuiltinSpec {
  enum class Kind { Register, Rcas, Queue };

  Kind kind = Kind::Register;
  std::vector<Val> domain;
  Val init;                   // register / rcas
  std::size_t capacity = 0;   // queue

  std::string to_string() const;
  friend bool operator==(const BuiltinSpec&, const BuiltinSpec&) = default;
};

std::string_view builtin_kind_name(BuiltinSpec::Kind kind);
std::optional<BuiltinSpec::Kind> builtin_kind_from_name(std::string_view name);

struct Transition {
  Val next;
  Val ret;

  friend auto operator<=>(const Transition&, const Transition&) = default;
};

/// An object type given as an explicit, set-valued transition function.
///
/// An empty successor set means the operation cannot fire in that state.
class ObjectType {
 public:
  using Delta = std::function<std::vector<Transition>(const Val& state, ProcessId proc,
                                                      std::string_view op, const Val& arg)>;

  ObjectType(std::string name, std::vector<std::string> ops,
             std::map<std::string, std::vector<Val>, std::less<>> arg_domain,
             std::function<bool(const Val&)> state_domain, std::vector<Val> states, Delta delta,
             BuiltinSpec spec);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& ops() const { return ops_; }
  bool has_op(std::string_view op) const;
  const std::vector<Val>& arg_domain(std::string_view op) const;
  bool in_state_domain(const Val& s) const { return state_domain_(s); }
  /// Finite enumeration of the state domain.
  const std::vector<Val>& states() const { return states_; }
  const BuiltinSpec& spec() const { return spec_; }

  std::vector<Transition> delta(const Val& state, ProcessId proc, std::string_view op,
                                const Val& arg) const;

 private:
  std::string name_;
  std::vector<std::string> ops_;
  std::map<std::string, std::vector<Val>, std::less<>> arg_domain_;
  std::function<bool(const Val&)> state_domain_;
  std::vector<Val> states_;
  Delta delta_;
  BuiltinSpec spec_;
};

using ObjectTypePtr = std::shared_ptr<const ObjectType>;

class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Read/Write cell over `domain`.
ObjectTypePtr builtin_register(std::vector<Val> domain, const Val& init);
/// Read/CAS cell over `domain`; CAS takes Pair(expected, new) and returns Bool.
ObjectTypePtr builtin_rcas(std::vector<Val> domain, const Val& init);
/// Bounded FIFO queue; Deq on empty and Enq when full have no transition.
ObjectTypePtr builtin_queue(std::vector<Val> domain, std::size_t capacity);

struct Instance {
  ObjectTypePtr type;
  Val initial;
};

/// Builds the type described by `spec` and its initial state. Throws SpecError.
Instance instantiate(const BuiltinSpec& spec);

/// Named objects with their types and initial states, in declaration order.
class ObjectRegistry {
 public:
  struct Entry {
    std::string name;
    ObjectTypePtr type;
    Val initial;
  };

  void add(std::string name, ObjectTypePtr type, Val initial);
  std::optional<std::size_t> index_of(std::string_view name) const;
  const Entry& at(std::size_t i) const { return entries_.at(i); }
  std::size_t size() const { return entries_.size(); }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

 private:
  std::vector<Entry> entries_;
};

}  // namespace lintrack

#endif  // LINTRACK_OBJECT_TYPE_HPP_

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

#include "lintrack/object_type.hpp"

#include <algorithm>
#include <sstream>

namespace lintrack {

namespace {

std::vector<Val> normalize(std::vector<Val> domain) {
  std::sort(domain.begin(), domain.end());
  domain.erase(std::unique(domain.begin(), domain.end()), domain.end());
  if (domain.empty()) throw SpecError("value domain must be nonempty");
  return domain;
}

bool member(const std::vector<Val>& sorted, const Val& v) {
  return std::binary_search(sorted.begin(), sorted.end(), v);
}

std::string render_domain(const std::vector<Val>& domain) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < domain.size(); ++i) os << (i ? ", " : "") << domain[i];
  os << '}';
  return os.str();
}

}  // namespace

std::string_view builtin_kind_name(BuiltinSpec::Kind kind) {
  switch (kind) {
    case BuiltinSpec::Kind::Register:
      return "register";
    case BuiltinSpec::Kind::Rcas:
      return "rcas";
    case BuiltinSpec::Kind::Queue:
      return "queue";
  }
  return "?";
}

std::optional<BuiltinSpec::Kind> builtin_kind_from_name(std::string_view name) {
  if (name == "register") return BuiltinSpec::Kind::Register;
  if (name == "rcas") return BuiltinSpec::Kind::Rcas;
  if (name == "queue") return BuiltinSpec::Kind::Queue;
  return std::nullopt;
}

std::string BuiltinSpec::to_string() const {
  std::ostringstream os;
  os << builtin_kind_name(kind) << '(' << render_domain(domain) << ", ";
  if (kind == Kind::Queue)
    os << capacity;
  else
    os << init;
  os << ')';
  return os.str();
}

ObjectType::ObjectType(std::string name, std::vector<std::string> ops,
                       std::map<std::string, std::vector<Val>, std::less<>> arg_domain,
                       std::function<bool(const Val&)> state_domain, std::vector<Val> states,
                       Delta delta, BuiltinSpec spec)
    : name_(std::move(name)),
      ops_(std::move(ops)),
      arg_domain_(std::move(arg_domain)),
      state_domain_(std::move(state_domain)),
      states_(std::move(states)),
      delta_(std::move(delta)),
      spec_(std::move(spec)) {}

bool ObjectType::has_op(std::string_view op) const {
  return std::find(ops_.begin(), ops_.end(), op) != ops_.end();
}

const std::vector<Val>& ObjectType::arg_domain(std::string_view op) const {
  auto it = arg_domain_.find(op);
  if (it == arg_domain_.end())
    throw std::out_of_range("object type " + name_ + " has no operation " + std::string(op));
  return it->second;
}

std::vector<Transition> ObjectType::delta(const Val& state, ProcessId proc, std::string_view op,
                                          const Val& arg) const {
  return delta_(state, proc, op, arg);
}

ObjectTypePtr builtin_register(std::vector<Val> domain, const Val& init) {
  domain = normalize(std::move(domain));
  if (!member(domain, init)) throw SpecError("register initial value " + init.to_string() + " is outside its domain");
  BuiltinSpec spec{BuiltinSpec::Kind::Register, domain, init, 0};
  auto in_domain = [domain](const Val& s) { return member(domain, s); };
  auto delta = [domain](const Val& s, ProcessId, std::string_view op,
                        const Val& arg) -> std::vector<Transition> {
    if (op == "Read" && arg.is_unit()) return {{s, s}};
    if (op == "Write" && member(domain, arg)) return {{arg, Val::unit()}};
    return {};
  };
  return std::make_shared<const ObjectType>(
      "register", std::vector<std::string>{"Read", "Write"},
      std::map<std::string, std::vector<Val>, std::less<>>{{"Read", {Val::unit()}}, {"Write", domain}},
      in_domain, domain, delta, spec);
}

ObjectTypePtr builtin_rcas(std::vector<Val> domain, const Val& init) {
  domain = normalize(std::move(domain));
  if (!member(domain, init)) throw SpecError("rcas initial value " + init.to_string() + " is outside its domain");
  BuiltinSpec spec{BuiltinSpec::Kind::Rcas, domain, init, 0};
  std::vector<Val> cas_args;
  for (const auto& cur : domain)
    for (const auto& next : domain) cas_args.push_back(Val::pair(cur, next));
  auto in_domain = [domain](const Val& s) { return member(domain, s); };
  auto delta = [domain](const Val& s, ProcessId, std::string_view op,
                        const Val& arg) -> std::vector<Transition> {
    if (op == "Read" && arg.is_unit()) return {{s, s}};
    if (op == "CAS" && arg.is_pair() && member(domain, arg.second())) {
      if (s == arg.first()) return {{arg.second(), Val::boolean(true)}};
      return {{s, Val::boolean(false)}};
    }
    return {};
  };
  return std::make_shared<const ObjectType>(
      "rcas", std::vector<std::string>{"Read", "CAS"},
      std::map<std::string, std::vector<Val>, std::less<>>{{"Read", {Val::unit()}}, {"CAS", cas_args}},
      in_domain, domain, delta, spec);
}

ObjectTypePtr builtin_queue(std::vector<Val> domain, std::size_t capacity) {
  domain = normalize(std::move(domain));
  if (capacity < 1) throw SpecError("queue capacity must be at least 1");
  BuiltinSpec spec{BuiltinSpec::Kind::Queue, domain, Val::unit(), capacity};

  std::vector<Val> states;
  std::vector<std::vector<Val>> layer{{}};
  for (std::size_t len = 0; len <= capacity; ++len) {
    std::vector<std::vector<Val>> next;
    for (const auto& seq : layer) {
      states.push_back(encode_sequence(seq));
      if (len == capacity) continue;
      for (const auto& v : domain) {
        auto longer = seq;
        longer.push_back(v);
        next.push_back(std::move(longer));
      }
    }
    layer = std::move(next);
  }
  std::sort(states.begin(), states.end());

  auto in_domain = [domain, capacity](const Val& s) {
    auto seq = decode_sequence(s);
    if (!seq || seq->size() > capacity) return false;
    return std::all_of(seq->begin(), seq->end(), [&](const Val& v) { return member(domain, v); });
  };
  auto delta = [domain, capacity](const Val& s, ProcessId, std::string_view op,
                                  const Val& arg) -> std::vector<Transition> {
    auto seq = decode_sequence(s);
    if (!seq) return {};
    if (op == "Enq" && member(domain, arg) && seq->size() < capacity) {
      seq->push_back(arg);
      return {{encode_sequence(*seq), Val::unit()}};
    }
    if (op == "Deq" && arg.is_unit() && !seq->empty()) {
      return {{s.second(), s.first()}};
    }
    return {};
  };
  return std::make_shared<const ObjectType>(
      "queue", std::vector<std::string>{"Enq", "Deq"},
      std::map<std::string, std::vector<Val>, std::less<>>{{"Enq", domain}, {"Deq", {Val::unit()}}},
      in_domain, std::move(states), delta, spec);
}

Instance instantiate(const BuiltinSpec& spec) {
  switch (spec.kind) {
    case BuiltinSpec::Kind::Register:
      return {builtin_register(spec.domain, spec.init), spec.init};
    case BuiltinSpec::Kind::Rcas:
      return {builtin_rcas(spec.domain, spec.init), spec.init};
    case BuiltinSpec::Kind::Queue:
      return {builtin_queue(spec.domain, spec.capacity), Val::unit()};
  }
  throw SpecError("unknown builtin kind");
}

void ObjectRegistry::add(std::string name, ObjectTypePtr type, Val initial) {
  if (index_of(name)) throw SpecError("object " + name + " declared twice");
  if (!type->in_state_domain(initial))
    throw SpecError("initial state " + initial.to_string() + " of " + name + " is outside the state domain");
  entries_.push_back({std::move(name), std::move(type), std::move(initial)});
}

std::optional<std::size_t> ObjectRegistry::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i].name == name) return i;
  return std::nullopt;
}

}  // namespace lintrack

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

#include "lintrack/atomic.hpp"

#include <algorithm>
#include <sstream>

namespace lintrack {

std::string Status::to_string() const {
  switch (kind) {
    case Kind::Idle:
      return "Idle";
    case Kind::Pending:
      return "Pending " + op + "(" + value.to_string() + ")";
    case Kind::Linearized:
      return "Linearized " + value.to_string();
  }
  return "?";
}

AtomicConfiguration AtomicConfiguration::initial(const Val& sigma0, std::size_t process_count) {
  return {sigma0, std::vector<Status>(process_count)};
}

std::string AtomicConfiguration::to_string() const {
  std::ostringstream os;
  os << "(" << sigma << "; ";
  for (std::size_t p = 0; p < statuses.size(); ++p) os << (p ? ", " : "") << "p" << p << "=" << statuses[p].to_string();
  os << ")";
  return os.str();
}

std::size_t hash_value(const AtomicConfiguration& ac) {
  std::size_t seed = ac.sigma.hash();
  for (const auto& s : ac.statuses) {
    hash_combine(seed, static_cast<std::size_t>(s.kind));
    hash_combine(seed, std::hash<std::string>{}(s.op));
    hash_combine(seed, s.value.hash());
  }
  return seed;
}

std::vector<AtomicConfiguration> atomic_step(const ObjectType& type, const AtomicConfiguration& ac,
                                             ProcessId proc, const Line& line) {
  if (proc.index >= ac.statuses.size()) return {};
  const Status& st = ac.statuses[proc.index];
  std::vector<AtomicConfiguration> out;
  switch (line.kind) {
    case Line::Kind::Invoke:
      if (st.kind == Status::Kind::Idle) {
        AtomicConfiguration next = ac;
        next.statuses[proc.index] = Status::pending(line.op, line.value);
        out.push_back(std::move(next));
      }
      break;
    case Line::Kind::Intermediate:
      if (st.kind == Status::Kind::Pending) {
        for (auto& t : type.delta(ac.sigma, proc, st.op, st.value)) {
          AtomicConfiguration next{std::move(t.next), ac.statuses};
          next.statuses[proc.index] = Status::linearized(std::move(t.ret));
          if (std::find(out.begin(), out.end(), next) == out.end()) out.push_back(std::move(next));
        }
      }
      break;
    case Line::Kind::Response:
      if (st.kind == Status::Kind::Linearized && st.value == line.value) {
        AtomicConfiguration next = ac;
        next.statuses[proc.index] = Status::idle();
        out.push_back(std::move(next));
      }
      break;
  }
  return out;
}

WfResult wf_atomic(const AtomicSpec& spec, const Run<AtomicConfiguration>& r) {
  if (r.initial != spec.initial_config()) {
    return {false, 0, "initial atomic configuration is not (sigma0, all Idle)"};
  }
  for (std::size_t i = 0; i < r.steps.size(); ++i) {
    const auto& step = r.steps[i];
    auto succ = atomic_step(*spec.type, r.config_at(i), step.event.proc, step.event.line);
    if (std::find(succ.begin(), succ.end(), step.config) == succ.end())
      return {false, i + 1, "step " + step.event.to_string() + " does not follow the atomic dynamics"};
  }
  return {};
}

Implementation atomic_implementation(const BuiltinSpec& spec, std::string name) {
  using namespace build;
  Implementation impl;
  impl.name = std::move(name);
  impl.object_spec = spec;
  impl.base_decls.push_back({"self", spec});
  impl.variables = {"r"};
  auto type = instantiate(spec).type;
  for (const auto& op : type->ops()) {
    Procedure body;
    body.lines.push_back(assign(0, "r", invoke(0, "self", op, arg())));
    body.lines.push_back(ret(var(0, "r")));
    impl.procedures.emplace(op, std::move(body));
  }
  finalize(impl);
  return impl;
}

}  // namespace lintrack

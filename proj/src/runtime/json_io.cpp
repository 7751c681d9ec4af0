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

#include "lintrack/json_io.hpp"

namespace lintrack {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw TraceFormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

json initial_description(const Implementation& impl) {
  json base = json::object();
  for (const auto& entry : impl.base_objects) base[entry.name] = to_json(entry.initial);
  return {{"object", to_json(impl.initial_state)}, {"base", std::move(base)}};
}

}  // namespace

json to_json(const Val& v) {
  switch (v.kind()) {
    case Val::Kind::Int:
      return v.as_int();
    case Val::Kind::Bool:
      return v.as_bool();
    case Val::Kind::Unit:
      return nullptr;
    case Val::Kind::Pair:
      return json::array({to_json(v.first()), to_json(v.second())});
  }
  return nullptr;
}

Val val_from_json(const json& j) {
  if (j.is_null()) return Val::unit();
  if (j.is_boolean()) return Val::boolean(j.get<bool>());
  if (j.is_number_integer()) return Val::integer(j.get<std::int64_t>());
  if (j.is_array() && j.size() == 2) return Val::pair(val_from_json(j[0]), val_from_json(j[1]));
  throw TraceFormatError("not a value: " + j.dump());
}

json to_json(const Line& line) {
  switch (line.kind) {
    case Line::Kind::Invoke:
      return {{"kind", "invoke"}, {"op", line.op}, {"arg", to_json(line.value)}};
    case Line::Kind::Intermediate:
      return {{"kind", "intermediate"}};
    case Line::Kind::Response:
      return {{"kind", "response"}, {"resp", to_json(line.value)}};
  }
  return nullptr;
}

json to_json(const Event& e) { return {{"proc", e.proc.index}, {"line", to_json(e.line)}}; }

json to_json(const Status& s) {
  switch (s.kind) {
    case Status::Kind::Idle:
      return {{"kind", "idle"}};
    case Status::Kind::Pending:
      return {{"kind", "pending"}, {"op", s.op}, {"arg", to_json(s.value)}};
    case Status::Kind::Linearized:
      return {{"kind", "linearized"}, {"res", to_json(s.value)}};
  }
  return nullptr;
}

json to_json(const AtomicConfiguration& ac) {
  json statuses = json::array();
  for (const auto& s : ac.statuses) statuses.push_back(to_json(s));
  return {{"sigma", to_json(ac.sigma)}, {"statuses", std::move(statuses)}};
}

json to_json(const MetaConfiguration& m) {
  json out = json::array();
  for (const auto& ac : m) out.push_back(to_json(ac));
  return out;
}

json to_json(const Implementation& impl, const Configuration& c) {
  json frames = json::array();
  for (const auto& f : c.outstanding) {
    if (!f) {
      frames.push_back(nullptr);
      continue;
    }
    json regs = json::object();
    for (std::size_t i = 0; i < impl.variables.size() && i < f->registers.size(); ++i)
      if (f->registers[i]) regs[impl.variables[i]] = to_json(*f->registers[i]);
    frames.push_back({{"op", f->op}, {"pc", f->pc}, {"arg", to_json(f->arg)}, {"registers", std::move(regs)}});
  }
  json base = json::object();
  for (std::size_t i = 0; i < c.eps.size() && i < impl.base_objects.size(); ++i)
    base[impl.base_objects.at(i).name] = to_json(c.eps[i]);
  return {{"outstanding", std::move(frames)}, {"base", std::move(base)}};
}

Line line_from_json(const json& j) {
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "invoke") {
    const json& op = field(j, "op");
    if (!op.is_string()) throw TraceFormatError("invoke op must be a string");
    return Line::invoke(op.get<std::string>(), j.contains("arg") ? val_from_json(j.at("arg")) : Val::unit());
  }
  if (kind == "intermediate") return Line::intermediate();
  if (kind == "response") return Line::response(j.contains("resp") ? val_from_json(j.at("resp")) : Val::unit());
  throw TraceFormatError("unknown line kind '" + kind + "'");
}

Event event_from_json(const json& j) {
  const json& proc = field(j, "proc");
  if (!proc.is_number_unsigned()) throw TraceFormatError("proc must be a nonnegative integer");
  return Event{ProcessId{proc.get<std::uint32_t>()}, line_from_json(field(j, "line"))};
}

std::vector<Event> events_from_json(const json& j) {
  if (!j.is_array()) throw TraceFormatError("events must be an array");
  std::vector<Event> out;
  for (const auto& e : j) out.push_back(event_from_json(e));
  return out;
}

json trace_document(const Implementation& impl, std::size_t process_count, const std::vector<Event>& events) {
  json evs = json::array();
  for (const auto& e : events) evs.push_back(to_json(e));
  return {{"format", kTraceFormat},
          {"implementation", impl.name},
          {"processes", process_count},
          {"initial", initial_description(impl)},
          {"events", std::move(evs)}};
}

json atomic_trace_document(const Implementation& impl, const Run<AtomicConfiguration>& run) {
  json evs = json::array();
  for (const auto& step : run.steps) {
    json e = to_json(step.event);
    json snap = to_json(step.config);
    e["sigma"] = std::move(snap["sigma"]);
    e["statuses"] = std::move(snap["statuses"]);
    evs.push_back(std::move(e));
  }
  return {{"format", kTraceFormat},
          {"implementation", impl.name},
          {"atomic", true},
          {"processes", run.initial.statuses.size()},
          {"initial", initial_description(impl)},
          {"events", std::move(evs)}};
}

TraceInput read_trace(const json& doc) {
  const json* trace = &doc;
  if (doc.is_object() && doc.contains("counterexample")) {
    const json& cex = doc.at("counterexample");
    if (cex.is_null()) throw TraceFormatError("report has no counterexample");
    trace = &field(cex, "trace");
  }
  const json& format = field(*trace, "format");
  if (format != kTraceFormat) throw TraceFormatError("unsupported trace format " + format.dump());
  const json& procs = field(*trace, "processes");
  if (!procs.is_number_unsigned() || procs.get<std::size_t>() == 0)
    throw TraceFormatError("processes must be a positive integer");
  TraceInput in;
  in.process_count = procs.get<std::size_t>();
  in.events = events_from_json(field(*trace, "events"));
  for (const auto& e : in.events)
    if (e.proc.index >= in.process_count)
      throw TraceFormatError("event process p" + std::to_string(e.proc.index) + " out of range");
  return in;
}

}  // namespace lintrack

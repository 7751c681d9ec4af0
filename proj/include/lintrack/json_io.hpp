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

#ifndef LINTRACK_JSON_IO_HPP_
#define LINTRACK_JSON_IO_HPP_

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "lintrack/atomic.hpp"
#include "lintrack/runtime.hpp"
#include "lintrack/tracker.hpp"

namespace lintrack {

using json = nlohmann::ordered_json;

inline constexpr const char* kTraceFormat = "lintrack-trace/1";

class TraceFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Int as a number, Bool as true/false, Unit as null, Pair as [first, second].
json to_json(const Val& v);
Val val_from_json(const json& j);

json to_json(const Line& line);
json to_json(const Event& e);
json to_json(const Status& s);
json to_json(const AtomicConfiguration& ac);
/// Members in canonical order.
json to_json(const MetaConfiguration& m);
json to_json(const Implementation& impl, const Configuration& c);

Line line_from_json(const json& j);
Event event_from_json(const json& j);
std::vector<Event> events_from_json(const json& j);

/// A replayable trace: process count, initial state description and events.
json trace_document(const Implementation& impl, std::size_t process_count, const std::vector<Event>& events);

/// A trace document whose events also carry the atomic configuration they lead to.
json atomic_trace_document(const Implementation& impl, const Run<AtomicConfiguration>& run);

struct TraceInput {
  std::size_t process_count = 0;
  std::vector<Event> events;
};

/// Accepts a trace document or a check report with a counterexample.
TraceInput read_trace(const json& doc);

}  // namespace lintrack

#endif  // LINTRACK_JSON_IO_HPP_

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

#include <random>

#include "doctest.h"
#include "support.hpp"

using namespace lintrack;
using namespace lintrack::testing;

namespace {

ExploreParams params(std::size_t procs, std::size_t depth) {
  ExploreParams p;
  p.process_count = procs;
  p.max_events = depth;
  return p;
}

const char* const kCases[] = {"rwcas.obj", "atomic_register.obj", "broken_write.obj", "stale_read.obj"};

// Position of each Intermediate in the witness, keyed by the operation it completes.
std::vector<std::string> linearization_order(const Run<AtomicConfiguration>& w) {
  std::vector<std::string> order;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w.steps[i].event.line.kind != Line::Kind::Intermediate) continue;
    const Status& st = w.config_at(i).statuses[w.steps[i].event.proc.index];
    order.push_back(st.op + "(" + st.value.to_string() + ")");
  }
  return order;
}

void check_counterexample(const Implementation& impl, const Verdict& v) {
  REQUIRE(v.kind == Verdict::Kind::Counterexample);
  REQUIRE(v.run.has_value());
  const auto& run = *v.run;
  CHECK(v.failing_index == run.size());
  CHECK(wf_aug(impl, run).ok);
  CHECK(run.final().tracker.empty());
  for (std::size_t i = 0; i < v.failing_index; ++i) CHECK_FALSE(run.config_at(i).tracker.empty());
  Run<Configuration> base = project(impl, run);
  CHECK(oracle_linearizations(impl, base).empty());
  CHECK_FALSE(oracle_linearizations(impl, base.prefix(v.failing_index - 1)).empty());
}

}  // namespace

TEST_CASE("the read/CAS register is linearizable up to the bound") {
  Implementation impl = load_case("rwcas.obj");
  Verdict v = check(impl, params(2, 10));
  CHECK(v.kind == Verdict::Kind::LinearizableUpToBound);
  CHECK(v.stats.engine == "dfs");
  CHECK(v.stats.explored_states > 100);
  CHECK(v.stuck.empty());
}

TEST_CASE("a write that skips the CAS is caught") {
  Implementation impl = load_case("broken_write.obj");
  // p0 completes Write(1), then reads 0.
  Run<Configuration> r =
      run_of(impl, 2, {inv(0, "Write", I(1)), mid(0), res(0, U()), inv(0, "Read", U()), mid(0), res(0, I(0))});
  CHECK(embed(impl, r).final().tracker.empty());
  CHECK_FALSE(embed(impl, r.prefix(5)).final().tracker.empty());
  CHECK(oracle_linearizations(impl, r).empty());

  check_counterexample(impl, check(impl, params(2, 8)));
  check_counterexample(load_case("stale_read.obj"), check(load_case("stale_read.obj"), params(2, 8)));
}

TEST_CASE("depth zero explores only the initial run") {
  Verdict v = check(load_case("broken_write.obj"), params(2, 0));
  CHECK(v.kind == Verdict::Kind::LinearizableUpToBound);
  CHECK(v.stats.explored_runs == 1);
  CHECK(v.stats.explored_states == 1);
}

TEST_CASE("visited-state pruning does not change verdicts") {
  for (const char* name : kCases) {
    Implementation impl = load_case(name);
    for (std::size_t depth : {4u, 6u, 8u}) {
      ExploreParams on = params(2, depth), off = params(2, depth);
      off.dedup = false;
      Verdict a = check(impl, on), b = check(impl, off);
      INFO(name << " depth " << depth);
      CHECK(a.kind == b.kind);
      CHECK(a.stats.explored_states <= b.stats.explored_states);
      if (a.run) check_counterexample(impl, a);
      if (b.run) check_counterexample(impl, b);
    }
  }
}

TEST_CASE("breadth-first search finds a shortest counterexample independent of worker count") {
  for (const char* name : {"broken_write.obj", "stale_read.obj"}) {
    Implementation impl = load_case(name);
    ExploreParams p = params(2, 8);
    Verdict dfs = check(impl, p);
    p.minimize = true;
    Verdict one = check(impl, p);
    p.jobs = 4;
    Verdict four = check(impl, p);
    ExploreParams only_jobs = params(2, 8);
    only_jobs.jobs = 3;
    Verdict three = check(impl, only_jobs);
    check_counterexample(impl, one);
    CHECK(one.stats.engine == "bfs");
    CHECK(one.run == four.run);
    CHECK(one.run == three.run);
    CHECK(one.stats == four.stats);
    CHECK(one.failing_index <= dfs.failing_index);
    // No shorter counterexample exists: the same search at depth - 1 passes.
    ExploreParams shorter = params(2, one.failing_index - 1);
    CHECK(check(impl, shorter).kind == Verdict::Kind::LinearizableUpToBound);
  }
  ExploreParams p = params(2, 7);
  p.jobs = 4;
  Verdict ok = check(load_case("rwcas.obj"), p);
  CHECK(ok.kind == Verdict::Kind::LinearizableUpToBound);
}

TEST_CASE("stuck programs and resource limits are reported apart from verdicts") {
  auto impl = parse_implementation(R"(
object R : register({0, 1}, 0) uses { c : register({0, 1}, 0) }
proc Read(*) { x := invoke c.Read(unit); return x; }
proc Write(*) { x := fst(Arg); return unit; }
)");
  Verdict v = check(impl, params(2, 6));
  CHECK(v.kind == Verdict::Kind::Stuck);
  REQUIRE_FALSE(v.stuck.empty());
  CHECK(v.stuck[0].diagnostic.op == "Write");
  CHECK(v.stuck[0].diagnostic.kind == EvalErrorKind::TypeMismatch);
  CHECK(v.stuck[0].trace.back().line.kind == Line::Kind::Invoke);

  ExploreParams tight = params(2, 10);
  tight.state_budget = 50;
  CHECK(check(load_case("rwcas.obj"), tight).kind == Verdict::Kind::ResourceLimit);
  tight.minimize = true;
  CHECK(check(load_case("rwcas.obj"), tight).kind == Verdict::Kind::ResourceLimit);

  ExploreParams bad = params(0, 4);
  CHECK_THROWS_AS(check(impl, bad), std::invalid_argument);
}

TEST_CASE("random schedules") {
  ExploreParams p = params(2, 8);
  p.mode = ExploreParams::Mode::Random;
  p.seed = 42;
  p.trials = 300;
  Implementation rw = load_case("rwcas.obj");
  Verdict a = check(rw, p), b = check(rw, p);
  CHECK(a.kind == Verdict::Kind::LinearizableUpToBound);
  CHECK(a.stats == b.stats);
  CHECK(a.stats.explored_runs == 300);
  CHECK(a.stats.engine == "random");

  Implementation broken = load_case("broken_write.obj");
  p.trials = 1000;
  Verdict x = fuzz(broken, p), y = fuzz(broken, p);
  check_counterexample(broken, x);
  CHECK(x.run == y.run);
  CHECK(x.stats == y.stats);
}

TEST_CASE("oracle on a two-enqueue, two-dequeue queue history") {
  BuiltinSpec q{BuiltinSpec::Kind::Queue, {I(5), I(10)}, U(), 2};
  Implementation impl = atomic_implementation(q, "Queue");
  std::vector<Event> skeleton = {inv(0, "Enq", I(5)), inv(1, "Enq", I(10)), res(1, U()), inv(2, "Deq", U()),
                                 res(0, U()),         inv(1, "Deq", U()),   res(2, I(10)), res(1, I(5))};
  auto lins = oracle_linearizations(AtomicSpec::of(impl, 3), skeleton);
  REQUIRE_FALSE(lins.empty());
  std::vector<std::string> wanted = {"Enq(5)", "Enq(10)", "Deq(unit)", "Deq(unit)"};
  bool found = false;
  for (const auto& l : lins) {
    CHECK(wf_atomic(AtomicSpec::of(impl, 3), l.run).ok);
    CHECK(behavior(l.run) == skeleton);
    if (linearization_order(l.run) == wanted) {
      // The first Deq to linearize must be p1's, which returns 5.
      std::size_t first_deq = 0;
      for (std::size_t i = 0; i < l.run.size(); ++i)
        if (l.run.steps[i].event.line.kind == Line::Kind::Intermediate &&
            l.run.config_at(i).statuses[l.run.steps[i].event.proc.index].op == "Deq") {
          first_deq = l.run.steps[i].event.proc.index;
          break;
        }
      found = found || first_deq == 1;
    }
  }
  CHECK(found);
  // Every linearization dequeues 5 before 10.
  for (const auto& l : lins) CHECK(l.final.sigma == encode_sequence({}));
}

TEST_CASE("oracle edge cases") {
  Implementation impl = load_case("rwcas.obj");
  auto lins = oracle_linearizations(impl, Run<Configuration>(Configuration::initial(impl, 2)));
  REQUIRE(lins.size() == 1);
  CHECK(lins[0].run.size() == 0);
  CHECK(lins[0].final == ac(I(0), {idle(), idle()}));

  // A pending operation may or may not have linearized.
  auto finals = oracle_final_configs(AtomicSpec::of(impl, 2), {inv(0, "Write", I(1))});
  CHECK(finals == std::vector<AtomicConfiguration>{ac(I(0), {pending("Write", I(1)), idle()}), ac(I(1), {lin(U()), idle()})});
  CHECK_THROWS_AS(oracle_final_configs(AtomicSpec::of(impl, 2), {mid(0)}), std::invalid_argument);
}

TEST_CASE("the tracker equals the oracle on every short run") {
  for (const char* name : {"rwcas.obj", "atomic_register.obj", "stale_read.obj"}) {
    Implementation impl = load_case(name);
    AdequacyReport rep = adequacy_crosscheck(impl, params(2, 6));
    INFO(name);
    CHECK(rep.ok());
    CHECK(rep.runs_checked > 100);
    CHECK(rep.distinct_behaviors > 10);
  }
  AdequacyReport single = adequacy_crosscheck(load_case("rwcas.obj"), params(2, 0));
  CHECK(single.runs_checked == 1);
  CHECK(single.ok());
}

TEST_CASE("witness for the interfering write") {
  Implementation impl = rwcas_012();
  Run<Configuration> r = run_of(impl, 2,
                                {inv(0, "Write", I(1)), mid(0), inv(1, "Write", I(2)), mid(1), mid(1), res(1, U()),
                                 mid(0), res(0, U())});
  auto w = extract_witness(impl, r);
  CHECK(wf_atomic(AtomicSpec::of(impl, 2), w).ok);
  CHECK(behavior(w) == behavior(r));
  CHECK(linearization_order(w) == std::vector<std::string>{"Write(1)", "Write(2)"});
  CHECK(w.final().sigma == I(2));
}

TEST_CASE("witness of a single operation") {
  Implementation impl = load_case("rwcas.obj");
  Run<Configuration> r = run_of(impl, 2, {inv(1, "Write", I(1)), mid(1), mid(1), res(1, U())});
  auto w = extract_witness(impl, r);
  REQUIRE(w.size() == 3);
  CHECK(w.events() == std::vector<Event>{inv(1, "Write", I(1)), mid(1), res(1, U())});
  CHECK(w.final() == ac(I(1), {idle(), idle()}));
}

TEST_CASE("witness extraction on random runs") {
  Implementation impl = load_case("rwcas.obj");
  std::mt19937_64 rng(2);
  for (int i = 0; i < 150; ++i) {
    auto r = sample_run(impl, 3, 14, rng);
    auto w = extract_witness(impl, r);
    CHECK(wf_atomic(AtomicSpec::of(impl, 3), w).ok);
    CHECK(behavior(w) == behavior(r));
  }
  Implementation broken = load_case("broken_write.obj");
  Run<Configuration> bad =
      run_of(broken, 1, {inv(0, "Write", I(1)), mid(0), res(0, U()), inv(0, "Read", U()), mid(0), res(0, I(0))});
  CHECK_THROWS_AS(extract_witness(broken, bad), NoLinearization);
}

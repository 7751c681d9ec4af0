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
namespace b = lintrack::build;

namespace {

const char* kScratch = R"(
object RW : register({0, 1}, 0) uses {
  cell : rcas({0, 1}, 0)
  q : queue({5, 10}, 2)
}
proc Read(*) { x := invoke cell.Read(unit); return x; }
proc Write(*) { y := Arg; goto 0; }
)";

struct Scratch {
  Implementation impl = parse_implementation(kScratch);
  // Slots follow sorted variable names.
  std::size_t x = 0, y = 1;
  BaseStates eps = impl.initial_base_states();
  Registers empty_regs() const { return Registers(impl.variables.size()); }
};

std::vector<StatementOutcome> run_stmt(const Scratch& s, const Registers& regs, const Statement& st, Val arg = U()) {
  EvalContext ctx{s.impl, pid(0), arg};
  return eval_statement(ctx, regs, s.eps, st);
}

EvalErrorKind error_kind(const std::function<void()>& f) {
  try {
    f();
  } catch (const EvalError& e) {
    return e.kind();
  }
  FAIL("expected an evaluation error");
  return EvalErrorKind::TypeMismatch;
}

}  // namespace

TEST_CASE("the read/CAS Write parses into three lines") {
  Implementation impl = load_case("rwcas.obj");
  REQUIRE(impl.variables == std::vector<std::string>{"x"});
  const auto& write = impl.procedure("Write").lines;
  REQUIRE(write.size() == 3);
  CHECK(write[0] == b::assign(0, "x", b::invoke(0, "cell", "Read", b::unit())));
  CHECK(write[1] == b::invoke_stmt(0, "cell", "CAS", b::pair(b::var(0, "x"), b::arg())));
  CHECK(write[2] == b::ret(b::unit()));
  CHECK(impl.procedure("Read").lines.size() == 2);
}

TEST_CASE("minimal procedure") {
  auto impl = parse_implementation(R"(
object R : register({0, 1}, 0) uses { c : register({0}, 0) }
proc Read(*) { return Arg; }
proc Write(*) { return Arg; })");
  REQUIRE(impl.procedure("Read").lines.size() == 1);
  CHECK(impl.procedure("Read").lines[0] == b::ret(b::arg()));
}

TEST_CASE("load errors") {
  const std::string head = "object R : register({0, 1}, 0) uses { c : rcas({0, 1}, 0) }\nproc Read(*) { return 0; }\n";
  SUBCASE("goto out of range") {
    CHECK_THROWS_AS(parse_implementation(head + "proc Write(*) { goto 5; return unit; }"), LoadError);
  }
  SUBCASE("undeclared variable") {
    CHECK_THROWS_WITH_AS(parse_implementation(head + "proc Write(*) { return z; }"),
                         doctest::Contains("undeclared variable z"), ParseError);
  }
  SUBCASE("unknown base object") {
    CHECK_THROWS_WITH_AS(parse_implementation(head + "proc Write(*) { invoke d.Read(unit); return unit; }"),
                         doctest::Contains("unknown base object d"), ParseError);
  }
  SUBCASE("unknown base operation") {
    CHECK_THROWS_WITH_AS(parse_implementation(head + "proc Write(*) { invoke c.Write(1); return unit; }"),
                         doctest::Contains("has no operation Write"), ParseError);
  }
  SUBCASE("missing procedure") {
    CHECK_THROWS_WITH_AS(parse_implementation(head), doctest::Contains("Write"), LoadError);
  }
  SUBCASE("syntax error carries a position") {
    try {
      parse_implementation(head + "proc Write(*) { return ; }");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
      CHECK(e.column() == 24);
    }
  }
  SUBCASE("empty procedure") { CHECK_THROWS_AS(parse_implementation(head + "proc Write(*) { }"), LoadError); }
}

TEST_CASE("if/else desugars into goto lines") {
  auto impl = parse_implementation(R"(
object R : register({0, 1}, 0) uses { c : register({0, 1}, 0) }
proc Read(*) {
  x := invoke c.Read(unit);   # 0
  if x == 0 {                 # 1
    return 0;                 # 2
  } else {                    # 3: skip-else goto
    x := 1;                   # 4
  }
  return x;                   # 5
}
proc Write(*) { invoke c.Write(Arg); return unit; }
)");
  const auto& read = impl.procedure("Read").lines;
  REQUIRE(read.size() == 6);
  auto x = b::var(0, "x");
  CHECK(read[1] == b::if_(b::binary(BinaryOp::Eq, x, b::integer(0)), b::go(2), b::go(4)));
  CHECK(read[3] == b::go(5));
  CHECK(read[4] == b::assign(0, "x", b::integer(1)));
}

TEST_CASE("term evaluation") {
  Scratch s;
  EvalContext ctx{s.impl, pid(0), I(5)};
  using O = std::vector<TermOutcome>;
  CHECK(eval_term(ctx, s.empty_regs(), s.eps, b::arg()) == O{{s.eps, I(5)}});

  Registers regs = s.empty_regs();
  regs[s.x] = P(I(1), I(2));
  CHECK(eval_term(ctx, regs, s.eps, b::fst(b::var(s.x, "x"))) == O{{s.eps, I(1)}});
  CHECK(eval_term(ctx, regs, s.eps, b::snd(b::var(s.x, "x"))) == O{{s.eps, I(2)}});

  // Invocation: the expected outcome comes straight from the base delta.
  auto direct = s.impl.base_objects.at(0).type->delta(I(0), pid(0), "Read", U());
  REQUIRE(direct.size() == 1);
  BaseStates after = s.eps;
  after[0] = direct[0].next;
  CHECK(eval_term(ctx, s.empty_regs(), s.eps, b::invoke(0, "cell", "Read", b::unit())) == O{{after, direct[0].ret}});
  CHECK(direct[0].ret == I(0));

  auto two = b::integer(2), three = b::integer(3);
  CHECK(eval_term(ctx, regs, s.eps, b::binary(BinaryOp::Add, two, three))[0].value == I(5));
  CHECK(eval_term(ctx, regs, s.eps, b::binary(BinaryOp::Sub, two, three))[0].value == I(-1));
  CHECK(eval_term(ctx, regs, s.eps, b::binary(BinaryOp::Mul, two, three))[0].value == I(6));
  CHECK(eval_term(ctx, regs, s.eps, b::binary(BinaryOp::Lt, two, three))[0].value == B(true));
  CHECK(eval_term(ctx, regs, s.eps, b::binary(BinaryOp::Eq, b::pair(two, b::unit()), b::pair(two, b::unit())))[0].value ==
        B(true));
  CHECK(eval_term(ctx, regs, s.eps, b::binary(BinaryOp::And, b::boolean(true), b::boolean(false)))[0].value == B(false));
  CHECK(eval_term(ctx, regs, s.eps, b::binary(BinaryOp::Or, b::boolean(true), b::boolean(false)))[0].value == B(true));
  CHECK(eval_term(ctx, regs, s.eps, b::negate(b::boolean(false)))[0].value == B(true));
}

TEST_CASE("evaluation error kinds") {
  Scratch s;
  Registers regs = s.empty_regs();
  EvalContext ctx{s.impl, pid(0), U()};
  CHECK(error_kind([&] { eval_term(ctx, regs, s.eps, b::var(s.x, "x")); }) == EvalErrorKind::UnboundVariable);
  CHECK(error_kind([&] { eval_term(ctx, regs, s.eps, b::fst(b::integer(1))); }) == EvalErrorKind::TypeMismatch);
  CHECK(error_kind([&] { eval_term(ctx, regs, s.eps, b::binary(BinaryOp::Add, b::integer(1), b::boolean(true))); }) ==
        EvalErrorKind::TypeMismatch);
  CHECK(error_kind([&] { eval_term(ctx, regs, s.eps, b::negate(b::integer(1))); }) == EvalErrorKind::TypeMismatch);
  CHECK(error_kind([&] { eval_statement(ctx, regs, s.eps, b::if_(b::integer(1), b::ret(b::unit()), b::ret(b::unit()))); }) ==
        EvalErrorKind::TypeMismatch);
  // The queue starts empty, so Deq has no transition.
  CHECK(error_kind([&] { eval_term(ctx, regs, s.eps, b::invoke(1, "q", "Deq", b::unit())); }) == EvalErrorKind::BaseStuck);

  Implementation narrow = s.impl;
  narrow.int_bits = 4;
  EvalContext nctx{narrow, pid(0), U()};
  CHECK(eval_term(nctx, regs, s.eps, b::binary(BinaryOp::Add, b::integer(3), b::integer(4)))[0].value == I(7));
  CHECK(error_kind([&] { eval_term(nctx, regs, s.eps, b::binary(BinaryOp::Add, b::integer(7), b::integer(1))); }) ==
        EvalErrorKind::Overflow);

  Frame past{"Read", 2, U(), regs};
  CHECK(error_kind([&] { step_frame(s.impl, pid(0), s.eps, past); }) == EvalErrorKind::PcOutOfRange);
}

TEST_CASE("statement rules") {
  Scratch s;
  Registers regs = s.empty_regs();
  using O = std::vector<StatementOutcome>;

  SUBCASE("Assign") {
    Registers expect = regs;
    expect[s.x] = I(5);
    CHECK(run_stmt(s, regs, b::assign(s.x, "x", b::integer(5))) == O{{expect, s.eps, Signal::cont()}});
  }
  SUBCASE("Seq-Ret skips the second statement") {
    CHECK(run_stmt(s, regs, b::seq(b::ret(b::integer(1)), b::assign(s.x, "x", b::integer(2)))) ==
          O{{regs, s.eps, Signal::ret(I(1))}});
  }
  SUBCASE("Seq-Cont threads the registers of the first statement") {
    Registers expect = regs;
    expect[s.x] = I(1);
    CHECK(run_stmt(s, regs, b::seq(b::assign(s.x, "x", b::integer(1)), b::ret(b::var(s.x, "x")))) ==
          O{{expect, s.eps, Signal::ret(I(1))}});
  }
  SUBCASE("Seq short-circuits on goto") {
    CHECK(run_stmt(s, regs, b::seq(b::go(0), b::assign(s.x, "x", b::integer(2)))) == O{{regs, s.eps, Signal::go(0)}});
  }
  SUBCASE("If-True and If-False") {
    CHECK(run_stmt(s, regs, b::if_(b::boolean(true), b::ret(b::integer(1)), b::ret(b::integer(2)))) ==
          O{{regs, s.eps, Signal::ret(I(1))}});
    CHECK(run_stmt(s, regs, b::if_(b::boolean(false), b::ret(b::integer(1)), b::ret(b::integer(2)))) ==
          O{{regs, s.eps, Signal::ret(I(2))}});
  }
  SUBCASE("Goto") { CHECK(run_stmt(s, regs, b::go(3)) == O{{regs, s.eps, Signal::go(3)}}); }
  SUBCASE("Invoke discards the result but keeps the effect") {
    BaseStates after = s.eps;
    after[0] = I(1);
    CHECK(run_stmt(s, regs, b::invoke_stmt(0, "cell", "CAS", b::pair(b::integer(0), b::integer(1)))) ==
          O{{regs, after, Signal::cont()}});
  }
}

TEST_CASE("frame stepping") {
  Implementation impl = load_case("rwcas.obj");
  BaseStates eps = impl.initial_base_states();
  using O = std::vector<FrameOutcome>;

  Frame f = initial_frame(impl, "Write", I(5));
  CHECK(f.pc == 0);
  Frame next = f;
  next.pc = 1;
  next.registers[0] = I(0);
  CHECK(step_frame(impl, pid(0), eps, f) == O{{eps, ProcedureSignal::next_frame(next)}});

  Frame at_return = next;
  at_return.pc = 2;
  CHECK(step_frame(impl, pid(0), eps, at_return) == O{{eps, ProcedureSignal::ret(U())}});

  Scratch s;
  Frame looping{"Write", 1, I(1), s.empty_regs()};
  looping.registers[s.y] = I(1);
  Frame back = looping;
  back.pc = 0;
  CHECK(step_frame(s.impl, pid(0), s.eps, looping) == O{{s.eps, ProcedureSignal::next_frame(back)}});
}

namespace {

// Random syntax over variables a, x, y and base objects cell (rcas) and q (queue).
struct SyntaxGen {
  std::mt19937_64 rng;
  const std::vector<std::string> vars{"a", "x", "y"};

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

  Term term(int depth, bool allow_invoke) {
    int leaf_kinds = 5;
    int k = depth > 0 ? pick(allow_invoke ? 12 : 11) : pick(leaf_kinds);
    switch (k) {
      case 0: {
        std::size_t slot = pick(3);
        return b::var(slot, vars[slot]);
      }
      case 1:
        return b::integer(pick(7) - 3);
      case 2:
        return b::boolean(pick(2));
      case 3:
        return b::unit();
      case 4:
        return b::arg();
      case 5:
        return b::fst(term(depth - 1, allow_invoke));
      case 6:
        return b::snd(term(depth - 1, allow_invoke));
      case 7:
      case 8:
        return b::binary(static_cast<BinaryOp>(pick(7)), term(depth - 1, allow_invoke), term(depth - 1, allow_invoke));
      case 9:
        return b::negate(term(depth - 1, allow_invoke));
      case 10:
        return b::pair(term(depth - 1, allow_invoke), term(depth - 1, allow_invoke));
      default:
        return pick(2) ? b::invoke(0, "cell", "CAS", term(depth - 1, allow_invoke)) : b::invoke(1, "q", "Deq", b::unit());
    }
  }

  Statement statement(int depth, std::size_t lines, bool allow_invoke) {
    int k = depth > 0 ? pick(7) : pick(5);
    switch (k) {
      case 0: {
        std::size_t slot = pick(3);
        return b::assign(slot, vars[slot], term(2, allow_invoke));
      }
      case 1:
        return b::ret(term(2, allow_invoke));
      case 2:
        return allow_invoke ? b::invoke_stmt(0, "cell", "Read", b::unit()) : b::ret(b::unit());
      case 3:
      case 4:
        return b::go(static_cast<std::size_t>(pick(static_cast<int>(lines))));
      case 5:
        return b::seq(statement(depth - 1, lines, allow_invoke), statement(depth - 1, lines, allow_invoke));
      default:
        return b::if_(term(1, allow_invoke), statement(depth - 1, lines, allow_invoke),
                      statement(depth - 1, lines, allow_invoke));
    }
  }

  Implementation implementation() {
    Implementation impl;
    impl.name = "Gen";
    impl.object_spec = BuiltinSpec{BuiltinSpec::Kind::Register, {I(0), I(1)}, I(0), 0};
    impl.base_decls = {{"cell", BuiltinSpec{BuiltinSpec::Kind::Rcas, {I(0), I(1)}, I(0), 0}},
                       {"q", BuiltinSpec{BuiltinSpec::Kind::Queue, {I(1), I(2)}, U(), 2}}};
    impl.variables = vars;
    for (std::string op : {"Read", "Write"}) {
      std::size_t n = 1 + pick(4);
      Procedure p;
      for (std::size_t i = 0; i < n; ++i) p.lines.push_back(statement(2, n, true));
      impl.procedures.emplace(op, std::move(p));
    }
    // Every variable must occur as an assignment target.
    impl.procedures["Read"].lines[0] =
        b::seq(b::assign(0, "a", b::integer(0)), b::seq(b::assign(1, "x", b::integer(0)), b::assign(2, "y", b::integer(0))));
    if (pick(2)) impl.invoke_domain["Write"] = {I(1)};
    if (pick(3) == 0) impl.int_bits = 8;
    finalize(impl);
    return impl;
  }
};

}  // namespace

TEST_CASE("pretty_print then parse is the identity") {
  SyntaxGen gen{std::mt19937_64(2024)};
  for (int i = 0; i < 500; ++i) {
    Implementation impl = gen.implementation();
    std::string text = pretty_print(impl);
    Implementation back = parse_implementation(text);
    INFO(text);
    REQUIRE(back == impl);
  }
  for (const char* name : {"rwcas.obj", "atomic_register.obj", "broken_write.obj", "stale_read.obj"}) {
    Implementation impl = load_case(name);
    CHECK(parse_implementation(pretty_print(impl)) == impl);
  }
}

TEST_CASE("invocation-free statements leave base states unchanged") {
  SyntaxGen gen{std::mt19937_64(99)};
  Scratch s;
  std::mt19937_64 vals(5);
  std::size_t evaluated = 0;
  for (int i = 0; i < 2000; ++i) {
    Statement st = gen.statement(2, 4, false);
    Registers regs(s.impl.variables.size());
    for (auto& r : regs)
      if (vals() % 4) r = (vals() % 2) ? I(static_cast<int>(vals() % 3)) : B(vals() % 2);
    BaseStates eps = s.eps;
    eps[0] = I(static_cast<int>(vals() % 2));
    EvalContext ctx{s.impl, pid(0), I(1)};
    try {
      auto out = eval_statement(ctx, regs, eps, st);
      REQUIRE(out.size() == 1);
      CHECK(out[0].eps == eps);
      ++evaluated;
    } catch (const EvalError&) {
    }
  }
  CHECK(evaluated > 300);
}

TEST_CASE("frames over deterministic base objects step deterministically") {
  SyntaxGen gen{std::mt19937_64(31)};
  std::mt19937_64 vals(8);
  std::size_t stepped = 0;
  for (int i = 0; i < 300; ++i) {
    Implementation impl = gen.implementation();
    for (const auto& [op, body] : impl.procedures) {
      for (std::size_t pc = 0; pc < body.lines.size(); ++pc) {
        Frame f = initial_frame(impl, op, I(1));
        f.pc = pc;
        for (auto& r : f.registers)
          if (vals() % 3) r = (vals() % 2) ? I(static_cast<int>(vals() % 2)) : P(I(0), I(1));
        BaseStates eps = impl.initial_base_states();
        try {
          auto out = step_frame(impl, pid(1), eps, f);
          CHECK(out.size() <= 1);
          ++stepped;
        } catch (const EvalError&) {
        }
      }
    }
  }
  CHECK(stepped > 200);
}

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
#include <set>

#include "doctest.h"
#include "support.hpp"

using namespace lintrack;
using namespace lintrack::testing;

TEST_CASE("values compare structurally and order Int < Bool < Unit < Pair") {
  CHECK(I(3) == I(3));
  CHECK(P(I(1), B(true)) == P(I(1), B(true)));
  CHECK(P(I(1), B(true)) != P(I(1), B(false)));
  CHECK(I(1000) < B(false));
  CHECK(B(true) < U());
  CHECK(U() < P(I(0), I(0)));
  CHECK(I(-5) < I(2));
  CHECK(B(false) < B(true));
  CHECK(P(I(0), I(9)) < P(I(1), I(0)));
  CHECK(P(I(1), I(0)) < P(I(1), I(1)));
}

TEST_CASE("value rendering") {
  CHECK(I(-4).to_string() == "-4");
  CHECK(B(true).to_string() == "true");
  CHECK(U().to_string() == "unit");
  CHECK(P(I(1), P(B(false), U())).to_string() == "(1, (false, unit))");
}

TEST_CASE("accessors reject the wrong kind") {
  CHECK_THROWS_AS((void)U().as_int(), std::logic_error);
  CHECK_THROWS_AS((void)I(1).first(), std::logic_error);
  CHECK_THROWS_AS((void)I(1).as_bool(), std::logic_error);
}

namespace {

Val random_val(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> kind(0, depth > 0 ? 3 : 2);
  switch (kind(rng)) {
    case 0:
      return I(std::uniform_int_distribution<int>(-3, 3)(rng));
    case 1:
      return B(rng() & 1);
    case 2:
      return U();
    default:
      return P(random_val(rng, depth - 1), random_val(rng, depth - 1));
  }
}

int kind_rank(const Val& v) { return static_cast<int>(v.kind()); }

// Independent lexicographic comparison, written against the kind rank.
int reference_compare(const Val& a, const Val& b) {
  if (kind_rank(a) != kind_rank(b)) return kind_rank(a) < kind_rank(b) ? -1 : 1;
  if (a.is_int()) return a.as_int() < b.as_int() ? -1 : a.as_int() > b.as_int();
  if (a.is_bool()) return a.as_bool() < b.as_bool() ? -1 : a.as_bool() > b.as_bool();
  if (a.is_unit()) return 0;
  int c = reference_compare(a.first(), b.first());
  return c ? c : reference_compare(a.second(), b.second());
}

}  // namespace

TEST_CASE("value order is a total order matching the lexicographic reference") {
  std::mt19937_64 rng(7);
  CHECK(kind_rank(I(0)) < kind_rank(B(true)));
  CHECK(kind_rank(B(true)) < kind_rank(U()));
  CHECK(kind_rank(U()) < kind_rank(P(U(), U())));
  for (int i = 0; i < 2000; ++i) {
    Val a = random_val(rng, 3), b = random_val(rng, 3), c = random_val(rng, 3);
    int ref = reference_compare(a, b);
    CHECK((a < b) == (ref < 0));
    CHECK((a == b) == (ref == 0));
    if (a == b) CHECK(a.hash() == b.hash());
    if (a < b && b < c) CHECK(a < c);
  }
}

TEST_CASE("integer range arithmetic reports overflow instead of wrapping") {
  IntRange r;
  CHECK(r.max() == (std::int64_t{1} << 62) - 1);
  CHECK(r.min() == -(std::int64_t{1} << 62));
  CHECK(r.add(r.max(), 0) == r.max());
  CHECK_FALSE(r.add(r.max(), 1).has_value());
  CHECK_FALSE(r.sub(r.min(), 1).has_value());
  CHECK_FALSE(r.mul(r.max(), 2).has_value());

  IntRange small(4);  // [-8, 7]
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    std::int64_t a = std::uniform_int_distribution<std::int64_t>(-8, 7)(rng);
    std::int64_t b = std::uniform_int_distribution<std::int64_t>(-8, 7)(rng);
    auto in = [](std::int64_t v) { return v >= -8 && v <= 7; };
    CHECK(small.add(a, b).has_value() == in(a + b));
    CHECK(small.sub(a, b).has_value() == in(a - b));
    CHECK(small.mul(a, b).has_value() == in(a * b));
    if (in(a * b)) CHECK(*small.mul(a, b) == a * b);
  }
}

TEST_CASE("sequence encoding round-trips") {
  std::mt19937_64 rng(11);
  CHECK(encode_sequence({}) == U());
  CHECK(encode_sequence({I(5), I(10)}) == P(I(5), P(I(10), U())));
  for (int i = 0; i < 300; ++i) {
    std::vector<Val> items(rng() % 5);
    for (auto& v : items) v = random_val(rng, 2);
    auto back = decode_sequence(encode_sequence(items));
    REQUIRE(back.has_value());
    CHECK(*back == items);
  }
  CHECK_FALSE(decode_sequence(I(1)).has_value());
}

TEST_CASE("register transitions") {
  auto reg = builtin_register({I(0), I(3), I(5)}, I(0));
  using T = std::vector<Transition>;
  CHECK(reg->delta(I(0), pid(0), "Read", U()) == T{{I(0), I(0)}});
  CHECK(reg->delta(I(0), pid(0), "Write", I(5)) == T{{I(5), U()}});
  CHECK(reg->delta(I(3), pid(1), "Write", I(3)) == T{{I(3), U()}});
  CHECK(reg->delta(I(0), pid(0), "Write", I(4)).empty());
  CHECK(reg->delta(I(0), pid(0), "Pop", U()).empty());
}

TEST_CASE("read/CAS transitions") {
  auto cell = builtin_rcas({I(0), I(1), I(2)}, I(0));
  using T = std::vector<Transition>;
  CHECK(cell->delta(I(0), pid(0), "CAS", P(I(0), I(1))) == T{{I(1), B(true)}});
  CHECK(cell->delta(I(2), pid(0), "CAS", P(I(0), I(1))) == T{{I(2), B(false)}});
  for (int v = 0; v < 3; ++v) CHECK(cell->delta(I(v), pid(0), "Read", U()) == T{{I(v), I(v)}});
  CHECK(cell->delta(I(0), pid(0), "CAS", I(1)).empty());
}

TEST_CASE("queue transitions") {
  auto q = builtin_queue({I(5), I(10)}, 2);
  using T = std::vector<Transition>;
  Val empty = encode_sequence({});
  CHECK(q->delta(empty, pid(0), "Enq", I(5)) == T{{encode_sequence({I(5)}), U()}});
  CHECK(q->delta(encode_sequence({I(5), I(10)}), pid(0), "Deq", U()) == T{{encode_sequence({I(10)}), I(5)}});
  CHECK(q->delta(empty, pid(0), "Deq", U()).empty());
  CHECK(q->delta(encode_sequence({I(5), I(10)}), pid(0), "Enq", I(5)).empty());
  CHECK_THROWS_AS(builtin_queue({I(1)}, 0), SpecError);
}

TEST_CASE("builtins stay inside their state domain and register/rcas are deterministic") {
  std::vector<ObjectTypePtr> types = {builtin_register({I(0), I(1), B(true)}, I(0)),
                                      builtin_rcas({I(0), I(1), I(2)}, I(1)),
                                      builtin_queue({I(1), I(2)}, 3)};
  for (const auto& t : types) {
    for (const auto& s : t->states()) {
      REQUIRE(t->in_state_domain(s));
      for (const auto& op : t->ops()) {
        for (const auto& arg : t->arg_domain(op)) {
          auto next = t->delta(s, pid(0), op, arg);
          for (const auto& tr : next) CHECK(t->in_state_domain(tr.next));
          if (t->spec().kind != BuiltinSpec::Kind::Queue) CHECK(next.size() <= 1);
        }
      }
    }
  }
}

TEST_CASE("rcas argument domain is every (expected, new) pair") {
  auto cell = builtin_rcas({I(0), I(1)}, I(0));
  std::set<Val> args(cell->arg_domain("CAS").begin(), cell->arg_domain("CAS").end());
  CHECK(args == std::set<Val>{P(I(0), I(0)), P(I(0), I(1)), P(I(1), I(0)), P(I(1), I(1))});
  CHECK(cell->arg_domain("Read") == std::vector<Val>{U()});
}

TEST_CASE("builtin preconditions") {
  CHECK_THROWS_AS(builtin_register({I(0), I(1)}, I(2)), SpecError);
  CHECK_THROWS_AS(builtin_rcas({}, I(0)), SpecError);
}

TEST_CASE("object registry keeps names unique and initial states in domain") {
  ObjectRegistry reg;
  auto t = builtin_register({I(0), I(1)}, I(0));
  reg.add("a", t, I(0));
  reg.add("b", t, I(1));
  CHECK(reg.size() == 2);
  CHECK(reg.index_of("b") == std::optional<std::size_t>(1));
  CHECK_FALSE(reg.index_of("c").has_value());
  CHECK_THROWS(reg.add("a", t, I(0)));
  CHECK_THROWS(reg.add("c", t, I(7)));
}

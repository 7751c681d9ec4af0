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

#ifndef LINTRACK_VAL_HPP_
#define LINTRACK_VAL_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lintrack {

inline void hash_combine(std::size_t& seed, std::size_t h) {
  seed ^= h + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

/// Immutable value exchanged with operations: Int, Bool, Unit or Pair.
///
/// Pairs share their children, so copies are cheap. The total order used for
/// deduplicated sets ranks kinds as Int < Bool < Unit < Pair and compares
/// lexicographically within a kind.
class Val {
 public:
  enum class Kind : std::uint8_t { Int = 0, Bool = 1, Unit = 2, Pair = 3 };

  Val() = default;  // Unit

  static Val integer(std::int64_t n) { return Val(Kind::Int, n); }
  static Val boolean(bool b) { return Val(Kind::Bool, b ? 1 : 0); }
  static Val unit() { return Val(); }
  static Val pair(Val first, Val second);

  Kind kind() const { return kind_; }
  bool is_int() const { return kind_ == Kind::Int; }
  bool is_bool() const { return kind_ == Kind::Bool; }
  bool is_unit() const { return kind_ == Kind::Unit; }
  bool is_pair() const { return kind_ == Kind::Pair; }

  std::int64_t as_int() const;
  bool as_bool() const;
  const Val& first() const;
  const Val& second() const;

  std::size_t hash() const;
  std::string to_string() const;

  friend bool operator==(const Val& a, const Val& b);
  friend std::strong_ordering operator<=>(const Val& a, const Val& b);

 private:
  struct PairCell;
  Val(Kind k, std::int64_t scalar) : kind_(k), scalar_(scalar) {}

  Kind kind_ = Kind::Unit;
  std::int64_t scalar_ = 0;
  std::shared_ptr<const PairCell> pair_;
};

struct Val::PairCell {
  Val first;
  Val second;
};

std::ostream& operator<<(std::ostream& os, const Val& v);

/// Signed integers of a configurable bit width. Arithmetic that leaves the
/// range is reported, never wrapped.
class IntRange {
 public:
  static constexpr int kDefaultBits = 63;

  explicit IntRange(int bits = kDefaultBits);

  int bits() const { return bits_; }
  std::int64_t min() const { return min_; }
  std::int64_t max() const { return max_; }
  bool contains(std::int64_t n) const { return n >= min_ && n <= max_; }

  std::optional<std::int64_t> add(std::int64_t a, std::int64_t b) const;
  std::optional<std::int64_t> sub(std::int64_t a, std::int64_t b) const;
  std::optional<std::int64_t> mul(std::int64_t a, std::int64_t b) const;

 private:
  std::optional<std::int64_t> fit(__int128 wide) const;

  int bits_;
  std::int64_t min_;
  std::int64_t max_;
};

/// Lists are encoded as right-nested pairs terminated by Unit.
Val encode_sequence(const std::vector<Val>& items);
std::optional<std::vector<Val>> decode_sequence(const Val& v);

}  // namespace lintrack

template <>
struct std::hash<lintrack::Val> {
  std::size_t operator()(const lintrack::Val& v) const { return v.hash(); }
};

#endif  // LINTRACK_VAL_HPP_

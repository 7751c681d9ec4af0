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

#include "lintrack/val.hpp"

#include <sstream>

namespace lintrack {

Val Val::pair(Val first, Val second) {
  Val v(Kind::Pair, 0);
  v.pair_ = std::make_shared<const PairCell>(PairCell{std::move(first), std::move(second)});
  return v;
}

std::int64_t Val::as_int() const {
  if (kind_ != Kind::Int) throw std::logic_error("Val::as_int on " + to_string());
  return scalar_;
}

bool Val::as_bool() const {
  if (kind_ != Kind::Bool) throw std::logic_error("Val::as_bool on " + to_string());
  return scalar_ != 0;
}

const Val& Val::first() const {
  if (kind_ != Kind::Pair) throw std::logic_error("Val::first on " + to_string());
  return pair_->first;
}

const Val& Val::second() const {
  if (kind_ != Kind::Pair) throw std::logic_error("Val::second on " + to_string());
  return pair_->second;
}

std::size_t Val::hash() const {
  std::size_t seed = static_cast<std::size_t>(kind_);
  if (kind_ == Kind::Pair) {
    hash_combine(seed, pair_->first.hash());
    hash_combine(seed, pair_->second.hash());
  } else {
    hash_combine(seed, std::hash<std::int64_t>{}(scalar_));
  }
  return seed;
}

bool operator==(const Val& a, const Val& b) {
  if (a.kind_ != b.kind_) return false;
  if (a.kind_ != Val::Kind::Pair) return a.scalar_ == b.scalar_;
  if (a.pair_ == b.pair_) return true;
  return a.pair_->first == b.pair_->first && a.pair_->second == b.pair_->second;
}

std::strong_ordering operator<=>(const Val& a, const Val& b) {
  if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
  if (a.kind_ != Val::Kind::Pair) return a.scalar_ <=> b.scalar_;
  if (a.pair_ == b.pair_) return std::strong_ordering::equal;
  if (auto c = a.pair_->first <=> b.pair_->first; c != 0) return c;
  return a.pair_->second <=> b.pair_->second;
}

std::string Val::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Val& v) {
  switch (v.kind()) {
    case Val::Kind::Int:
      return os << v.as_int();
    case Val::Kind::Bool:
      return os << (v.as_bool() ? "true" : "false");
    case Val::Kind::Unit:
      return os << "unit";
    case Val::Kind::Pair:
      return os << '(' << v.first() << ", " << v.second() << ')';
  }
  return os;
}

IntRange::IntRange(int bits) : bits_(bits) {
  if (bits < 2 || bits > 64) throw std::invalid_argument("integer width must be in [2, 64]");
  if (bits == 64) {
    min_ = INT64_MIN;
    max_ = INT64_MAX;
  } else {
    max_ = (std::int64_t{1} << (bits - 1)) - 1;
    min_ = -max_ - 1;
  }
}

std::optional<std::int64_t> IntRange::fit(__int128 wide) const {
  if (wide < min_ || wide > max_) return std::nullopt;
  return static_cast<std::int64_t>(wide);
}

std::optional<std::int64_t> IntRange::add(std::int64_t a, std::int64_t b) const {
  return fit(static_cast<__int128>(a) + b);
}

std::optional<std::int64_t> IntRange::sub(std::int64_t a, std::int64_t b) const {
  return fit(static_cast<__int128>(a) - b);
}

std::optional<std::int64_t> IntRange::mul(std::int64_t a, std::int64_t b) const {
  return fit(static_cast<__int128>(a) * b);
}

Val encode_sequence(const std::vector<Val>& items) {
  Val acc = Val::unit();
  for (auto it = items.rbegin(); it != items.rend(); ++it) acc = Val::pair(*it, std::move(acc));
  return acc;
}

std::optional<std::vector<Val>> decode_sequence(const Val& v) {
  std::vector<Val> out;
  const Val* cur = &v;
  while (cur->is_pair()) {
    out.push_back(cur->first());
    cur = &cur->second();
  }
  if (!cur->is_unit()) return std::nullopt;
  return out;
}

}  // namespace lintrack

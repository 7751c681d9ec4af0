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

#ifndef LINTRACK_PARSER_HPP_
#define LINTRACK_PARSER_HPP_

#include <string>
#include <string_view>

#include "lintrack/ast.hpp"

namespace lintrack {

class ParseError : public LoadError {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : LoadError(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Parses and validates a DSL source text (see docs/dsl.md for the grammar).
/// Throws ParseError on syntax errors and LoadError on validation failures.
Implementation parse_implementation(std::string_view source);

/// Reads `path` and parses it. Throws std::runtime_error when unreadable.
Implementation load_implementation(const std::string& path);

/// Parses a single value literal such as `(1, true)`.
Val parse_value(std::string_view text);

/// Parses a value domain such as `{0, 1}` or `0..3`.
std::vector<Val> parse_domain(std::string_view text);

}  // namespace lintrack

#endif  // LINTRACK_PARSER_HPP_

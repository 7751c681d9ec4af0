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

#ifndef LINTRACK_EVAL_HPP_
#define LINTRACK_EVAL_HPP_

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lintrack/ast.hpp"
#include "lintrack/object_type.hpp"
#include "lintrack/val.hpp"

namespace lintrack {

/// Local store of one process, indexed by variable slot. Empty = unassigned.
using Registers = std::vector<std::optional<Val>>;
/// State of every base object, indexed like Implementation::base_objects.
using BaseStates = std::vector<Val>;

enum class EvalErrorKind {
  UnboundVariable,
  TypeMismatch,
  Overflow,
  BaseStuck,
  PcOutOfRange,
};

std::string_view eval_error_kind_name(EvalErrorKind kind);

class EvalError : public std::runtime_error {
 public:
  EvalError(EvalErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  EvalErrorKind kind() const { return kind_; }

 private:
  EvalErrorKind kind_;
};

struct Signal {
  enum class Kind { Continue, Goto, Return };

  Kind kind = Kind::Continue;
  std::size_t target = 0;
  Val value;

  static Signal cont() { return {}; }
  static Signal go(std::size_t line) { return {Kind::Goto, line, {}}; }
  static Signal ret(Val v) { return {Kind::Return, 0, std::move(v)}; }
  friend bool operator==(const Signal&, const Signal&) = default;
};

struct Frame {
  std::string op;
  std::size_t pc = 0;
  Val arg;
  Registers registers;

  friend auto operator<=>(const Frame&, const Frame&) = default;
  friend bool operator==(const Frame&, const Frame&) = default;
};

std::size_t hash_value(const Frame& f);

struct ProcedureSignal {
  bool is_return = false;
  Frame next;   // when !is_return
  Val value;    // when is_return

  static ProcedureSignal next_frame(Frame f) { return {false, std::move(f), {}}; }
  static ProcedureSignal ret(Val v) { return {true, {}, std::move(v)}; }
  friend bool operator==(const ProcedureSignal&, const ProcedureSignal&) = default;
};

/// Where a term or statement runs: the process and the argument of its
/// outstanding operation.
struct EvalContext {
  const Implementation& impl;
  ProcessId proc;
  const Val& arg;
};

struct TermOutcome {
  BaseStates eps;
  Val value;
  friend bool operator==(const TermOutcome&, const TermOutcome&) = default;
};

struct StatementOutcome {
  Registers regs;
  BaseStates eps;
  Signal sig;
  friend bool operator==(const StatementOutcome&, const StatementOutcome&) = default;
};

struct FrameOutcome {
  BaseStates eps;
  ProcedureSignal sig;
  friend bool operator==(const FrameOutcome&, const FrameOutcome&) = default;
};

/// All outcomes of evaluating `e`, left to right. Branches only where a base
/// object is nondeterministic. Throws EvalError.
std::vector<TermOutcome> eval_term(const EvalContext& ctx, const Registers& regs,
                                   const BaseStates& eps, const Term& e);

std::vector<StatementOutcome> eval_statement(const EvalContext& ctx, const Registers& regs,
                                             const BaseStates& eps, const Statement& s);

/// Executes the line at f.pc. Throws EvalError (including PcOutOfRange).
std::vector<FrameOutcome> step_frame(const Implementation& impl, ProcessId proc,
                                     const BaseStates& eps, const Frame& f);

Frame initial_frame(const Implementation& impl, std::string op, Val arg);

}  // namespace lintrack

#endif  // LINTRACK_EVAL_HPP_

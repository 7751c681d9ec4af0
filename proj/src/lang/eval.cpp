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

#include "lintrack/eval.hpp"

#include <algorithm>

namespace lintrack {

namespace {

template <typename T>
void push_unique(std::vector<T>& out, T item) {
  if (std::find(out.begin(), out.end(), item) == out.end()) out.push_back(std::move(item));
}

[[noreturn]] void type_error(const std::string& what) { throw EvalError(EvalErrorKind::TypeMismatch, what); }

std::int64_t int_operand(const Val& v, BinaryOp op) {
  if (!v.is_int())
    type_error("operator " + std::string(binary_op_symbol(op)) + " expects integers, got " + v.to_string());
  return v.as_int();
}

bool bool_operand(const Val& v, std::string_view op) {
  if (!v.is_bool()) type_error("operator " + std::string(op) + " expects booleans, got " + v.to_string());
  return v.as_bool();
}

Val apply_binary(BinaryOp op, const Val& a, const Val& b, const IntRange& range) {
  auto checked = [&](std::optional<std::int64_t> r) {
    if (!r)
      throw EvalError(EvalErrorKind::Overflow, "integer overflow in " + a.to_string() + " " +
                                                   std::string(binary_op_symbol(op)) + " " + b.to_string());
    return Val::integer(*r);
  };
  switch (op) {
    case BinaryOp::Add: {
      std::int64_t x = int_operand(a, op);
      return checked(range.add(x, int_operand(b, op)));
    }
    case BinaryOp::Sub: {
      std::int64_t x = int_operand(a, op);
      return checked(range.sub(x, int_operand(b, op)));
    }
    case BinaryOp::Mul: {
      std::int64_t x = int_operand(a, op);
      return checked(range.mul(x, int_operand(b, op)));
    }
    case BinaryOp::Eq:
      return Val::boolean(a == b);
    case BinaryOp::Lt: {
      std::int64_t x = int_operand(a, op);
      return Val::boolean(x < int_operand(b, op));
    }
    case BinaryOp::And: {
      bool x = bool_operand(a, "&&");
      return Val::boolean(bool_operand(b, "&&") && x);
    }
    case BinaryOp::Or: {
      bool x = bool_operand(a, "||");
      return Val::boolean(bool_operand(b, "||") || x);
    }
  }
  type_error("unknown operator");
}

std::vector<TermOutcome> invoke_base(const EvalContext& ctx, const Registers& regs,
                                     const BaseStates& eps, const term::Invoke& call) {
  std::vector<TermOutcome> out;
  const auto& entry = ctx.impl.base_objects.at(call.object);
  for (auto& [eps1, arg] : eval_term(ctx, regs, eps, *call.arg)) {
    auto transitions = entry.type->delta(eps1.at(call.object), ctx.proc, call.op, arg);
    if (transitions.empty())
      throw EvalError(EvalErrorKind::BaseStuck, "base object " + call.object_name + " has no transition for " +
                                                    call.op + "(" + arg.to_string() + ") in state " +
                                                    eps1.at(call.object).to_string());
    for (auto& t : transitions) {
      BaseStates eps2 = eps1;
      eps2[call.object] = t.next;
      push_unique(out, TermOutcome{std::move(eps2), t.ret});
    }
  }
  return out;
}

template <typename F>
std::vector<TermOutcome> map_unary(const EvalContext& ctx, const Registers& regs, const BaseStates& eps,
                                   const Term& e, F f) {
  std::vector<TermOutcome> out;
  for (auto& o : eval_term(ctx, regs, eps, e)) push_unique(out, TermOutcome{std::move(o.eps), f(o.value)});
  return out;
}

template <typename F>
std::vector<TermOutcome> map_binary(const EvalContext& ctx, const Registers& regs, const BaseStates& eps,
                                    const Term& lhs, const Term& rhs, F f) {
  std::vector<TermOutcome> out;
  for (auto& l : eval_term(ctx, regs, eps, lhs))
    for (auto& r : eval_term(ctx, regs, l.eps, rhs)) push_unique(out, TermOutcome{std::move(r.eps), f(l.value, r.value)});
  return out;
}

}  // namespace

std::string_view eval_error_kind_name(EvalErrorKind kind) {
  switch (kind) {
    case EvalErrorKind::UnboundVariable:
      return "unbound_variable";
    case EvalErrorKind::TypeMismatch:
      return "type_mismatch";
    case EvalErrorKind::Overflow:
      return "overflow";
    case EvalErrorKind::BaseStuck:
      return "base_stuck";
    case EvalErrorKind::PcOutOfRange:
      return "pc_out_of_range";
  }
  return "?";
}

std::size_t hash_value(const Frame& f) {
  std::size_t seed = std::hash<std::string>{}(f.op);
  hash_combine(seed, f.pc);
  hash_combine(seed, f.arg.hash());
  for (const auto& r : f.registers) hash_combine(seed, r ? r->hash() : 0x51ed27);
  return seed;
}

std::vector<TermOutcome> eval_term(const EvalContext& ctx, const Registers& regs, const BaseStates& eps,
                                   const Term& e) {
  IntRange range(ctx.impl.int_bits);
  return std::visit(
      [&](const auto& n) -> std::vector<TermOutcome> {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, term::Var>) {
          if (n.var.slot >= regs.size() || !regs[n.var.slot])
            throw EvalError(EvalErrorKind::UnboundVariable, "variable " + n.var.name + " read before assignment");
          return {{eps, *regs[n.var.slot]}};
        } else if constexpr (std::is_same_v<N, term::IntLit>) {
          if (!range.contains(n.value))
            throw EvalError(EvalErrorKind::Overflow, "literal " + std::to_string(n.value) + " exceeds integer width");
          return {{eps, Val::integer(n.value)}};
        } else if constexpr (std::is_same_v<N, term::BoolLit>) {
          return {{eps, Val::boolean(n.value)}};
        } else if constexpr (std::is_same_v<N, term::UnitLit>) {
          return {{eps, Val::unit()}};
        } else if constexpr (std::is_same_v<N, term::ArgRef>) {
          return {{eps, ctx.arg}};
        } else if constexpr (std::is_same_v<N, term::ProjL> || std::is_same_v<N, term::ProjR>) {
          constexpr bool left = std::is_same_v<N, term::ProjL>;
          return map_unary(ctx, regs, eps, *n.e, [](const Val& v) {
            if (!v.is_pair()) type_error(std::string(left ? "fst" : "snd") + " of non-pair " + v.to_string());
            return left ? v.first() : v.second();
          });
        } else if constexpr (std::is_same_v<N, term::Binary>) {
          return map_binary(ctx, regs, eps, *n.lhs, *n.rhs,
                            [&](const Val& a, const Val& b) { return apply_binary(n.op, a, b, range); });
        } else if constexpr (std::is_same_v<N, term::Not>) {
          return map_unary(ctx, regs, eps, *n.e, [](const Val& v) { return Val::boolean(!bool_operand(v, "!")); });
        } else if constexpr (std::is_same_v<N, term::MkPair>) {
          return map_binary(ctx, regs, eps, *n.first, *n.second,
                            [](const Val& a, const Val& b) { return Val::pair(a, b); });
        } else {
          return invoke_base(ctx, regs, eps, n);
        }
      },
      e.node);
}

std::vector<StatementOutcome> eval_statement(const EvalContext& ctx, const Registers& regs, const BaseStates& eps,
                                             const Statement& s) {
  return std::visit(
      [&](const auto& n) -> std::vector<StatementOutcome> {
        using N = std::decay_t<decltype(n)>;
        std::vector<StatementOutcome> out;
        if constexpr (std::is_same_v<N, stmt::Seq>) {
          for (auto& first : eval_statement(ctx, regs, eps, *n.first)) {
            // Return and Goto both end the sequence.
            if (first.sig.kind != Signal::Kind::Continue) {
              push_unique(out, std::move(first));
              continue;
            }
            for (auto& second : eval_statement(ctx, first.regs, first.eps, *n.second))
              push_unique(out, std::move(second));
          }
        } else if constexpr (std::is_same_v<N, stmt::Assign>) {
          for (auto& o : eval_term(ctx, regs, eps, n.value)) {
            Registers next = regs;
            if (next.size() <= n.target.slot) next.resize(n.target.slot + 1);
            next[n.target.slot] = std::move(o.value);
            push_unique(out, StatementOutcome{std::move(next), std::move(o.eps), Signal::cont()});
          }
        } else if constexpr (std::is_same_v<N, stmt::If>) {
          for (auto& c : eval_term(ctx, regs, eps, n.cond)) {
            if (!c.value.is_bool()) type_error("if condition is not a boolean: " + c.value.to_string());
            const Statement& branch = c.value.as_bool() ? *n.then_branch : *n.else_branch;
            for (auto& o : eval_statement(ctx, regs, c.eps, branch)) push_unique(out, std::move(o));
          }
        } else if constexpr (std::is_same_v<N, stmt::Return>) {
          for (auto& o : eval_term(ctx, regs, eps, n.value))
            push_unique(out, StatementOutcome{regs, std::move(o.eps), Signal::ret(std::move(o.value))});
        } else if constexpr (std::is_same_v<N, stmt::Invoke>) {
          for (auto& o : invoke_base(ctx, regs, eps, n.call))
            push_unique(out, StatementOutcome{regs, std::move(o.eps), Signal::cont()});
        } else {
          out.push_back({regs, eps, Signal::go(n.target)});
        }
        return out;
      },
      s.node);
}

std::vector<FrameOutcome> step_frame(const Implementation& impl, ProcessId proc, const BaseStates& eps,
                                     const Frame& f) {
  const Procedure& body = impl.procedure(f.op);
  if (f.pc >= body.lines.size())
    throw EvalError(EvalErrorKind::PcOutOfRange, "procedure " + f.op + " has no line " + std::to_string(f.pc));
  EvalContext ctx{impl, proc, f.arg};
  std::vector<FrameOutcome> out;
  for (auto& o : eval_statement(ctx, f.registers, eps, body.lines[f.pc])) {
    if (o.sig.kind == Signal::Kind::Return) {
      push_unique(out, FrameOutcome{std::move(o.eps), ProcedureSignal::ret(std::move(o.sig.value))});
      continue;
    }
    Frame next{f.op, o.sig.kind == Signal::Kind::Goto ? o.sig.target : f.pc + 1, f.arg, std::move(o.regs)};
    push_unique(out, FrameOutcome{std::move(o.eps), ProcedureSignal::next_frame(std::move(next))});
  }
  return out;
}

Frame initial_frame(const Implementation& impl, std::string op, Val arg) {
  return Frame{std::move(op), 0, std::move(arg), Registers(impl.variables.size())};
}

}  // namespace lintrack

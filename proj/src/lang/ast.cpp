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

#include "lintrack/ast.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace lintrack {

std::string_view binary_op_symbol(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add:
      return "+";
    case BinaryOp::Sub:
      return "-";
    case BinaryOp::Mul:
      return "*";
    case BinaryOp::Eq:
      return "==";
    case BinaryOp::Lt:
      return "<";
    case BinaryOp::And:
      return "&&";
    case BinaryOp::Or:
      return "||";
  }
  return "?";
}

const Procedure& Implementation::procedure(std::string_view op) const {
  auto it = procedures.find(op);
  if (it == procedures.end()) throw std::out_of_range("no procedure for operation " + std::string(op));
  return it->second;
}

std::vector<Val> Implementation::initial_base_states() const {
  std::vector<Val> eps;
  eps.reserve(base_objects.size());
  for (const auto& e : base_objects) eps.push_back(e.initial);
  return eps;
}

bool operator==(const Implementation& a, const Implementation& b) {
  return a.name == b.name && a.object_spec == b.object_spec && a.base_decls == b.base_decls &&
         a.procedures == b.procedures && a.invoke_domain == b.invoke_domain && a.variables == b.variables &&
         a.int_bits == b.int_bits;
}

namespace {

struct Validator {
  const Implementation& impl;
  std::string op;
  std::size_t length = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw LoadError("procedure " + op + ": " + what);
  }

  void check_var(const VarRef& v) const {
    if (v.slot >= impl.variables.size() || impl.variables[v.slot] != v.name)
      fail("undeclared variable " + v.name);
  }

  void check_invoke(const term::Invoke& call) const {
    if (call.object >= impl.base_objects.size() || impl.base_objects.at(call.object).name != call.object_name)
      fail("unknown base object " + call.object_name);
    if (!impl.base_objects.at(call.object).type->has_op(call.op))
      fail("base object " + call.object_name + " has no operation " + call.op);
    term(*call.arg);
  }

  void term(const Term& t) const {
    std::visit(
        [&](const auto& n) {
          using N = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<N, term::Var>) {
            check_var(n.var);
          } else if constexpr (std::is_same_v<N, term::ProjL> || std::is_same_v<N, term::ProjR> ||
                               std::is_same_v<N, term::Not>) {
            term(*n.e);
          } else if constexpr (std::is_same_v<N, term::Binary>) {
            term(*n.lhs);
            term(*n.rhs);
          } else if constexpr (std::is_same_v<N, term::MkPair>) {
            term(*n.first);
            term(*n.second);
          } else if constexpr (std::is_same_v<N, term::Invoke>) {
            check_invoke(n);
          }
        },
        t.node);
  }

  void statement(const Statement& s) const {
    std::visit(
        [&](const auto& n) {
          using N = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<N, stmt::Seq>) {
            statement(*n.first);
            statement(*n.second);
          } else if constexpr (std::is_same_v<N, stmt::Assign>) {
            check_var(n.target);
            term(n.value);
          } else if constexpr (std::is_same_v<N, stmt::If>) {
            term(n.cond);
            statement(*n.then_branch);
            statement(*n.else_branch);
          } else if constexpr (std::is_same_v<N, stmt::Return>) {
            term(n.value);
          } else if constexpr (std::is_same_v<N, stmt::Invoke>) {
            check_invoke(n.call);
          } else {
            if (n.target >= length)
              fail("goto " + std::to_string(n.target) + " out of range (procedure has " + std::to_string(length) +
                   " lines)");
          }
        },
        s.node);
  }
};

}  // namespace

void finalize(Implementation& impl) {
  try {
    IntRange check_bits(impl.int_bits);
    (void)check_bits;
    auto instance = instantiate(impl.object_spec);
    impl.object_type = instance.type;
    impl.initial_state = instance.initial;
    impl.base_objects = ObjectRegistry{};
    for (const auto& decl : impl.base_decls) {
      auto base = instantiate(decl.spec);
      impl.base_objects.add(decl.name, base.type, base.initial);
    }
  } catch (const SpecError& e) {
    throw LoadError(e.what());
  } catch (const std::invalid_argument& e) {
    throw LoadError(e.what());
  }

  for (const auto& op : impl.object_type->ops())
    if (!impl.procedures.count(op)) throw LoadError("operation " + op + " of " + impl.name + " has no procedure");
  for (const auto& [op, body] : impl.procedures) {
    if (!impl.object_type->has_op(op))
      throw LoadError("procedure " + op + " is not an operation of " + impl.object_type->name());
    if (body.lines.empty()) throw LoadError("procedure " + op + " is empty");
    Validator v{impl, op, body.lines.size()};
    for (const auto& line : body.lines) v.statement(line);
    if (!impl.invoke_domain.count(op)) impl.invoke_domain[op] = impl.object_type->arg_domain(op);
  }
  for (const auto& [op, domain] : impl.invoke_domain)
    if (!impl.procedures.count(op)) throw LoadError("argument domain given for unknown operation " + op);
}

namespace {

void print_term(std::ostream& os, const Term& t);

void print_invoke(std::ostream& os, const term::Invoke& call) {
  os << "invoke " << call.object_name << '.' << call.op << '(';
  print_term(os, *call.arg);
  os << ')';
}

void print_term(std::ostream& os, const Term& t) {
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, term::Var>) {
          os << n.var.name;
        } else if constexpr (std::is_same_v<N, term::IntLit>) {
          os << n.value;
        } else if constexpr (std::is_same_v<N, term::BoolLit>) {
          os << (n.value ? "true" : "false");
        } else if constexpr (std::is_same_v<N, term::UnitLit>) {
          os << "unit";
        } else if constexpr (std::is_same_v<N, term::ArgRef>) {
          os << "Arg";
        } else if constexpr (std::is_same_v<N, term::ProjL>) {
          os << "fst(";
          print_term(os, *n.e);
          os << ')';
        } else if constexpr (std::is_same_v<N, term::ProjR>) {
          os << "snd(";
          print_term(os, *n.e);
          os << ')';
        } else if constexpr (std::is_same_v<N, term::Binary>) {
          os << '(';
          print_term(os, *n.lhs);
          os << ' ' << binary_op_symbol(n.op) << ' ';
          print_term(os, *n.rhs);
          os << ')';
        } else if constexpr (std::is_same_v<N, term::Not>) {
          os << "!(";
          print_term(os, *n.e);
          os << ')';
        } else if constexpr (std::is_same_v<N, term::MkPair>) {
          os << "pair(";
          print_term(os, *n.first);
          os << ", ";
          print_term(os, *n.second);
          os << ')';
        } else {
          print_invoke(os, n);
        }
      },
      t.node);
}

void print_block_items(std::ostream& os, const Statement& s);

// Statements inside a `do` block, where everything runs as one line.
void print_inner(std::ostream& os, const Statement& s) {
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, stmt::Seq>) {
          os << "do { ";
          print_block_items(os, s);
          os << "}";
        } else if constexpr (std::is_same_v<N, stmt::Assign>) {
          os << n.target.name << " := ";
          print_term(os, n.value);
        } else if constexpr (std::is_same_v<N, stmt::If>) {
          os << "if ";
          print_term(os, n.cond);
          os << " { ";
          print_block_items(os, *n.then_branch);
          os << "} else { ";
          print_block_items(os, *n.else_branch);
          os << "}";
        } else if constexpr (std::is_same_v<N, stmt::Return>) {
          os << "return ";
          print_term(os, n.value);
        } else if constexpr (std::is_same_v<N, stmt::Invoke>) {
          print_invoke(os, n.call);
        } else {
          os << "goto " << n.target;
        }
      },
      s.node);
}

// Flattens the right spine of a Seq into `a; b; c; `.
void print_block_items(std::ostream& os, const Statement& s) {
  const Statement* cur = &s;
  while (const auto* seq = std::get_if<stmt::Seq>(&cur->node)) {
    print_inner(os, *seq->first);
    os << "; ";
    cur = &*seq->second;
  }
  print_inner(os, *cur);
  os << "; ";
}

void print_line(std::ostream& os, const Statement& s) {
  if (std::holds_alternative<stmt::Seq>(s.node) || std::holds_alternative<stmt::If>(s.node)) {
    os << "do { ";
    print_block_items(os, s);
    os << "}";
  } else {
    print_inner(os, s);
  }
  os << ";";
}

void print_domain(std::ostream& os, const std::vector<Val>& domain) {
  os << '{';
  for (std::size_t i = 0; i < domain.size(); ++i) os << (i ? ", " : "") << domain[i];
  os << '}';
}

}  // namespace

std::string pretty_print(const Term& t) {
  std::ostringstream os;
  print_term(os, t);
  return os.str();
}

std::string pretty_print(const Statement& s) {
  std::ostringstream os;
  print_line(os, s);
  return os.str();
}

std::string pretty_print(const Implementation& impl) {
  std::ostringstream os;
  if (impl.int_bits != IntRange::kDefaultBits) os << "int_bits " << impl.int_bits << "\n\n";
  os << "object " << impl.name << " : " << impl.object_spec.to_string() << " uses {\n";
  for (const auto& decl : impl.base_decls) os << "  " << decl.name << " : " << decl.spec.to_string() << "\n";
  os << "}\n";
  for (const auto& [op, body] : impl.procedures) {
    os << "\nproc " << op << '(';
    auto it = impl.invoke_domain.find(op);
    if (it != impl.invoke_domain.end())
      print_domain(os, it->second);
    else
      os << '*';
    os << ") {\n";
    for (std::size_t i = 0; i < body.lines.size(); ++i) {
      os << "  ";
      print_line(os, body.lines[i]);
      os << "  # " << i << "\n";
    }
    os << "}\n";
  }
  return os.str();
}

}  // namespace lintrack

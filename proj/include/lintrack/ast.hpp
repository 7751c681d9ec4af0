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

#ifndef LINTRACK_AST_HPP_
#define LINTRACK_AST_HPP_

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "lintrack/object_type.hpp"
#include "lintrack/val.hpp"

namespace lintrack {

/// Shared immutable heap cell with value equality, for recursive syntax.
template <typename T>
class Box {
 public:
  Box(T value) : ptr_(std::make_shared<const T>(std::move(value))) {}  // NOLINT
  const T& operator*() const { return *ptr_; }
  const T* operator->() const { return ptr_.get(); }
  friend bool operator==(const Box& a, const Box& b) { return a.ptr_ == b.ptr_ || *a.ptr_ == *b.ptr_; }

 private:
  std::shared_ptr<const T> ptr_;
};

enum class BinaryOp { Add, Sub, Mul, Eq, Lt, And, Or };

std::string_view binary_op_symbol(BinaryOp op);

/// Local variable, resolved to a register slot of the implementation.
struct VarRef {
  std::size_t slot = 0;
  std::string name;
  friend bool operator==(const VarRef&, const VarRef&) = default;
};

struct Term;

namespace term {
struct Var { VarRef var; friend bool operator==(const Var&, const Var&) = default; };
struct IntLit { std::int64_t value; friend bool operator==(const IntLit&, const IntLit&) = default; };
struct BoolLit { bool value; friend bool operator==(const BoolLit&, const BoolLit&) = default; };
struct UnitLit { friend bool operator==(const UnitLit&, const UnitLit&) = default; };
struct ArgRef { friend bool operator==(const ArgRef&, const ArgRef&) = default; };
struct ProjL { Box<Term> e; friend bool operator==(const ProjL&, const ProjL&) = default; };
struct ProjR { Box<Term> e; friend bool operator==(const ProjR&, const ProjR&) = default; };
struct Binary {
  BinaryOp op;
  Box<Term> lhs;
  Box<Term> rhs;
  friend bool operator==(const Binary&, const Binary&) = default;
};
struct Not { Box<Term> e; friend bool operator==(const Not&, const Not&) = default; };
struct MkPair {
  Box<Term> first;
  Box<Term> second;
  friend bool operator==(const MkPair&, const MkPair&) = default;
};
/// invoke obj.op(arg) on a base object; `object` indexes the base registry.
struct Invoke {
  std::size_t object = 0;
  std::string object_name;
  std::string op;
  Box<Term> arg;
  friend bool operator==(const Invoke&, const Invoke&) = default;
};
}  // namespace term

struct Term {
  using Node = std::variant<term::Var, term::IntLit, term::BoolLit, term::UnitLit, term::ArgRef,
                            term::ProjL, term::ProjR, term::Binary, term::Not, term::MkPair,
                            term::Invoke>;
  Node node;

  template <typename N>
    requires(!std::is_same_v<std::decay_t<N>, Term>)
  Term(N n) : node(std::move(n)) {}  // NOLINT
  friend bool operator==(const Term&, const Term&) = default;
};

struct Statement;

namespace stmt {
struct Seq {
  Box<Statement> first;
  Box<Statement> second;
  friend bool operator==(const Seq&, const Seq&) = default;
};
struct Assign {
  VarRef target;
  Term value;
  friend bool operator==(const Assign&, const Assign&) = default;
};
struct If {
  Term cond;
  Box<Statement> then_branch;
  Box<Statement> else_branch;
  friend bool operator==(const If&, const If&) = default;
};
struct Return { Term value; friend bool operator==(const Return&, const Return&) = default; };
/// Invocation for effect only; the result is discarded.
struct Invoke { term::Invoke call; friend bool operator==(const Invoke&, const Invoke&) = default; };
struct Goto { std::size_t target; friend bool operator==(const Goto&, const Goto&) = default; };
}  // namespace stmt

struct Statement {
  using Node = std::variant<stmt::Seq, stmt::Assign, stmt::If, stmt::Return, stmt::Invoke, stmt::Goto>;
  Node node;

  template <typename N>
    requires(!std::is_same_v<std::decay_t<N>, Statement>)
  Statement(N n) : node(std::move(n)) {}  // NOLINT
  friend bool operator==(const Statement&, const Statement&) = default;
};

/// One statement per line; line numbers are indices.
struct Procedure {
  std::vector<Statement> lines;
  friend bool operator==(const Procedure&, const Procedure&) = default;
};

struct BaseObjectDecl {
  std::string name;
  BuiltinSpec spec;
  friend bool operator==(const BaseObjectDecl&, const BaseObjectDecl&) = default;
};

/// An implementation of one object using base objects.
///
/// Built by the parser or by hand; `finalize` instantiates the types and
/// validates the cross references.
struct Implementation {
  std::string name;
  BuiltinSpec object_spec;
  std::vector<BaseObjectDecl> base_decls;
  std::map<std::string, Procedure, std::less<>> procedures;
  /// Arguments enumerated when a process invokes each operation.
  std::map<std::string, std::vector<Val>, std::less<>> invoke_domain;
  std::vector<std::string> variables;
  int int_bits = IntRange::kDefaultBits;

  // Derived by finalize().
  ObjectTypePtr object_type;
  Val initial_state;
  ObjectRegistry base_objects;

  const Procedure& procedure(std::string_view op) const;
  std::vector<Val> initial_base_states() const;

  /// Structural equality of the source-level description.
  friend bool operator==(const Implementation& a, const Implementation& b);
};

class LoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Instantiates object types and validates the implementation. Throws LoadError.
void finalize(Implementation& impl);

/// Renders an implementation in the DSL; parse(pretty_print(i)) == i.
std::string pretty_print(const Implementation& impl);
std::string pretty_print(const Term& t);
std::string pretty_print(const Statement& s);

// Construction helpers for hand-built syntax.
namespace build {
inline Term var(std::size_t slot, std::string name) { return term::Var{{slot, std::move(name)}}; }
inline Term integer(std::int64_t n) { return term::IntLit{n}; }
inline Term boolean(bool b) { return term::BoolLit{b}; }
inline Term unit() { return term::UnitLit{}; }
inline Term arg() { return term::ArgRef{}; }
inline Term fst(Term e) { return term::ProjL{std::move(e)}; }
inline Term snd(Term e) { return term::ProjR{std::move(e)}; }
inline Term binary(BinaryOp op, Term a, Term b) { return term::Binary{op, std::move(a), std::move(b)}; }
inline Term negate(Term e) { return term::Not{std::move(e)}; }
inline Term pair(Term a, Term b) { return term::MkPair{std::move(a), std::move(b)}; }
inline Term invoke(std::size_t object, std::string object_name, std::string op, Term a) {
  return term::Invoke{object, std::move(object_name), std::move(op), std::move(a)};
}
inline Statement seq(Statement a, Statement b) { return stmt::Seq{std::move(a), std::move(b)}; }
inline Statement assign(std::size_t slot, std::string name, Term e) {
  return stmt::Assign{{slot, std::move(name)}, std::move(e)};
}
inline Statement if_(Term c, Statement a, Statement b) { return stmt::If{std::move(c), std::move(a), std::move(b)}; }
inline Statement ret(Term e) { return stmt::Return{std::move(e)}; }
inline Statement invoke_stmt(std::size_t object, std::string object_name, std::string op, Term a) {
  return stmt::Invoke{term::Invoke{object, std::move(object_name), std::move(op), std::move(a)}};
}
inline Statement go(std::size_t target) { return stmt::Goto{target}; }
}  // namespace build

}  // namespace lintrack

#endif  // LINTRACK_AST_HPP_

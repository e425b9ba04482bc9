#pragma once

// Terms and formulas of the arithmetic language <0, S, +, x, =>, extended
// with uninterpreted predicate and constant symbols for atomic-rule bases.
// Core connectives are ->, /\, forall, and bottom; negation, disjunction,
// existentials, < and bounded quantifiers are elaborated at parse time.

#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace pts {

using Nat = boost::multiprecision::cpp_int;

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  enum class Kind { Zero, Succ, Plus, Times, Var, Const };
  Kind kind;
  std::string name;  // Var / Const only
  TermPtr lhs, rhs;  // Succ uses lhs; Plus/Times use both
};

TermPtr mk_zero();
TermPtr mk_succ(TermPtr t);
TermPtr mk_plus(TermPtr a, TermPtr b);
TermPtr mk_times(TermPtr a, TermPtr b);
TermPtr mk_var(std::string name);
TermPtr mk_const(std::string name);

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  enum class Kind { Atom, Bot, Imp, And, Forall };
  Kind kind;
  std::string pred;           // Atom: predicate symbol ("=" for equality)
  std::vector<TermPtr> args;  // Atom
  FormulaPtr lhs, rhs;        // Imp/And; Forall body in lhs
  std::string var;            // Forall
};

FormulaPtr mk_atom(std::string pred, std::vector<TermPtr> args = {});
FormulaPtr mk_eq(TermPtr a, TermPtr b);
FormulaPtr mk_bot();
FormulaPtr mk_imp(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_and(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_forall(std::string var, FormulaPtr body);

// Derived forms, elaborated eagerly into the core.
FormulaPtr mk_neg(FormulaPtr a);                 // a -> bot
FormulaPtr mk_or(FormulaPtr a, FormulaPtr b);    // ~(~a /\ ~b)
FormulaPtr mk_exists(std::string var, FormulaPtr body);  // ~forall x ~body
FormulaPtr mk_less(TermPtr t, TermPtr s);        // exists w. t + w = s
// forall x (exists y (x + y = t) -> body); y is chosen fresh.
FormulaPtr mk_bounded_forall(std::string var, TermPtr bound, FormulaPtr body);
// ~forall x ((guard) -> ~body), the dual of the bounded universal.
FormulaPtr mk_bounded_exists(std::string var, TermPtr bound, FormulaPtr body);

bool term_equal(const TermPtr& a, const TermPtr& b);
bool formula_equal(const FormulaPtr& a, const FormulaPtr& b);

// Lexical convention: x, y, z, u, v, w with an optional decimal suffix are
// variables; every other identifier is a constant or predicate symbol.
bool is_variable_name(const std::string& name);

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what), position(pos) {}
  std::size_t position;
};

FormulaPtr parse_formula(std::string_view text);
TermPtr parse_term(std::string_view text);

std::string print_formula(const FormulaPtr& f);
std::string print_term(const TermPtr& t);

TermPtr numeral(const Nat& n);
TermPtr numeral(unsigned long long n);
// Returns the n with t = numeral(n), if t is a plain S...S(0) chain.
bool numeral_value(const TermPtr& t, Nat& out);

std::set<std::string> free_vars(const TermPtr& t);
std::set<std::string> free_vars(const FormulaPtr& f);
bool is_closed(const TermPtr& t);
bool is_closed(const FormulaPtr& f);

// Replaces free occurrences of var by the closed term t.
FormulaPtr substitute(const FormulaPtr& f, const std::string& var, const TermPtr& t);
TermPtr substitute(const TermPtr& term, const std::string& var, const TermPtr& t);

// Value of a closed, constant-free term under the standard interpretation.
Nat eval_closed_term(const TermPtr& t);

// True if the term mentions no Const and no predicate outside the austere
// arithmetic signature.
bool term_in_austere_signature(const TermPtr& t);

}  // namespace pts

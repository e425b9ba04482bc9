#pragma once

// Classification and evaluation of bounded-quantifier arithmetic.
//
// The core language has no primitive < or bounded quantifiers; both are
// standard abbreviations (t < s for "exists w. t + w = s", which under the
// natural-number semantics means t <= s, and forall x < t for
// "forall x. (exists y. x + y = t) -> ..."). The classifier and evaluator
// recognize the elaborated shapes structurally.

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "pts/syntax.hpp"

namespace pts {

// t <= s comparison (the elaboration of the inclusive t < s abbreviation).
struct LeqPattern {
  TermPtr left, right;
};
std::optional<LeqPattern> match_leq(const FormulaPtr& f);

// forall x (x <= bound -> body), or the strict variant with S(x) <= bound.
struct BoundedForallPattern {
  std::string var;
  TermPtr bound;
  bool strict = false;
  FormulaPtr body;
};
std::optional<BoundedForallPattern> match_bounded_forall(const FormulaPtr& f);

// exists x body, i.e. (forall x (body -> bot)) -> bot.
struct ExistsPattern {
  std::string var;
  FormulaPtr body;
};
std::optional<ExistsPattern> match_exists(const FormulaPtr& f);

enum class FormulaClass { Delta0, Sigma1, Beyond };

// Predicate atoms other than equality are treated as Delta0 primitives.
bool is_delta0(const FormulaPtr& f);
FormulaClass classify(const FormulaPtr& f);

struct BudgetExceeded : std::runtime_error {
  BudgetExceeded() : std::runtime_error("evaluation budget exceeded") {}
};
struct NotDelta0Error : std::runtime_error {
  explicit NotDelta0Error(const std::string& w) : std::runtime_error(w) {}
};

struct EvalOptions {
  std::uint64_t budget = 50'000'000;
  // Interpretation of predicate atoms other than equality.
  std::function<bool(const std::string& pred, const std::vector<Nat>& args)> oracle;
  // Optional functional solver: for a predicate atom P(a1..ak, x) whose
  // last argument is the quantified variable, reports whether P is
  // functional in x and if so the unique witness, if any. Used to
  // short-circuit bounded quantifiers over functional predicates (sequence
  // length and element lookup) whose ranges are astronomically large.
  std::function<bool(const std::string& pred, const std::vector<Nat>& args,
                     std::optional<Nat>& witness)>
      solver;
};

using Env = std::map<std::string, Nat>;

Nat eval_term(const TermPtr& t, const Env& env);

// Truth over the naturals of a Delta0 formula under env (closing all free
// variables). Throws NotDelta0Error on unbounded quantifiers, BudgetExceeded
// when the iteration budget runs out.
bool eval_delta0_formula(const FormulaPtr& f, const Env& env, const EvalOptions& opts);
bool eval_delta0_sentence(const FormulaPtr& f, const EvalOptions& opts);

}  // namespace pts

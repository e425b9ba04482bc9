#include "doctest.h"
#include "pts/syntax.hpp"

using namespace pts;

TEST_CASE("parser round trips through the printer") {
  const char* inputs[] = {
      "0=0",
      "S(0) = S(0)",
      "x + 0 = x",
      "x * S(y) = x * y + x",
      "0=0 -> 0=0",
      "(0=0 -> bot) -> bot",
      "0=0 /\\ 0=S(0)",
      "forall x. x = x",
      "forall x. forall y. (S(x)=S(y) -> x=y)",
      "forall x < S(S(0)). x + x = x * S(S(0))",
      "A",
      "P(s) -> M(s)",
  };
  for (const char* s : inputs) {
    FormulaPtr f = parse_formula(s);
    FormulaPtr g = parse_formula(print_formula(f));
    CAPTURE(s);
    CHECK(formula_equal(f, g));
  }
}

TEST_CASE("printer output reparses to the same tree, exhaustively to depth 2") {
  std::vector<FormulaPtr> pool = {mk_eq(mk_zero(), mk_zero()),
                                  mk_eq(mk_var("x"), mk_succ(mk_zero())), mk_bot()};
  std::size_t prev = 0;
  for (int d = 0; d < 2; ++d) {
    std::size_t n = pool.size();
    for (std::size_t i = prev; i < n; ++i) pool.push_back(mk_forall("x", pool[i]));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        pool.push_back(mk_imp(pool[i], pool[j]));
        pool.push_back(mk_and(pool[i], pool[j]));
      }
    prev = n;
  }
  for (const auto& f : pool) {
    FormulaPtr g = parse_formula(print_formula(f));
    CHECK(formula_equal(f, g));
  }
}

TEST_CASE("unicode aliases") {
  CHECK(formula_equal(parse_formula("0=0 → ⊥"), parse_formula("0=0 -> bot")));
  CHECK(formula_equal(parse_formula("∀x. x=x"), parse_formula("forall x. x=x")));
  CHECK(formula_equal(parse_formula("0=0 ∧ 0=0"), parse_formula("0=0 /\\ 0=0")));
}

TEST_CASE("precedence: implication is right associative and binds loosest") {
  FormulaPtr f = parse_formula("0=0 -> 0=0 -> bot");
  REQUIRE(f->kind == Formula::Kind::Imp);
  CHECK(f->rhs->kind == Formula::Kind::Imp);
  FormulaPtr g = parse_formula("0=0 /\\ 0=0 -> bot");
  CHECK(g->kind == Formula::Kind::Imp);
  CHECK(g->lhs->kind == Formula::Kind::And);
}

TEST_CASE("numerals") {
  CHECK(term_equal(numeral(0ull), mk_zero()));
  CHECK(term_equal(numeral(2ull), mk_succ(mk_succ(mk_zero()))));
  Nat v;
  CHECK(numeral_value(numeral(17ull), v));
  CHECK(v == 17);
  CHECK_FALSE(numeral_value(mk_var("x"), v));
  CHECK(formula_equal(parse_formula("2 = S(1)"),
                      mk_eq(numeral(2ull), mk_succ(numeral(1ull)))));
}

TEST_CASE("free variables and substitution") {
  FormulaPtr f = parse_formula("forall x. x = y");
  CHECK(free_vars(f) == std::set<std::string>{"y"});
  CHECK_FALSE(is_closed(f));
  FormulaPtr g = substitute(f, "y", numeral(1ull));
  CHECK(is_closed(g));
  CHECK(formula_equal(g, parse_formula("forall x. x = S(0)")));
  // bound occurrences are untouched
  FormulaPtr h = substitute(f, "x", numeral(1ull));
  CHECK(formula_equal(h, f));
}

TEST_CASE("closed term evaluation") {
  CHECK(eval_closed_term(parse_term("S(S(0)) * S(S(S(0))) + S(0)")) == 7);
  CHECK_THROWS(eval_closed_term(parse_term("x + 0")));
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(parse_formula("0 = "), ParseError);
  CHECK_THROWS_AS(parse_formula("forall . x=x"), ParseError);
  CHECK_THROWS_AS(parse_formula(""), ParseError);
}

TEST_CASE("variable name convention") {
  CHECK(is_variable_name("x"));
  CHECK(is_variable_name("w3"));
  CHECK_FALSE(is_variable_name("a"));
  CHECK_FALSE(is_variable_name("xa"));
  // lowercase identifiers outside the variable letters parse as constants
  CHECK(parse_term("s")->kind == Term::Kind::Const);
  CHECK(parse_term("y10")->kind == Term::Kind::Var);
}

#include "doctest.h"
#include "pts/arithmetize.hpp"

using namespace pts;

namespace {
Env env2(const Nat& x, const Nat& y) { return Env{{"x", x}, {"y", y}}; }
}  // namespace

TEST_CASE("built predicates classify as expected") {
  TermPtr x = mk_var("x"), y = mk_var("y");
  CHECK(is_delta0(build_form(x)));
  CHECK(is_delta0(build_seq(x, y)));
  CHECK(is_delta0(build_line(x, y)));
  CHECK(is_delta0(build_prf(x, y)));
  CHECK(classify(build_prov(x)) == FormulaClass::Sigma1);
  // the pure expansions stay bounded
  CHECK(is_delta0(expand_pure(build_prf(x, y))));
  CHECK(is_delta0(seq_def(x, y)));
  CHECK(is_delta0(elt_def(x, y, mk_var("z"))));
  // consistency is the negation of a Sigma1 sentence
  FormulaPtr con = build_con(q_theory());
  CHECK(is_closed(con));
  CHECK(classify(con) == FormulaClass::Beyond);
}

TEST_CASE("the oracle decides the six predicates") {
  const Theory& q = q_theory();
  Code c00 = code_formula(parse_formula("0=0"));
  Code c01 = code_formula(parse_formula("0=S(0)"));
  Code cimp = code_formula(parse_formula("0=0 -> 0=S(0)"));
  Code call = code_formula(parse_formula("forall x. 0=0"));

  CHECK(arith_oracle(q, "Form", {c00}));
  CHECK_FALSE(arith_oracle(q, "Form", {Nat(0)}));
  // axiomhood: theory axioms and logical axioms, and nothing else
  CHECK(arith_oracle(q, "Ax", {code_formula(q.axioms[0].second)}));
  CHECK(arith_oracle(q, "Ax", {c00}));  // 0=0 instantiates EqRefl
  CHECK_FALSE(arith_oracle(q, "Ax", {c01}));
  // modus ponens and generalization as relations on codes
  CHECK(arith_oracle(q, "MP", {c00, cimp, c01}));
  CHECK_FALSE(arith_oracle(q, "MP", {c01, cimp, c01}));
  CHECK_FALSE(arith_oracle(q, "MP", {c00, c00, c01}));
  CHECK(arith_oracle(q, "Gen", {c00, call}));
  CHECK_FALSE(arith_oracle(q, "Gen", {c01, call}));
  // sequences
  Code p = code_sequence({Nat(4), Nat(9)});
  CHECK(arith_oracle(q, "Seq", {p, Nat(2)}));
  CHECK_FALSE(arith_oracle(q, "Seq", {p, Nat(3)}));
  CHECK(arith_oracle(q, "Elt", {p, Nat(1), Nat(9)}));
  CHECK_FALSE(arith_oracle(q, "Elt", {p, Nat(2), Nat(9)}));
  CHECK_THROWS(arith_oracle(q, "Nope", {Nat(1)}));
}

TEST_CASE("oracle and pure evaluation agree on Seq and Elt") {
  const Theory& q = q_theory();
  TermPtr x = mk_var("x"), y = mk_var("y");
  std::vector<std::vector<Code>> seqs = {{}, {Nat(3)}, {Nat(0), Nat(7)}, {Nat(5), Nat(1), Nat(2)}};
  // The pure expansion iterates its unpairing existentials literally, so it
  // is only feasible on small codes; the oracle layer covers the big ones.
  const Nat pure_limit(100000);
  for (const auto& xs : seqs) {
    Code p = code_sequence(xs);
    bool pure_ok = p < pure_limit;
    for (Nat n = 0; n <= 4; ++n) {
      bool want = (n == xs.size());
      CAPTURE(static_cast<unsigned long long>(p));
      CHECK(eval_delta0(build_seq(x, y), env2(p, n), ArithMode::Oracle, q) == want);
      if (pure_ok)
        CHECK(eval_delta0(build_seq(x, y), env2(p, n), ArithMode::Pure, q) == want);
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
      Env e{{"x", p}, {"y", Nat(i)}, {"z", xs[i]}};
      FormulaPtr el = build_elt(mk_var("x"), mk_var("y"), mk_var("z"));
      CHECK(eval_delta0(el, e, ArithMode::Oracle, q));
      if (pure_ok) CHECK(eval_delta0(el, e, ArithMode::Pure, q));
      e["z"] = xs[i] + 1;
      CHECK_FALSE(eval_delta0(el, e, ArithMode::Oracle, q));
      if (pure_ok) CHECK_FALSE(eval_delta0(el, e, ArithMode::Pure, q));
    }
  }
  // arbitrary naturals are sequences too; the two layers agree on them
  for (Nat p = 0; p < 40; ++p) {
    Nat n = seq_len(p);
    CHECK(eval_delta0(build_seq(x, y), env2(p, n), ArithMode::Pure, q));
  }
}

TEST_CASE("Prf holds of a coded proof and fails on mutations") {
  const Theory& q = q_theory();
  Proof p;
  p.lines.push_back({parse_formula("0=0"), {}});
  REQUIRE(check_proof(p, q).ok);
  Code cp = code_proof(p);
  Code cc = code_formula(parse_formula("0=0"));
  FormulaPtr prf = build_prf(mk_var("x"), mk_var("y"));
  CHECK(eval_delta0(prf, env2(cp, cc), ArithMode::Oracle, q));
  // wrong conclusion
  CHECK_FALSE(eval_delta0(prf, env2(cp, code_formula(parse_formula("0=S(0)")))
                          , ArithMode::Oracle, q));
  // a sequence whose one line is no axiom
  Code bad = code_sequence({code_formula(parse_formula("0=S(0)"))});
  CHECK_FALSE(eval_delta0(prf, env2(bad, code_formula(parse_formula("0=S(0)")))
                          , ArithMode::Oracle, q));
  // the empty sequence proves nothing
  CHECK_FALSE(eval_delta0(prf, env2(code_sequence({}), cc), ArithMode::Oracle, q));
  // garbage that codes no formula
  CHECK_FALSE(eval_delta0(prf, env2(code_sequence({Nat(0)}), Nat(0)), ArithMode::Oracle, q));
}

TEST_CASE("Line checks local correctness inside a sequence") {
  const Theory& q = q_theory();
  // lines: [0=0 (axiom), forall x. 0=0 (gen of 1)]
  Code l1 = code_formula(parse_formula("0=0"));
  Code l2 = code_formula(parse_formula("forall x. 0=0"));
  Code p = code_sequence({l1, l2});
  FormulaPtr line = build_line(mk_var("x"), mk_var("y"));
  CHECK(eval_delta0(line, env2(p, Nat(0)), ArithMode::Oracle, q));
  CHECK(eval_delta0(line, env2(p, Nat(1)), ArithMode::Oracle, q));
  // swap the lines: the generalization now cites nothing before it, and the
  // bare forall is not an axiom, so line 0 fails while line 1 still passes
  Code pr = code_sequence({l2, l1});
  CHECK_FALSE(axiom_name(parse_formula("forall x. 0=0"), q).has_value());
  CHECK_FALSE(eval_delta0(line, env2(pr, Nat(0)), ArithMode::Oracle, q));
  CHECK(eval_delta0(line, env2(pr, Nat(1)), ArithMode::Oracle, q));
}

TEST_CASE("crosscheck ties the layers together") {
  const Theory& q = q_theory();
  Proof p = prove_numeral_atom(Nat(1), Nat(1));
  CrosscheckReport r = crosscheck(p, q);
  CHECK(r.ok);
  CHECK(r.meta_ok);
  CHECK(r.arith_prf);
  CHECK(r.agree);
  REQUIRE(r.prefixes.size() == p.size());
  for (const auto& pc : r.prefixes) {
    CHECK(pc.meta_ok);
    CHECK(pc.arith_prf);
    CHECK(pc.len_ok);
    CHECK(pc.agree);
  }
  // a corrupted proof still "agrees": both layers reject it
  Proof bad = p;
  bad.lines.back().formula = parse_formula("0=S(0)");
  CrosscheckReport rb = crosscheck(bad, q);
  CHECK_FALSE(rb.meta_ok);
  CHECK_FALSE(rb.arith_prf);
  CHECK(rb.agree);
}

TEST_CASE("consistency statement shape") {
  const Theory& q = q_theory();
  FormulaPtr con = build_con(q);
  // Con = Prov(code of bot) -> bot
  REQUIRE(con->kind == Formula::Kind::Imp);
  CHECK(con->rhs->kind == Formula::Kind::Bot);
  auto ex = match_exists(con->lhs);
  REQUIRE(ex.has_value());
  CHECK(is_delta0(ex->body));
  // the mentioned code is the code of bot
  CHECK(code_formula(mk_bot()) == Nat(6));
  // reparse stability
  FormulaPtr re = parse_formula(print_formula(con));
  CHECK(formula_equal(re, con));
  CHECK(classify(re) == FormulaClass::Beyond);
}

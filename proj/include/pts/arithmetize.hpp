#pragma once

// The object-level proof predicates: Seq, Elt, Form, Ax, MP, Gen as atoms
// over codes, the derived Line / Prf / Prov / Con formulas, and their
// evaluation over the naturals.
//
// Two evaluation layers: in oracle mode the six predicate atoms are decided
// by the coding and proof-checking modules; in pure mode Seq and Elt are
// first expanded to raw bounded arithmetic (expand_pure) and only the
// syntactic predicates Form/Ax/MP/Gen remain oracle-decided, since their
// pure expansions are not desk-checkable at any scale.

#include <cstdint>

#include "pts/coding.hpp"
#include "pts/delta0.hpp"
#include "pts/hilbert.hpp"
#include "pts/syntax.hpp"

namespace pts {

enum class ArithMode { Oracle, Pure };

// Predicate atoms over code-valued terms.
FormulaPtr build_form(TermPtr x);
FormulaPtr build_ax(TermPtr x);
FormulaPtr build_mp(TermPtr a, TermPtr b, TermPtr c);
FormulaPtr build_gen(TermPtr a, TermPtr c);
FormulaPtr build_seq(TermPtr p, TermPtr n);
FormulaPtr build_elt(TermPtr p, TermPtr i, TermPtr y);

// Raw bounded-arithmetic definitions of Seq and Elt (beta-function coding).
FormulaPtr seq_def(TermPtr p, TermPtr n);
FormulaPtr elt_def(TermPtr p, TermPtr i, TermPtr y);
// Replaces every Seq/Elt atom in f by its raw definition.
FormulaPtr expand_pure(const FormulaPtr& f);

// Line(p,i): line i of the coded sequence p is locally correct.
FormulaPtr build_line(TermPtr p, TermPtr i);
// Prf(p,x): p codes a proof whose last line is x. The existential over the
// sequence length is bounded by p itself (the length is at most the first
// pairing component, which the pairing function dominates).
FormulaPtr build_prf(TermPtr p, TermPtr x);
// Prov(x) := exists p Prf(p,x); Sigma1.
FormulaPtr build_prov(TermPtr x);
// Con(T) := ~Prov(code of bot); closed. The theory enters through the Ax
// oracle, not the formula shape.
FormulaPtr build_con(const Theory& t);

// Meta-level decision of the six predicates; throws on other names.
bool arith_oracle(const Theory& t, const std::string& pred, const std::vector<Nat>& args);

bool eval_delta0(const FormulaPtr& f, const Env& env, ArithMode mode, const Theory& t,
                 std::uint64_t budget = 50'000'000);

struct PrefixCheck {
  std::size_t k = 0;
  bool meta_ok = false;   // prefix passes check_proof
  bool arith_prf = false; // Prf(code of prefix, code of its last line)
  bool len_ok = false;    // seq_len(pref_code) = k, meta and arithmetized
  bool agree = false;
};
struct CrosscheckReport {
  bool meta_ok = false;   // check_proof on the full proof
  bool arith_prf = false; // Prf(code(p), code(conclusion))
  bool agree = false;
  std::vector<PrefixCheck> prefixes;
  bool ok = false;        // every agreement holds
};
CrosscheckReport crosscheck(const Proof& p, const Theory& t,
                            std::uint64_t budget = 50'000'000);

// Code of a whole proof: the sequence of its line codes.
Code code_proof(const Proof& p);

}  // namespace pts

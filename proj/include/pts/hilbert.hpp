#pragma once

// Hilbert-style proof system: a fixed classical axiom-schema set plus modus
// ponens and unrestricted generalization, theories given by finite axiom
// lists (Robinson's Q among them), a proof checker, and generated proofs
// deciding closed numeral equalities.

#include <optional>
#include <string>
#include <vector>

#include "pts/delta0.hpp"
#include "pts/syntax.hpp"

namespace pts {

struct Justification {
  enum class Kind { Axiom, MP, Gen };
  Kind kind = Kind::Axiom;
  std::string schema;          // schema id or theory axiom name, when known
  std::size_t i = 0, j = 0;    // 1-based premise line numbers (MP: i, j; Gen: i)
};

struct ProofLine {
  FormulaPtr formula;
  std::optional<Justification> hint;
};

struct Proof {
  std::vector<ProofLine> lines;  // 1-based in all reporting and hints
  std::size_t size() const { return lines.size(); }
  const FormulaPtr& conclusion() const { return lines.back().formula; }
};

struct Theory {
  std::string name;
  std::vector<std::pair<std::string, FormulaPtr>> axioms;  // name -> axiom
};

// Robinson arithmetic Q: the standard seven axioms Q1..Q7.
const Theory& q_theory();
Theory theory_from_axioms(std::string name, const std::vector<FormulaPtr>& axioms);

// Schema id ("K", "S", "DNE", "AndI", "AndE1", "AndE2", "ForallInst",
// "ForallDist", "ForallVac", "EqRefl", "EqSym", "EqTrans", "EqCong") if the
// formula instantiates one of the fixed logical schemas.
std::optional<std::string> logical_axiom(const FormulaPtr& f);
// Logical schema id or theory axiom name.
std::optional<std::string> axiom_name(const FormulaPtr& f, const Theory& t);

struct LineReport {
  Justification used;
  bool hint_mismatch = false;  // a hint was present but did not justify the line
};
struct CheckResult {
  bool ok = false;
  std::size_t bad_line = 0;  // 1-based; 0 when ok
  std::string reason;        // "not-axiom", "bad-mp", "bad-gen", "no-justification"
  std::vector<LineReport> lines;  // filled up to and including the first bad line
};

CheckResult check_proof(const Proof& p, const Theory& t);
// check_proof that throws std::runtime_error on failure and returns the
// conclusion on success.
FormulaPtr checked_conclusion(const Proof& p, const Theory& t);

// First k lines, 1 <= k <= len(p).
Proof prefix(const Proof& p, std::size_t k);

// A checking Q-proof of m=n (as numerals) when m = n, of ~(m=n) otherwise.
Proof prove_numeral_atom(const Nat& m, const Nat& n, const Nat& bound = 100000);

// Truth over the naturals of a closed bounded-quantifier sentence in the
// austere language (no predicate symbols beyond equality).
bool eval_delta0_truth(const FormulaPtr& f, std::uint64_t budget = 50'000'000);

// Proof file format: one line per step, `k: FORMULA` optionally followed by
// `# axiom` / `# mp j,l` / `# gen j`; blank and full-comment lines ignored.
Proof parse_proof(const std::string& text);
std::string serialize_proof(const Proof& p);

}  // namespace pts

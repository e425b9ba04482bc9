#pragma once

// The support relation over a finite vocabulary, and maxiconsistent-base
// machinery.
//
// Support in a base depends on the base only through its induced closure
// operator X |-> (atoms derivable from the base extended with facts X), and
// the bases extending B realize exactly the closure operators dominating
// B's. The decision procedure therefore runs over the finite lattice of
// closure operators (Moore families) on the atom universe instead of the
// exponentially redundant rule universe; the two formulations agree, which
// the test suite checks against a direct rule-set enumeration.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "pts/base.hpp"
#include "pts/syntax.hpp"

namespace pts {

// One bit per closure operator.
struct SupportVec {
  std::vector<std::uint64_t> words;
  bool test(int i) const { return (words[i >> 6] >> (i & 63)) & 1; }
  void set(int i) { words[i >> 6] |= std::uint64_t(1) << (i & 63); }
  bool operator==(const SupportVec&) const = default;
  auto operator<=>(const SupportVec&) const = default;
};

class SupportUniverse {
 public:
  explicit SupportUniverse(VocabularyPtr vocab, bool forall_includes_reserve_terms = true);

  const Vocabulary& vocab() const { return *vocab_; }
  int num_ops() const { return static_cast<int>(cl_.size()); }

  // Index of the closure operator induced by a base over this vocabulary.
  int op_of_base(const Base& b) const;
  int empty_base_op() const { return identity_op_; }

  bool op_consistent(int op) const;
  bool op_ge(int i, int j) const;  // operator i dominates operator j
  std::uint32_t op_closure(int op, std::uint32_t facts) const { return cl_[op][facts]; }
  std::uint32_t op_derivable(int op) const { return cl_[op][0]; }

  // Support vector of a closed formula: one verdict per operator. Memoized.
  const SupportVec& vec(const FormulaPtr& f);

  // Pointwise clause combinators on support vectors; vec() is built from
  // these and experiments use them to enumerate semantic classes directly.
  SupportVec vec_atom(int atom_idx) const;
  SupportVec vec_bot() const;
  SupportVec vec_top() const;
  SupportVec vec_and(const SupportVec& a, const SupportVec& b) const;
  SupportVec vec_imp(const SupportVec& a, const SupportVec& b) const;
  SupportVec vec_neg(const SupportVec& a) const { return vec_imp(a, vec_bot()); }
  SupportVec vec_or(const SupportVec& a, const SupportVec& b) const {
    return vec_neg(vec_and(vec_neg(a), vec_neg(b)));
  }

  bool supports(const Base& b, const FormulaPtr& f);
  bool supports_op(int op, const FormulaPtr& f);
  // The (Inf) clause: every extension supporting all of delta supports f.
  bool supports_under(const Base& b, const std::vector<FormulaPtr>& delta, const FormulaPtr& f);
  bool supports_under_op(int op, const std::vector<FormulaPtr>& delta, const FormulaPtr& f);
  // Validity: support under no antecedent commitments, in the empty base.
  bool valid(const std::vector<FormulaPtr>& gamma, const FormulaPtr& f);

  bool is_consistent(const Base& b);
  bool is_maxiconsistent(const Base& b);
  std::vector<int> maxiconsistent_ops() const;

  // A base realizing the given operator: every rule (P => c) with c in the
  // closure of P.
  Base canonical_base(int op) const;

  // A maxiconsistent extension of b that still fails to support f.
  // Precondition: b does not support f. Throws if no extension exists
  // within the finite rule universe.
  Base extend_to_maxiconsistent(const Base& b, const FormulaPtr& f);

  // All maxiconsistent bases, one canonical representative per
  // support-equivalence class.
  std::vector<Base> enumerate_maxiconsistent() const;

 private:
  void enumerate_operators();
  void check_vocab(const Base& b) const;

  VocabularyPtr vocab_;
  bool forall_reserve_;
  int n_atoms_;
  std::uint32_t full_;
  // cl_[op][facts] = closure of the fact set under operator op.
  std::vector<std::vector<std::uint32_t>> cl_;
  std::vector<std::uint32_t> family_;  // fixed-point sets of each operator
  std::map<std::uint32_t, int> family_index_;
  std::vector<SupportVec> ups_;    // ups_[j] bit i set iff operator i >= j
  std::vector<SupportVec> downs_;  // downs_[j] bit i set iff operator i <= j
  int identity_op_ = -1;
  std::map<std::string, SupportVec> memo_;
};

}  // namespace pts

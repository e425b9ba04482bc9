#pragma once

// Atomic-rule bases over a finite vocabulary, and the derivability relation
// computed as a least fixpoint of rule application.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pts/syntax.hpp"

namespace pts {

// A ground atom: predicate symbol applied to closed terms.
struct Atom {
  std::string pred;
  std::vector<TermPtr> args;

  std::string key() const;  // canonical printed form, used for identity
  bool operator==(const Atom& o) const { return key() == o.key(); }
};

Atom atom_from_formula(const FormulaPtr& f);  // throws if not a ground atom
FormulaPtr atom_to_formula(const Atom& a);
Atom parse_atom(std::string_view text);

// The finite stage on which support is decided: predicates, closed terms,
// and a reserve of fresh symbols unused by any queried formula.
class Vocabulary {
 public:
  struct Pred {
    std::string name;
    int arity = 0;
  };

  Vocabulary() = default;
  Vocabulary(std::vector<Pred> preds, std::vector<TermPtr> terms, int reserve = 0,
             std::vector<TermPtr> reserve_terms = {});

  const std::vector<Pred>& predicates() const { return preds_; }
  const std::vector<TermPtr>& terms() const { return terms_; }
  const std::vector<TermPtr>& reserve_terms() const { return reserve_terms_; }
  int reserve() const { return reserve_; }

  // Instantiation terms for the universal quantifier.
  std::vector<TermPtr> forall_terms(bool include_reserve_terms) const;

  // The atom universe: every predicate applied to every tuple of vocabulary
  // terms (including reserve terms), plus one fresh nullary atom per unit of
  // reserve. Order is fixed and reproducible.
  const std::vector<Atom>& atoms() const { return atoms_; }
  std::optional<int> atom_index(const Atom& a) const;
  std::size_t size() const { return atoms_.size(); }

 private:
  void build_universe();
  std::vector<Pred> preds_;
  std::vector<TermPtr> terms_;
  std::vector<TermPtr> reserve_terms_;
  int reserve_ = 0;
  std::vector<Atom> atoms_;
  std::map<std::string, int> index_;
};

using VocabularyPtr = std::shared_ptr<const Vocabulary>;

// Finite premise set, atom conclusion; all atoms ground and in-vocabulary.
struct AtomicRule {
  std::vector<Atom> premises;
  Atom conclusion;
};

struct RuleSchema {
  std::vector<Atom> premises;  // may contain $-prefixed placeholder constants
  Atom conclusion;
};

std::vector<AtomicRule> instantiate(const RuleSchema& schema, const Vocabulary& v);

class Base {
 public:
  Base(VocabularyPtr vocab, std::vector<AtomicRule> rules);

  const Vocabulary& vocab() const { return *vocab_; }
  VocabularyPtr vocab_ptr() const { return vocab_; }
  const std::vector<AtomicRule>& rules() const { return rules_; }

  // Rules as (premise bitmask, conclusion index) over the atom universe.
  const std::vector<std::pair<std::uint32_t, int>>& rule_masks() const { return masks_; }

 private:
  VocabularyPtr vocab_;
  std::vector<AtomicRule> rules_;
  std::vector<std::pair<std::uint32_t, int>> masks_;
};

enum class OutOfVocabulary { Error, False };

// Least fixpoint of rule application; the set of derivable atoms.
std::vector<Atom> closure(const Base& b);
std::uint32_t closure_mask(const Base& b);
// Closure of the base extended with the facts in the given atom mask.
std::uint32_t closure_mask_with_facts(const Base& b, std::uint32_t facts);

bool derives(const Base& b, const Atom& a, OutOfVocabulary policy = OutOfVocabulary::Error);

struct Derivation {
  Atom root;
  std::vector<Derivation> children;  // empty for a Ref step
};

std::optional<Derivation> derivation_tree(const Base& b, const Atom& a);
// Independent re-check: every node is licensed by some rule of the base.
bool check_derivation(const Base& b, const Derivation& d);

// Base DSL: '#' comments; 'vocab:', 'terms:', 'reserve:', 'reserve-terms:'
// headers; 'rule: P1, P2 => C' lines (schemas use $-placeholders and are
// expanded over the vocabulary's terms at load time).
Base load_base(const std::string& text);
Base load_base_file(const std::string& path);
std::string serialize_base(const Base& b);

}  // namespace pts

#include <vector>

#include "doctest.h"
#include "pts/support.hpp"

using namespace pts;

namespace {

VocabularyPtr prop_vocab(int n, int reserve = 0) {
  static const char* names[] = {"A", "B", "C", "D"};
  std::vector<Vocabulary::Pred> preds;
  for (int i = 0; i < n; ++i) preds.push_back({names[i], 0});
  return std::make_shared<Vocabulary>(std::move(preds), std::vector<TermPtr>{}, reserve);
}

// The full rule universe over a propositional vocabulary: every premise set
// paired with every conclusion atom.
std::vector<AtomicRule> rule_universe(const Vocabulary& v) {
  const auto& atoms = v.atoms();
  const int n = static_cast<int>(atoms.size());
  std::vector<AtomicRule> out;
  for (int prem = 0; prem < (1 << n); ++prem)
    for (int c = 0; c < n; ++c) {
      AtomicRule r;
      for (int i = 0; i < n; ++i)
        if (prem & (1 << i)) r.premises.push_back(atoms[i]);
      r.conclusion = atoms[c];
      out.push_back(std::move(r));
    }
  return out;
}

// A closed pool of propositional formulas where every compound's operands are
// themselves pool members, so a naive evaluator can memoize by index.
struct Pool {
  struct Node {
    FormulaPtr f;
    int lhs = -1, rhs = -1;
  };
  std::vector<Node> nodes;
};

Pool prop_pool(const Vocabulary& v, int depth) {
  Pool p;
  for (const auto& a : v.atoms()) p.nodes.push_back({atom_to_formula(a)});
  p.nodes.push_back({mk_bot()});
  std::size_t prev = 0;
  for (int d = 0; d < depth; ++d) {
    std::size_t n = p.nodes.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i < prev && j < prev) continue;
        int li = static_cast<int>(i), rj = static_cast<int>(j);
        p.nodes.push_back({mk_imp(p.nodes[i].f, p.nodes[j].f), li, rj});
        p.nodes.push_back({mk_and(p.nodes[i].f, p.nodes[j].f), li, rj});
      }
    prev = n;
  }
  return p;
}

// Deliberately naive support decision, straight from the defining clauses:
// the implication clause enumerates every rule-set extension of the base.
// The operator engine must agree with this on the nose.
struct NaiveSupport {
  VocabularyPtr vocab;
  std::vector<AtomicRule> universe;
  const Pool& pool;
  std::vector<signed char> memo;  // -1 unknown, else 0/1; [mask * |pool| + idx]

  NaiveSupport(VocabularyPtr v, const Pool& p)
      : vocab(std::move(v)), universe(rule_universe(*vocab)), pool(p),
        memo((std::size_t(1) << universe.size()) * p.nodes.size(), -1) {}

  unsigned nbases() const { return 1u << universe.size(); }

  Base base_of(unsigned mask) const {
    std::vector<AtomicRule> rules;
    for (std::size_t i = 0; i < universe.size(); ++i)
      if ((mask >> i) & 1) rules.push_back(universe[i]);
    return Base(vocab, std::move(rules));
  }

  bool supports(unsigned mask, int idx) {
    signed char& slot = memo[std::size_t(mask) * pool.nodes.size() + idx];
    if (slot >= 0) return slot;
    const Pool::Node& nd = pool.nodes[idx];
    bool r = false;
    switch (nd.f->kind) {
      case Formula::Kind::Atom:
        r = derives(base_of(mask), atom_from_formula(nd.f));
        break;
      case Formula::Kind::Bot:
        r = closure(base_of(mask)).size() == vocab->size();
        break;
      case Formula::Kind::And:
        r = supports(mask, nd.lhs) && supports(mask, nd.rhs);
        break;
      case Formula::Kind::Imp: {
        r = true;
        const unsigned rest = ~mask & (nbases() - 1);
        unsigned sub = rest;
        while (true) {  // every superset of mask is mask | (subset of rest)
          unsigned sup = mask | sub;
          if (supports(sup, nd.lhs) && !supports(sup, nd.rhs)) {
            r = false;
            break;
          }
          if (sub == 0) break;
          sub = (sub - 1) & rest;
        }
        break;
      }
      case Formula::Kind::Forall:
        throw std::logic_error("no quantifiers in the propositional pool");
    }
    slot = r;
    return r;
  }
};

}  // namespace

TEST_CASE("closure operator counts per universe size") {
  CHECK(SupportUniverse(prop_vocab(0)).num_ops() == 1);
  CHECK(SupportUniverse(prop_vocab(1)).num_ops() == 2);
  CHECK(SupportUniverse(prop_vocab(2)).num_ops() == 7);
  CHECK(SupportUniverse(prop_vocab(3)).num_ops() == 61);
  CHECK(SupportUniverse(prop_vocab(4)).num_ops() == 2480);
}

TEST_CASE("operator engine agrees with direct enumeration over rule sets") {
  auto vocab = prop_vocab(2);
  SupportUniverse u(vocab);
  Pool pool = prop_pool(*vocab, 2);
  NaiveSupport naive(vocab, pool);
  for (unsigned mask = 0; mask < naive.nbases(); ++mask) {
    int op = u.op_of_base(naive.base_of(mask));
    for (int i = 0; i < static_cast<int>(pool.nodes.size()); ++i) {
      CAPTURE(mask);
      CAPTURE(print_formula(pool.nodes[i].f));
      REQUIRE(u.supports_op(op, pool.nodes[i].f) == naive.supports(mask, i));
    }
  }
}

TEST_CASE("support under antecedents agrees with direct enumeration") {
  auto vocab = prop_vocab(2);
  SupportUniverse u(vocab);
  Pool pool = prop_pool(*vocab, 1);
  NaiveSupport naive(vocab, pool);
  const int npool = static_cast<int>(pool.nodes.size());
  // (Inf): every extension supporting the antecedent supports the conclusion.
  for (unsigned mask = 0; mask < naive.nbases(); mask += 7) {
    int op = u.op_of_base(naive.base_of(mask));
    for (int d = 0; d < npool; ++d)
      for (int f = 0; f < npool; ++f) {
        bool direct = true;
        const unsigned rest = ~mask & (naive.nbases() - 1);
        unsigned sub = rest;
        while (true) {
          unsigned sup = mask | sub;
          if (naive.supports(sup, d) && !naive.supports(sup, f)) {
            direct = false;
            break;
          }
          if (sub == 0) break;
          sub = (sub - 1) & rest;
        }
        REQUIRE(u.supports_under_op(op, {pool.nodes[d].f}, pool.nodes[f].f) == direct);
      }
  }
}

TEST_CASE("extending a base never loses support") {
  auto vocab = prop_vocab(2);
  SupportUniverse u(vocab);
  Pool pool = prop_pool(*vocab, 2);
  NaiveSupport naive(vocab, pool);
  for (unsigned b = 0; b < naive.nbases(); b += 11) {
    int ob = u.op_of_base(naive.base_of(b));
    const unsigned rest = ~b & (naive.nbases() - 1);
    unsigned sub = rest;
    while (true) {  // b's rules are a subset of (b | sub)'s
      CHECK(u.op_ge(u.op_of_base(naive.base_of(b | sub)), ob));
      if (sub == 0) break;
      sub = (sub - 1) & rest;
    }
  }
  // persistence per formula, over the operator lattice
  for (const auto& nd : pool.nodes) {
    const SupportVec& v = u.vec(nd.f);
    for (int j = 0; j < u.num_ops(); ++j) {
      if (!v.test(j)) continue;
      for (int i = 0; i < u.num_ops(); ++i)
        if (u.op_ge(i, j)) CHECK(v.test(i));
    }
  }
}

TEST_CASE("validity is support under the empty base") {
  auto vocab = prop_vocab(2, 2);
  SupportUniverse u(vocab);
  Base empty(vocab, {});
  CHECK(u.empty_base_op() == u.op_of_base(empty));
  FormulaPtr a = atom_to_formula(vocab->atoms()[0]);
  CHECK(u.valid({}, mk_imp(a, a)));
  CHECK_FALSE(u.valid({}, a));
  CHECK(u.valid({a}, a));
  // double negation elimination is valid in this semantics
  CHECK(u.valid({}, mk_imp(mk_neg(mk_neg(a)), a)));
}

TEST_CASE("consistency and maxiconsistency") {
  auto vocab = prop_vocab(2);
  SupportUniverse u(vocab);
  Base empty(vocab, {});
  CHECK(u.is_consistent(empty));
  CHECK_FALSE(u.is_maxiconsistent(empty));
  auto maxis = u.enumerate_maxiconsistent();
  CHECK(maxis.size() == 3);
  for (const auto& m : maxis) {
    CHECK(u.is_maxiconsistent(m));
    // a maxiconsistent base decides every atom
    for (const auto& at : vocab->atoms()) {
      FormulaPtr a = atom_to_formula(at);
      CHECK((u.supports(m, a) || u.supports(m, mk_neg(a))));
    }
  }
}

TEST_CASE("extension to a maxiconsistent base avoiding a formula") {
  auto vocab = prop_vocab(2);
  SupportUniverse u(vocab);
  Base empty(vocab, {});
  FormulaPtr a = atom_to_formula(vocab->atoms()[0]);
  FormulaPtr b = atom_to_formula(vocab->atoms()[1]);
  Base m = u.extend_to_maxiconsistent(empty, mk_and(a, b));
  CHECK(u.is_maxiconsistent(m));
  CHECK(u.op_ge(u.op_of_base(m), u.op_of_base(empty)));
  CHECK_FALSE(u.supports(m, mk_and(a, b)));
  CHECK_THROWS(u.extend_to_maxiconsistent(empty, mk_imp(a, a)));
}

TEST_CASE("degenerate empty vocabulary has a single trivial class") {
  auto vocab = prop_vocab(0);
  SupportUniverse u(vocab);
  CHECK(u.enumerate_maxiconsistent().size() == 1);
}

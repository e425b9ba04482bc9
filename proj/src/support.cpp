#include "pts/support.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace pts {

namespace {
constexpr int kMaxAtoms = 4;  // operator lattice enumeration is 2^(2^n)

SupportVec all_ones(int n) {
  SupportVec v;
  v.words.assign((n + 63) / 64, ~std::uint64_t(0));
  int tail = n & 63;
  if (tail) v.words.back() = (std::uint64_t(1) << tail) - 1;
  return v;
}
SupportVec all_zeros(int n) {
  SupportVec v;
  v.words.assign((n + 63) / 64, 0);
  return v;
}
}  // namespace

SupportUniverse::SupportUniverse(VocabularyPtr vocab, bool forall_includes_reserve_terms)
    : vocab_(std::move(vocab)), forall_reserve_(forall_includes_reserve_terms) {
  n_atoms_ = static_cast<int>(vocab_->size());
  if (n_atoms_ > kMaxAtoms)
    throw std::invalid_argument("support: atom universe too large (limit " +
                                std::to_string(kMaxAtoms) + " atoms)");
  full_ = (1u << n_atoms_) - 1;
  enumerate_operators();
}

void SupportUniverse::enumerate_operators() {
  const int nsub = 1 << n_atoms_;
  const std::uint32_t family_limit = std::uint32_t(1) << nsub;
  // A closure operator is determined by its family of closed sets: any
  // collection of subsets that contains the full set and is closed under
  // intersection.
  for (std::uint32_t fam = 0; fam < family_limit; ++fam) {
    if (!(fam & (1u << (nsub - 1)))) continue;  // must contain the full set
    bool ok = true;
    for (int i = 0; i < nsub && ok; ++i) {
      if (!(fam & (1u << i))) continue;
      for (int j = i + 1; j < nsub; ++j) {
        if (!(fam & (1u << j))) continue;
        if (!(fam & (1u << (i & j)))) { ok = false; break; }
      }
    }
    if (!ok) continue;
    std::vector<std::uint32_t> cl(nsub);
    for (int x = 0; x < nsub; ++x) {
      std::uint32_t c = full_;
      for (int m = 0; m < nsub; ++m)
        if ((fam & (1u << m)) && (static_cast<std::uint32_t>(m) & x) == static_cast<std::uint32_t>(x))
          c &= static_cast<std::uint32_t>(m);
      cl[x] = c;
    }
    family_index_[fam] = static_cast<int>(cl_.size());
    family_.push_back(fam);
    cl_.push_back(std::move(cl));
  }
  identity_op_ = family_index_.at(family_limit - 1);
  // J_i >= J_j iff family(i) is a subfamily of family(j).
  const int n = num_ops();
  ups_.assign(n, all_zeros(n));
  downs_.assign(n, all_zeros(n));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if ((family_[i] & family_[j]) == family_[i]) {
        ups_[j].set(i);
        downs_[i].set(j);
      }
}

void SupportUniverse::check_vocab(const Base& b) const {
  if (b.vocab().size() != vocab_->size())
    throw std::invalid_argument("base vocabulary does not match support universe");
  for (std::size_t i = 0; i < vocab_->size(); ++i)
    if (!(b.vocab().atoms()[i] == vocab_->atoms()[i]))
      throw std::invalid_argument("base vocabulary does not match support universe");
}

int SupportUniverse::op_of_base(const Base& b) const {
  check_vocab(b);
  const int nsub = 1 << n_atoms_;
  std::uint32_t fam = 0;
  for (int x = 0; x < nsub; ++x)
    if (closure_mask_with_facts(b, static_cast<std::uint32_t>(x)) == static_cast<std::uint32_t>(x))
      fam |= 1u << x;
  auto it = family_index_.find(fam);
  if (it == family_index_.end())
    throw std::logic_error("base closure is not a closure operator");
  return it->second;
}

bool SupportUniverse::op_consistent(int op) const { return cl_[op][0] != full_; }

bool SupportUniverse::op_ge(int i, int j) const {
  return (family_[i] & family_[j]) == family_[i];
}

SupportVec SupportUniverse::vec_atom(int atom_idx) const {
  const int n = num_ops();
  SupportVec v = all_zeros(n);
  for (int op = 0; op < n; ++op)
    if (cl_[op][0] & (1u << atom_idx)) v.set(op);
  return v;
}

SupportVec SupportUniverse::vec_bot() const {
  const int n = num_ops();
  SupportVec v = all_zeros(n);
  for (int op = 0; op < n; ++op)
    if (cl_[op][0] == full_) v.set(op);
  return v;
}

SupportVec SupportUniverse::vec_top() const { return all_ones(num_ops()); }

SupportVec SupportUniverse::vec_and(const SupportVec& a, const SupportVec& b) const {
  SupportVec v = a;
  for (std::size_t w = 0; w < v.words.size(); ++w) v.words[w] &= b.words[w];
  return v;
}

SupportVec SupportUniverse::vec_imp(const SupportVec& a, const SupportVec& b) const {
  // An op supports the implication iff no op above it supports the
  // antecedent while failing the consequent; that is the complement of the
  // downward closure of the "bad" set.
  const int n = num_ops();
  SupportVec down = all_zeros(n);
  for (std::size_t w = 0; w < down.words.size(); ++w) {
    std::uint64_t bad = a.words[w] & ~b.words[w];
    while (bad) {
      int bit = std::countr_zero(bad);
      bad &= bad - 1;
      const SupportVec& d = downs_[static_cast<int>(w) * 64 + bit];
      for (std::size_t u = 0; u < down.words.size(); ++u) down.words[u] |= d.words[u];
    }
  }
  SupportVec v = all_ones(n);
  for (std::size_t w = 0; w < v.words.size(); ++w) v.words[w] &= ~down.words[w];
  return v;
}

const SupportVec& SupportUniverse::vec(const FormulaPtr& f) {
  std::string key = print_formula(f);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;

  SupportVec v;
  switch (f->kind) {
    case Formula::Kind::Atom: {
      Atom a = atom_from_formula(f);
      auto idx = vocab_->atom_index(a);
      if (!idx) throw std::invalid_argument("support: atom outside vocabulary: " + a.key());
      v = vec_atom(*idx);
      break;
    }
    case Formula::Kind::Bot: v = vec_bot(); break;
    case Formula::Kind::And: v = vec_and(vec(f->lhs), vec(f->rhs)); break;
    case Formula::Kind::Forall: {
      v = vec_top();
      for (const auto& t : vocab_->forall_terms(forall_reserve_))
        v = vec_and(v, vec(substitute(f->lhs, f->var, t)));
      break;
    }
    case Formula::Kind::Imp: v = vec_imp(vec(f->lhs), vec(f->rhs)); break;
  }
  return memo_.emplace(std::move(key), std::move(v)).first->second;
}

bool SupportUniverse::supports_op(int op, const FormulaPtr& f) {
  if (!is_closed(f)) throw std::invalid_argument("support: formula must be closed");
  return vec(f).test(op);
}

bool SupportUniverse::supports(const Base& b, const FormulaPtr& f) {
  return supports_op(op_of_base(b), f);
}

bool SupportUniverse::supports_under_op(int op, const std::vector<FormulaPtr>& delta,
                                        const FormulaPtr& f) {
  if (delta.empty()) return supports_op(op, f);
  if (!is_closed(f)) throw std::invalid_argument("support: formula must be closed");
  const int n = num_ops();
  SupportVec prem = all_ones(n);
  for (const auto& d : delta) {
    if (!is_closed(d)) throw std::invalid_argument("support: formula must be closed");
    const SupportVec dv = vec(d);
    for (std::size_t w = 0; w < prem.words.size(); ++w) prem.words[w] &= dv.words[w];
  }
  const SupportVec cv = vec(f);
  for (std::size_t w = 0; w < prem.words.size(); ++w) {
    std::uint64_t bad = prem.words[w] & ~cv.words[w];
    if (ups_[op].words[w] & bad) return false;
  }
  return true;
}

bool SupportUniverse::supports_under(const Base& b, const std::vector<FormulaPtr>& delta,
                                     const FormulaPtr& f) {
  return supports_under_op(op_of_base(b), delta, f);
}

bool SupportUniverse::valid(const std::vector<FormulaPtr>& gamma, const FormulaPtr& f) {
  return supports_under_op(identity_op_, gamma, f);
}

bool SupportUniverse::is_consistent(const Base& b) { return op_consistent(op_of_base(b)); }

bool SupportUniverse::is_maxiconsistent(const Base& b) {
  int op = op_of_base(b);
  if (!op_consistent(op)) return false;
  for (int i = 0; i < num_ops(); ++i)
    if (i != op && ups_[op].test(i) && op_consistent(i)) return false;
  return true;
}

std::vector<int> SupportUniverse::maxiconsistent_ops() const {
  std::vector<int> out;
  for (int op = 0; op < num_ops(); ++op) {
    if (!op_consistent(op)) continue;
    bool maximal = true;
    for (int i = 0; i < num_ops() && maximal; ++i)
      if (i != op && ups_[op].test(i) && op_consistent(i)) maximal = false;
    if (maximal) out.push_back(op);
  }
  return out;
}

Base SupportUniverse::canonical_base(int op) const {
  const int nsub = 1 << n_atoms_;
  std::vector<AtomicRule> rules;
  for (int x = 0; x < nsub; ++x) {
    std::vector<Atom> prems;
    for (int i = 0; i < n_atoms_; ++i)
      if (x & (1 << i)) prems.push_back(vocab_->atoms()[i]);
    std::uint32_t cl = cl_[op][x];
    for (int i = 0; i < n_atoms_; ++i)
      if ((cl & (1u << i)) && !(x & (1 << i)))
        rules.push_back(AtomicRule{prems, vocab_->atoms()[i]});
  }
  return Base(vocab_, std::move(rules));
}

Base SupportUniverse::extend_to_maxiconsistent(const Base& b, const FormulaPtr& f) {
  int op = op_of_base(b);
  if (supports_op(op, f))
    throw std::invalid_argument("extend_to_maxiconsistent: base already supports the formula");
  if (is_maxiconsistent(b)) return b;
  for (int m : maxiconsistent_ops()) {
    if (!ups_[op].test(m)) continue;  // must extend b
    if (vec(f).test(m)) continue;
    std::vector<AtomicRule> rules = b.rules();
    Base canon = canonical_base(m);
    for (const auto& r : canon.rules()) rules.push_back(r);
    return Base(vocab_, std::move(rules));
  }
  throw std::runtime_error(
      "extend_to_maxiconsistent: no maxiconsistent extension avoids the formula "
      "within the finite rule universe");
}

std::vector<Base> SupportUniverse::enumerate_maxiconsistent() const {
  // Degenerate vocabulary: the empty base is the only base, and vacuity of
  // the bottom clause makes every base trivial. Report the single class.
  if (n_atoms_ == 0) return {Base(vocab_, {})};
  std::vector<Base> out;
  for (int m : maxiconsistent_ops()) out.push_back(canonical_base(m));
  return out;
}

}  // namespace pts

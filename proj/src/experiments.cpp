#include "pts/experiments.hpp"

#include <map>
#include <random>
#include <stdexcept>

#include "pts/arithmetize.hpp"
#include "pts/base.hpp"
#include "pts/coding.hpp"
#include "pts/support.hpp"

namespace pts {

namespace {

using json = nlohmann::ordered_json;

json config_json(const ExperimentConfig& cfg) {
  return json{{"seed", cfg.seed},     {"atoms", cfg.atoms},   {"reserve", cfg.reserve},
              {"depth", cfg.depth},   {"samples", cfg.samples}, {"budget", cfg.budget},
              {"theory", cfg.theory}};
}

json report_header(const std::string& name, const ExperimentConfig& cfg) {
  return json{{"experiment", name},
              {"tool_version", kToolVersion},
              {"coding_version", kCodingVersion},
              {"config", config_json(cfg)}};
}

VocabularyPtr prop_vocab(int atoms, int reserve) {
  static const char* names[] = {"A", "B", "C", "D"};
  if (atoms < 0 || atoms > 4) throw std::invalid_argument("atoms must be in 0..4");
  std::vector<Vocabulary::Pred> preds;
  for (int i = 0; i < atoms; ++i) preds.push_back({names[i], 0});
  return std::make_shared<Vocabulary>(std::move(preds), std::vector<TermPtr>{}, reserve);
}

VocabularyPtr unary_vocab(int terms) {
  static const char* names[] = {"a", "b", "c", "d"};
  if (terms < 1 || terms > 4) throw std::invalid_argument("atoms must be in 1..4");
  std::vector<TermPtr> ts;
  for (int i = 0; i < terms; ++i) ts.push_back(mk_const(names[i]));
  return std::make_shared<Vocabulary>(std::vector<Vocabulary::Pred>{{"P", 1}}, std::move(ts));
}

std::vector<FormulaPtr> atom_leaves(const Vocabulary& v) {
  std::vector<FormulaPtr> out;
  for (const auto& a : v.atoms()) out.push_back(atom_to_formula(a));
  return out;
}

FormulaPtr random_formula(std::mt19937_64& rng, int depth,
                          const std::vector<FormulaPtr>& leaves) {
  if (depth == 0 || rng() % 4 == 0) {
    std::size_t r = rng() % (leaves.size() + 1);
    return r < leaves.size() ? leaves[r] : mk_bot();
  }
  FormulaPtr a = random_formula(rng, depth - 1, leaves);
  FormulaPtr b = random_formula(rng, depth - 1, leaves);
  return rng() % 2 ? mk_imp(std::move(a), std::move(b)) : mk_and(std::move(a), std::move(b));
}

// Truth of a propositional formula (atoms with indices) under a valuation
// bitmask.
bool tt_eval(const FormulaPtr& f, std::uint32_t val, const Vocabulary& v) {
  switch (f->kind) {
    case Formula::Kind::Bot: return false;
    case Formula::Kind::Atom: {
      auto idx = v.atom_index(atom_from_formula(f));
      if (!idx) throw std::invalid_argument("tt_eval: atom outside vocabulary");
      return (val >> *idx) & 1;
    }
    case Formula::Kind::Imp: return !tt_eval(f->lhs, val, v) || tt_eval(f->rhs, val, v);
    case Formula::Kind::And: return tt_eval(f->lhs, val, v) && tt_eval(f->rhs, val, v);
    case Formula::Kind::Forall:
      throw std::invalid_argument("tt_eval: quantifier in propositional formula");
  }
  return false;
}

// --------------------------------------------------------------------------
// classical-agreement

json classical_agreement(const ExperimentConfig& cfg) {
  json rep = report_header("classical-agreement", cfg);
  auto vocab = prop_vocab(cfg.atoms, cfg.reserve);
  SupportUniverse u(vocab);
  const int empty_op = u.empty_base_op();
  const int nvals = 1 << cfg.atoms;
  const std::uint32_t ttmask = (nvals >= 32) ? ~0u : (1u << nvals) - 1;

  // Semantic classes: (support vector, truth table). Exhaustive over all
  // formulas of the given depth because both components are compositional.
  struct Cls {
    SupportVec v;
    std::uint32_t tt;
  };
  std::map<std::pair<std::vector<std::uint64_t>, std::uint32_t>, int> seen;
  std::vector<Cls> classes;
  auto add = [&](const SupportVec& v, std::uint32_t tt) {
    auto key = std::make_pair(v.words, tt);
    if (seen.emplace(key, static_cast<int>(classes.size())).second)
      classes.push_back({v, tt});
  };
  for (int i = 0; i < cfg.atoms; ++i) {
    std::uint32_t tt = 0;
    for (int m = 0; m < nvals; ++m)
      if ((m >> i) & 1) tt |= 1u << m;
    add(u.vec_atom(i), tt);
  }
  add(u.vec_bot(), 0);
  std::size_t prev = 0;
  for (int d = 1; d <= cfg.depth; ++d) {
    const std::size_t snapshot = classes.size();
    for (std::size_t i = 0; i < snapshot; ++i)
      for (std::size_t j = 0; j < snapshot; ++j) {
        if (i < prev && j < prev) continue;  // combined at an earlier level
        add(u.vec_imp(classes[i].v, classes[j].v),
            (~classes[i].tt | classes[j].tt) & ttmask);
        add(u.vec_and(classes[i].v, classes[j].v), classes[i].tt & classes[j].tt);
      }
    prev = snapshot;
  }
  int disagreements = 0;
  for (const auto& c : classes) {
    bool support_valid = c.v.test(empty_op);
    bool tautology = c.tt == ttmask;
    if (support_valid != tautology) ++disagreements;
  }
  rep["classes"] = classes.size();
  rep["exhaustive_disagreements"] = disagreements;

  // Seeded random formulas to depth 6.
  std::mt19937_64 rng(cfg.seed);
  auto leaves = atom_leaves(*vocab);
  leaves.resize(static_cast<std::size_t>(cfg.atoms));  // exclude reserve atoms
  int random_disagreements = 0;
  for (int s = 0; s < cfg.samples; ++s) {
    FormulaPtr f = random_formula(rng, 6, leaves);
    bool support_valid = u.vec(f).test(empty_op);
    bool tautology = true;
    for (int m = 0; m < nvals && tautology; ++m)
      if (!tt_eval(f, static_cast<std::uint32_t>(m), *vocab)) tautology = false;
    if (support_valid != tautology) ++random_disagreements;
  }
  rep["random_checked"] = cfg.samples;
  rep["random_disagreements"] = random_disagreements;
  rep["pass"] = disagreements == 0 && random_disagreements == 0;
  return rep;
}

// --------------------------------------------------------------------------
// maxiconsistent

// All bases over the vocabulary's full rule universe (premise set x
// conclusion atom); feasible only for tiny universes.
std::vector<Base> all_bases(const VocabularyPtr& vocab) {
  const auto& atoms = vocab->atoms();
  const int n = static_cast<int>(atoms.size());
  std::vector<AtomicRule> rule_universe;
  for (int prem = 0; prem < (1 << n); ++prem)
    for (int c = 0; c < n; ++c) {
      AtomicRule r;
      for (int i = 0; i < n; ++i)
        if (prem & (1 << i)) r.premises.push_back(atoms[i]);
      r.conclusion = atoms[c];
      rule_universe.push_back(std::move(r));
    }
  std::vector<Base> out;
  const std::size_t total = std::size_t(1) << rule_universe.size();
  for (std::size_t mask = 0; mask < total; ++mask) {
    std::vector<AtomicRule> rules;
    for (std::size_t i = 0; i < rule_universe.size(); ++i)
      if ((mask >> i) & 1) rules.push_back(rule_universe[i]);
    out.emplace_back(vocab, std::move(rules));
  }
  return out;
}

json maxiconsistent(const ExperimentConfig& cfg) {
  json rep = report_header("maxiconsistent", cfg);
  auto vocab = unary_vocab(cfg.atoms);
  SupportUniverse u(vocab);
  const auto maxis = u.maxiconsistent_ops();
  rep["maxiconsistent_classes"] = maxis.size();

  // Closed-formula semantic classes to the configured depth, with a
  // representative formula each (used by the extension-property check).
  struct Cls {
    SupportVec v;
    FormulaPtr rep;
  };
  std::map<std::vector<std::uint64_t>, int> seen;
  std::vector<Cls> classes;
  auto add = [&](const SupportVec& v, FormulaPtr rep) {
    if (seen.emplace(v.words, static_cast<int>(classes.size())).second)
      classes.push_back({v, std::move(rep)});
  };
  for (const auto& a : atom_leaves(*vocab)) add(u.vec(a), a);
  add(u.vec_bot(), mk_bot());
  std::size_t prev = 0;
  for (int d = 1; d <= cfg.depth; ++d) {
    const std::size_t snapshot = classes.size();
    for (std::size_t i = 0; i < snapshot; ++i)
      for (std::size_t j = 0; j < snapshot; ++j) {
        if (i < prev && j < prev) continue;
        add(u.vec_imp(classes[i].v, classes[j].v),
            mk_imp(classes[i].rep, classes[j].rep));
        add(u.vec_and(classes[i].v, classes[j].v),
            mk_and(classes[i].rep, classes[j].rep));
      }
    prev = snapshot;
  }
  rep["closed_classes"] = classes.size();

  int neg_violations = 0, disj_violations = 0, exists_violations = 0;
  for (int m : maxis) {
    for (const auto& c : classes) {
      if (u.vec_neg(c.v).test(m) != !c.v.test(m)) ++neg_violations;
    }
    for (const auto& a : classes)
      for (const auto& b : classes) {
        bool disj = u.vec_or(a.v, b.v).test(m);
        if (disj != (a.v.test(m) || b.v.test(m))) ++disj_violations;
      }
  }

  // Existential bullet: classes of formulas with one free variable x are
  // tuples of support vectors, one per instantiating term.
  const auto terms = vocab->forall_terms(true);
  const std::size_t nt = terms.size();
  struct TCls {
    std::vector<SupportVec> vs;
  };
  std::map<std::vector<std::vector<std::uint64_t>>, int> tseen;
  std::vector<TCls> tclasses;
  auto tadd = [&](std::vector<SupportVec> vs) {
    std::vector<std::vector<std::uint64_t>> key;
    for (const auto& v : vs) key.push_back(v.words);
    if (tseen.emplace(std::move(key), static_cast<int>(tclasses.size())).second)
      tclasses.push_back({std::move(vs)});
  };
  {
    // leaf P(x)
    std::vector<SupportVec> px;
    for (const auto& t : terms)
      px.push_back(u.vec(mk_atom("P", {t})));
    tadd(std::move(px));
    // constant leaves: closed atoms and bot
    for (const auto& a : atom_leaves(*vocab))
      tadd(std::vector<SupportVec>(nt, u.vec(a)));
    tadd(std::vector<SupportVec>(nt, u.vec_bot()));
  }
  std::size_t tprev = 0;
  for (int d = 1; d <= cfg.depth; ++d) {
    const std::size_t snapshot = tclasses.size();
    for (std::size_t i = 0; i < snapshot; ++i)
      for (std::size_t j = 0; j < snapshot; ++j) {
        if (i < tprev && j < tprev) continue;
        std::vector<SupportVec> imp, conj;
        for (std::size_t k = 0; k < nt; ++k) {
          imp.push_back(u.vec_imp(tclasses[i].vs[k], tclasses[j].vs[k]));
          conj.push_back(u.vec_and(tclasses[i].vs[k], tclasses[j].vs[k]));
        }
        tadd(std::move(imp));
        tadd(std::move(conj));
      }
    tprev = snapshot;
  }
  rep["open_classes"] = tclasses.size();
  for (int m : maxis) {
    for (const auto& tc : tclasses) {
      // exists x phi = ~forall x ~phi; forall instantiates over the terms
      SupportVec all = u.vec_top();
      bool some = false;
      for (const auto& v : tc.vs) {
        all = u.vec_and(all, u.vec_neg(v));
        if (v.test(m)) some = true;
      }
      if (u.vec_neg(all).test(m) != some) ++exists_violations;
    }
  }
  rep["negation_violations"] = neg_violations;
  rep["disjunction_violations"] = disj_violations;
  rep["existential_violations"] = exists_violations;

  // Extension property, exhaustive over all bases of the 2-atom universe.
  int ext_checked = 0, ext_violations = 0;
  if (vocab->size() == 2) {
    for (const auto& b : all_bases(vocab)) {
      int op = u.op_of_base(b);
      for (const auto& c : classes) {
        if (c.v.test(op)) continue;
        ++ext_checked;
        Base m = u.extend_to_maxiconsistent(b, c.rep);
        if (!u.is_maxiconsistent(m) || !u.op_ge(u.op_of_base(m), op) ||
            u.supports(m, c.rep))
          ++ext_violations;
      }
    }
    rep["extension_checked"] = ext_checked;
    rep["extension_violations"] = ext_violations;
  }
  rep["pass"] = neg_violations == 0 && disj_violations == 0 && exists_violations == 0 &&
                ext_violations == 0;
  return rep;
}

// --------------------------------------------------------------------------
// local-soundness

json local_soundness(const ExperimentConfig& cfg) {
  json rep = report_header("local-soundness", cfg);
  auto vocab = prop_vocab(cfg.atoms, 0);
  SupportUniverse u(vocab);
  auto leaves = atom_leaves(*vocab);
  std::mt19937_64 rng(cfg.seed);

  int proofs_rejected = 0, violations = 0, pairs = 0;
  for (int s = 0; s < cfg.samples; ++s) {
    std::vector<FormulaPtr> gamma;
    std::size_t ng = 1 + rng() % 3;
    for (std::size_t i = 0; i < ng; ++i) gamma.push_back(random_formula(rng, 2, leaves));
    Theory t = theory_from_axioms("gamma", gamma);

    Proof p;
    auto push = [&](FormulaPtr f) { p.lines.push_back(ProofLine{std::move(f), {}}); };
    push(gamma[rng() % gamma.size()]);
    std::size_t target = 3 + rng() % 10;
    while (p.lines.size() < target) {
      switch (rng() % 4) {
        case 0: push(gamma[rng() % gamma.size()]); break;
        case 1: {
          FormulaPtr a = random_formula(rng, 2, leaves);
          FormulaPtr b = random_formula(rng, 2, leaves);
          switch (rng() % 6) {
            case 0: push(mk_imp(a, mk_imp(b, a))); break;
            case 1: {
              FormulaPtr c = random_formula(rng, 2, leaves);
              push(mk_imp(mk_imp(a, mk_imp(b, c)),
                          mk_imp(mk_imp(a, b), mk_imp(a, c))));
              break;
            }
            case 2: push(mk_imp(mk_neg(mk_neg(a)), a)); break;
            case 3: push(mk_imp(a, mk_imp(b, mk_and(a, b)))); break;
            case 4: push(mk_imp(mk_and(a, b), a)); break;
            case 5: push(mk_imp(mk_and(a, b), b)); break;
          }
          break;
        }
        case 2: {
          // K then MP: from an existing line phi derive psi -> phi
          FormulaPtr phi = p.lines[rng() % p.lines.size()].formula;
          FormulaPtr psi = random_formula(rng, 2, leaves);
          push(mk_imp(phi, mk_imp(psi, phi)));
          push(mk_imp(psi, phi));
          break;
        }
        case 3: {
          // apply MP to an existing implication whose antecedent is present
          std::vector<FormulaPtr> concls;
          for (const auto& lj : p.lines) {
            if (lj.formula->kind != Formula::Kind::Imp) continue;
            for (const auto& li : p.lines)
              if (formula_equal(li.formula, lj.formula->lhs)) {
                concls.push_back(lj.formula->rhs);
                break;
              }
          }
          if (concls.empty()) {
            push(gamma[rng() % gamma.size()]);
          } else {
            push(concls[rng() % concls.size()]);
          }
          break;
        }
      }
    }
    if (!check_proof(p, t).ok) {
      ++proofs_rejected;
      continue;
    }
    const FormulaPtr& concl = p.conclusion();
    for (int op = 0; op < u.num_ops(); ++op) {
      bool all_gamma = true;
      for (const auto& g : gamma)
        if (!u.vec(g).test(op)) {
          all_gamma = false;
          break;
        }
      if (!all_gamma) continue;
      ++pairs;
      if (!u.vec(concl).test(op)) ++violations;
    }
  }
  rep["samples"] = cfg.samples;
  rep["proofs_rejected_by_checker"] = proofs_rejected;
  rep["supporting_bases_checked"] = pairs;
  rep["violations"] = violations;
  rep["pass"] = proofs_rejected == 0 && violations == 0;
  return rep;
}

// --------------------------------------------------------------------------
// prf-crosscheck

json prf_crosscheck(const ExperimentConfig& cfg) {
  json rep = report_header("prf-crosscheck", cfg);
  const Theory& q = q_theory();
  auto corpus = q_proof_corpus();
  int corpus_failures = 0;
  for (const auto& p : corpus) {
    CrosscheckReport r = crosscheck(p, q, cfg.budget);
    if (!r.meta_ok || !r.ok) ++corpus_failures;
  }
  rep["corpus_size"] = corpus.size();
  rep["corpus_failures"] = corpus_failures;

  std::mt19937_64 rng(cfg.seed);
  int mutations = std::max(30, cfg.samples / 10);
  int mutation_accepted = 0, mutation_divergence = 0;
  for (int s = 0; s < mutations; ++s) {
    Proof p = corpus[rng() % corpus.size()];
    std::size_t line = rng() % p.lines.size();
    // an unjustifiable line: 0 = S^k(0), k >= 1
    p.lines[line].formula =
        mk_eq(numeral(0ull), numeral(1 + rng() % 5));
    p.lines[line].hint.reset();
    CrosscheckReport r = crosscheck(p, q, cfg.budget);
    if (r.meta_ok || r.arith_prf) ++mutation_accepted;
    if (!r.ok) ++mutation_divergence;
  }
  rep["mutations"] = mutations;
  rep["mutations_wrongly_accepted"] = mutation_accepted;
  rep["mutation_level_divergences"] = mutation_divergence;
  rep["pass"] = corpus_failures == 0 && mutation_accepted == 0 && mutation_divergence == 0;
  return rep;
}

// --------------------------------------------------------------------------
// numeral-decision

json numeral_decision(const ExperimentConfig& cfg) {
  json rep = report_header("numeral-decision", cfg);
  const Theory& q = q_theory();
  int checked = 0, failures = 0;
  for (unsigned m = 0; m <= 20; ++m)
    for (unsigned n = 0; n <= 20; ++n) {
      ++checked;
      Proof p = prove_numeral_atom(Nat(m), Nat(n));
      if (!check_proof(p, q).ok) {
        ++failures;
        continue;
      }
      FormulaPtr expected = m == n ? mk_eq(numeral(Nat(m)), numeral(Nat(n)))
                                   : mk_neg(mk_eq(numeral(Nat(m)), numeral(Nat(n))));
      if (!formula_equal(p.conclusion(), expected)) ++failures;
    }
  rep["checked"] = checked;
  rep["failures"] = failures;
  rep["pass"] = failures == 0;
  return rep;
}

}  // namespace

// --------------------------------------------------------------------------

std::vector<Proof> q_proof_corpus() {
  const Theory& q = q_theory();
  auto ax = [&](const char* name) {
    for (const auto& [n, f] : q.axioms)
      if (n == name) return f;
    throw std::logic_error("unknown axiom");
  };
  auto mk = [](std::vector<FormulaPtr> fs) {
    Proof p;
    for (auto& f : fs) p.lines.push_back(ProofLine{std::move(f), {}});
    return p;
  };
  std::vector<Proof> out;
  TermPtr zero = mk_zero();
  TermPtr x = mk_var("x");
  FormulaPtr zz = mk_eq(zero, zero);

  // 1 line: theory axiom
  out.push_back(mk({ax("Q1")}));
  // 1 line: equality reflexivity
  out.push_back(mk({zz}));
  // 2 lines: Gen over a logical axiom
  out.push_back(mk({mk_eq(x, x), mk_forall("x", mk_eq(x, x))}));
  // 3 lines: Q4 instantiated at 0
  FormulaPtr q4_0 = mk_eq(mk_plus(zero, zero), zero);
  out.push_back(mk({ax("Q4"), mk_imp(ax("Q4"), q4_0), q4_0}));
  // 4 lines: the same plus a vacuous Gen
  out.push_back(mk({ax("Q4"), mk_imp(ax("Q4"), q4_0), q4_0, mk_forall("y", q4_0)}));
  // 5 lines: phi -> phi via K and S
  {
    FormulaPtr phi = zz;
    FormulaPtr ii = mk_imp(phi, phi);
    FormulaPtr k1 = mk_imp(phi, mk_imp(ii, phi));
    FormulaPtr s = mk_imp(k1, mk_imp(mk_imp(phi, ii), ii));
    out.push_back(mk({k1, s, mk_imp(mk_imp(phi, ii), ii), mk_imp(phi, ii), ii}));
  }
  // 6 lines: Q2 doubly instantiated at 0, then Gen
  {
    FormulaPtr step1 = mk_forall("y", mk_imp(mk_eq(mk_succ(zero), mk_succ(mk_var("y"))),
                                             mk_eq(zero, mk_var("y"))));
    FormulaPtr step2 = mk_imp(mk_eq(mk_succ(zero), mk_succ(zero)), mk_eq(zero, zero));
    out.push_back(mk({ax("Q2"), mk_imp(ax("Q2"), step1), step1, mk_imp(step1, step2),
                      step2, mk_forall("x", step2)}));
  }
  // 7 and 8 lines: Q5 instantiated, then AndI and MP
  {
    FormulaPtr inner = mk_forall("y", mk_eq(mk_plus(zero, mk_succ(mk_var("y"))),
                                            mk_succ(mk_plus(zero, mk_var("y")))));
    FormulaPtr phi = mk_eq(mk_plus(zero, mk_succ(zero)), mk_succ(mk_plus(zero, zero)));
    FormulaPtr andi = mk_imp(phi, mk_imp(phi, mk_and(phi, phi)));
    std::vector<FormulaPtr> base = {ax("Q5"), mk_imp(ax("Q5"), inner), inner,
                                    mk_imp(inner, phi), phi, andi,
                                    mk_imp(phi, mk_and(phi, phi))};
    out.push_back(mk(base));
    base.push_back(mk_and(phi, phi));
    out.push_back(mk(base));
  }
  // 3 lines: Q6 instantiated at 0
  {
    FormulaPtr q6_0 = mk_eq(mk_times(zero, zero), zero);
    out.push_back(mk({ax("Q6"), mk_imp(ax("Q6"), q6_0), q6_0}));
  }
  // 1 line: theory axiom with a quantifier nest
  out.push_back(mk({ax("Q7")}));
  // generated numeral proofs
  out.push_back(prove_numeral_atom(Nat(2), Nat(2)));
  out.push_back(prove_numeral_atom(Nat(1), Nat(2)));
  return out;
}

nlohmann::ordered_json run_experiment(const std::string& name, const ExperimentConfig& cfg) {
  if (name == "classical-agreement") return classical_agreement(cfg);
  if (name == "maxiconsistent") return maxiconsistent(cfg);
  if (name == "local-soundness") return local_soundness(cfg);
  if (name == "prf-crosscheck") return prf_crosscheck(cfg);
  if (name == "numeral-decision") return numeral_decision(cfg);
  throw std::invalid_argument("unknown experiment: " + name);
}

}  // namespace pts

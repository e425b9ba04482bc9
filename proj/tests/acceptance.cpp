// Acceptance gate: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <memory>
#include <random>
#include <set>
#include <vector>

#include "pts/arithmetize.hpp"
#include "pts/experiments.hpp"
#include "pts/support.hpp"

using namespace pts;

namespace {

int g_failures = 0;

void report(int n, bool ok, const std::string& what) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", n, what.c_str());
  if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// --- criterion 2: persistence ---------------------------------------------

VocabularyPtr two_atom_vocab() {
  return std::make_shared<Vocabulary>(
      std::vector<Vocabulary::Pred>{{"A", 0}, {"B", 0}}, std::vector<TermPtr>{});
}

bool check_persistence() {
  auto vocab = two_atom_vocab();
  SupportUniverse u(vocab);

  // Every rule-set extension only grows the induced closure operator.
  const auto& atoms = vocab->atoms();
  std::vector<AtomicRule> universe;
  for (int prem = 0; prem < 4; ++prem)
    for (int c = 0; c < 2; ++c) {
      AtomicRule r;
      for (int i = 0; i < 2; ++i)
        if (prem & (1 << i)) r.premises.push_back(atoms[i]);
      r.conclusion = atoms[c];
      universe.push_back(std::move(r));
    }
  auto base_of = [&](unsigned mask) {
    std::vector<AtomicRule> rules;
    for (std::size_t i = 0; i < universe.size(); ++i)
      if ((mask >> i) & 1) rules.push_back(universe[i]);
    return Base(vocab, std::move(rules));
  };
  std::vector<int> op_of(256);
  for (unsigned m = 0; m < 256; ++m) op_of[m] = u.op_of_base(base_of(m));
  for (unsigned b = 0; b < 256; ++b) {
    unsigned rest = ~b & 255u, sub = rest;
    while (true) {
      if (!u.op_ge(op_of[b | sub], op_of[b])) return false;
      if (sub == 0) break;
      sub = (sub - 1) & rest;
    }
  }

  // Support vectors of all formulas to depth 3 are up-closed on the operator
  // lattice. Formulas of equal support vector behave identically, so the
  // sweep runs over the vector classes generated per depth level.
  std::set<SupportVec> level = {u.vec_bot()};
  for (std::size_t i = 0; i < vocab->size(); ++i) level.insert(u.vec_atom(static_cast<int>(i)));
  for (int d = 0; d < 3; ++d) {
    std::set<SupportVec> next = level;
    for (const auto& a : level)
      for (const auto& b : level) {
        next.insert(u.vec_imp(a, b));
        next.insert(u.vec_and(a, b));
      }
    level = std::move(next);
  }
  for (const auto& v : level)
    for (int j = 0; j < u.num_ops(); ++j) {
      if (!v.test(j)) continue;
      for (int i = 0; i < u.num_ops(); ++i)
        if (u.op_ge(i, j) && !v.test(i)) return false;
    }
  return true;
}

// --- criterion 7: coding soundness ----------------------------------------

bool check_coding(std::string& detail) {
  std::vector<FormulaPtr> leaves = {parse_formula("0=0"), parse_formula("x = S(0)"),
                                    mk_bot()};
  long long checked = 0;
  auto round_trips = [&](const FormulaPtr& f) {
    ++checked;
    auto d = decode_formula(code_formula(f));
    return d && formula_equal(*d, f);
  };
  // all formulas over the leaf pool to depth 2, stored
  std::vector<FormulaPtr> pool = leaves;
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
  for (const auto& f : pool)
    if (!round_trips(f)) return false;
  // depth 3: one more connective layer, streamed. A successful round trip of
  // every formula is itself an injectivity proof over the whole set: equal
  // codes would decode to one formula.
  std::size_t n2 = pool.size();
  for (std::size_t i = prev; i < n2; ++i)
    if (!round_trips(mk_forall("x", pool[i]))) return false;
  for (std::size_t i = 0; i < n2; ++i)
    for (std::size_t j = 0; j < n2; ++j) {
      if (!round_trips(mk_imp(pool[i], pool[j]))) return false;
      if (!round_trips(mk_and(pool[i], pool[j]))) return false;
    }

  // explicit injectivity over random distinct pairs
  std::mt19937_64 rng(20240901);
  auto random_formula = [&](auto&& self, int depth) -> FormulaPtr {
    if (depth == 0 || rng() % 4 == 0) return leaves[rng() % leaves.size()];
    switch (rng() % 3) {
      case 0: return mk_imp(self(self, depth - 1), self(self, depth - 1));
      case 1: return mk_and(self(self, depth - 1), self(self, depth - 1));
      default: return mk_forall("x", self(self, depth - 1));
    }
  };
  int collisions = 0;
  for (int k = 0; k < 10000; ++k) {
    FormulaPtr f = random_formula(random_formula, 5);
    FormulaPtr g = random_formula(random_formula, 5);
    if (formula_equal(f, g)) continue;
    if (code_formula(f) == code_formula(g)) ++collisions;
  }
  detail = "round-tripped " + std::to_string(checked) + " formulas, collisions " +
           std::to_string(collisions);
  return collisions == 0;
}

// --- criterion 8: evaluator equivalence -----------------------------------

// An independent miniature AST of bounded arithmetic sentences with its own
// trivially recursive evaluator over machine integers; the same sentences
// are elaborated into the core language and run through the main evaluator.
struct MiniTerm {
  enum K { Num, Var, Succ, Plus, Times } k = Num;
  unsigned long long num = 0;
  int var = 0;
  std::unique_ptr<MiniTerm> a, b;
};
struct MiniFormula {
  enum K { Eq, And, Imp, All, Ex } k = Eq;
  std::unique_ptr<MiniTerm> t1, t2;
  int var = 0;
  unsigned long long bound = 0;
  std::unique_ptr<MiniFormula> f1, f2;
};

unsigned long long mini_eval_term(const MiniTerm& t, const std::vector<unsigned long long>& env) {
  switch (t.k) {
    case MiniTerm::Num: return t.num;
    case MiniTerm::Var: return env[t.var];
    case MiniTerm::Succ: return mini_eval_term(*t.a, env) + 1;
    case MiniTerm::Plus: return mini_eval_term(*t.a, env) + mini_eval_term(*t.b, env);
    case MiniTerm::Times: return mini_eval_term(*t.a, env) * mini_eval_term(*t.b, env);
  }
  return 0;
}

bool mini_eval(const MiniFormula& f, std::vector<unsigned long long>& env) {
  switch (f.k) {
    case MiniFormula::Eq: return mini_eval_term(*f.t1, env) == mini_eval_term(*f.t2, env);
    case MiniFormula::And: return mini_eval(*f.f1, env) && mini_eval(*f.f2, env);
    case MiniFormula::Imp: return !mini_eval(*f.f1, env) || mini_eval(*f.f2, env);
    case MiniFormula::All:
      for (unsigned long long v = 0; v <= f.bound; ++v) {
        env[f.var] = v;
        if (!mini_eval(*f.f1, env)) return false;
      }
      return true;
    case MiniFormula::Ex:
      for (unsigned long long v = 0; v <= f.bound; ++v) {
        env[f.var] = v;
        if (mini_eval(*f.f1, env)) return true;
      }
      return false;
  }
  return false;
}

TermPtr mini_to_term(const MiniTerm& t) {
  switch (t.k) {
    case MiniTerm::Num: return numeral(Nat(t.num));
    case MiniTerm::Var: return mk_var("x" + std::to_string(t.var));
    case MiniTerm::Succ: return mk_succ(mini_to_term(*t.a));
    case MiniTerm::Plus: return mk_plus(mini_to_term(*t.a), mini_to_term(*t.b));
    case MiniTerm::Times: return mk_times(mini_to_term(*t.a), mini_to_term(*t.b));
  }
  return mk_zero();
}

FormulaPtr elab_leq(const TermPtr& t, const TermPtr& s, int& fresh) {
  std::string w = "z" + std::to_string(fresh++);
  return mk_imp(mk_forall(w, mk_imp(mk_eq(mk_plus(t, mk_var(w)), s), mk_bot())), mk_bot());
}

FormulaPtr mini_to_formula(const MiniFormula& f, int& fresh) {
  switch (f.k) {
    case MiniFormula::Eq: return mk_eq(mini_to_term(*f.t1), mini_to_term(*f.t2));
    case MiniFormula::And:
      return mk_and(mini_to_formula(*f.f1, fresh), mini_to_formula(*f.f2, fresh));
    case MiniFormula::Imp:
      return mk_imp(mini_to_formula(*f.f1, fresh), mini_to_formula(*f.f2, fresh));
    case MiniFormula::All: {
      std::string v = "x" + std::to_string(f.var);
      return mk_forall(v, mk_imp(elab_leq(mk_var(v), numeral(Nat(f.bound)), fresh),
                                 mini_to_formula(*f.f1, fresh)));
    }
    case MiniFormula::Ex: {
      std::string v = "x" + std::to_string(f.var);
      FormulaPtr inner =
          mk_forall(v, mk_imp(elab_leq(mk_var(v), numeral(Nat(f.bound)), fresh),
                              mk_imp(mini_to_formula(*f.f1, fresh), mk_bot())));
      return mk_imp(inner, mk_bot());
    }
  }
  return mk_bot();
}

std::unique_ptr<MiniTerm> gen_term(std::mt19937_64& rng, int depth, int nvars) {
  auto t = std::make_unique<MiniTerm>();
  int pick = static_cast<int>(rng() % (depth == 0 ? 2 : 5));
  switch (pick) {
    case 0: t->k = MiniTerm::Num; t->num = rng() % 6; break;
    case 1:
      if (nvars == 0) { t->k = MiniTerm::Num; t->num = rng() % 6; break; }
      t->k = MiniTerm::Var;
      t->var = static_cast<int>(rng() % nvars);
      break;
    case 2: t->k = MiniTerm::Succ; t->a = gen_term(rng, depth - 1, nvars); break;
    case 3:
      t->k = MiniTerm::Plus;
      t->a = gen_term(rng, depth - 1, nvars);
      t->b = gen_term(rng, depth - 1, nvars);
      break;
    default:
      t->k = MiniTerm::Times;
      t->a = gen_term(rng, depth - 1, nvars);
      t->b = gen_term(rng, depth - 1, nvars);
      break;
  }
  return t;
}

std::unique_ptr<MiniFormula> gen_formula(std::mt19937_64& rng, int depth, int nvars) {
  auto f = std::make_unique<MiniFormula>();
  int pick = static_cast<int>(rng() % (depth == 0 ? 1 : 5));
  switch (pick) {
    case 0:
      f->k = MiniFormula::Eq;
      f->t1 = gen_term(rng, 2, nvars);
      f->t2 = gen_term(rng, 2, nvars);
      break;
    case 1:
      f->k = MiniFormula::And;
      f->f1 = gen_formula(rng, depth - 1, nvars);
      f->f2 = gen_formula(rng, depth - 1, nvars);
      break;
    case 2:
      f->k = MiniFormula::Imp;
      f->f1 = gen_formula(rng, depth - 1, nvars);
      f->f2 = gen_formula(rng, depth - 1, nvars);
      break;
    default:
      f->k = (pick == 3) ? MiniFormula::All : MiniFormula::Ex;
      f->var = nvars;
      f->bound = rng() % 51;  // all bounds <= 50
      f->f1 = gen_formula(rng, depth - 1, nvars + 1);
      break;
  }
  return f;
}

bool check_evaluator_equivalence(std::string& detail) {
  std::mt19937_64 rng(20240901);
  int disagreements = 0;
  for (int k = 0; k < 100; ++k) {
    auto mf = gen_formula(rng, 3, 0);
    std::vector<unsigned long long> env(8, 0);
    bool naive = mini_eval(*mf, env);
    int fresh = 0;
    FormulaPtr f = mini_to_formula(*mf, fresh);
    EvalOptions opts;
    bool main_eval = eval_delta0_sentence(f, opts);
    if (naive != main_eval) ++disagreements;
  }
  detail = "100 sentences, disagreements " + std::to_string(disagreements);
  return disagreements == 0;
}

// --- criterion 9: shape checks --------------------------------------------

bool check_shapes() {
  TermPtr x = mk_var("x"), y = mk_var("y");
  if (!is_delta0(build_line(x, y))) return false;
  if (!is_delta0(build_prf(x, y))) return false;
  if (!is_delta0(expand_pure(build_line(x, y)))) return false;
  if (!is_delta0(expand_pure(build_prf(x, y)))) return false;
  if (classify(build_prov(x)) != FormulaClass::Sigma1) return false;
  FormulaPtr con = build_con(q_theory());
  if (!is_closed(con)) return false;
  if (!arith_oracle(q_theory(), "Form", {code_formula(con)})) return false;
  // shape survives printing and reparsing
  FormulaPtr re = parse_formula(print_formula(con));
  return formula_equal(re, con);
}

bool experiment_passes(const std::string& name, const ExperimentConfig& cfg,
                       std::string& detail) {
  auto rep = run_experiment(name, cfg);
  detail = rep.dump();
  return rep.value("pass", false);
}

}  // namespace

int main() {
  std::string detail;
  ExperimentConfig cfg;

  {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = experiment_passes("classical-agreement", cfg, detail);
    double secs = seconds_since(t0);
    ok = ok && secs < 300.0;
    report(1, ok, "classical agreement, exhaustive + 500 random, reserve 2 (" +
                      std::to_string(secs) + "s)");
  }

  report(2, check_persistence(),
         "persistence over all 256 base pairs and all formulas to depth 3");

  {
    bool ok = true;
    for (int atoms = 1; atoms <= 3; ++atoms) {
      ExperimentConfig c = cfg;
      c.atoms = atoms;
      ok = ok && experiment_passes("maxiconsistent", c, detail);
    }
    report(3, ok, "maxiconsistent classicality on 1-3 atoms + extension property");
  }

  {
    ExperimentConfig c = cfg;
    c.atoms = 3;
    c.samples = 200;
    report(4, experiment_passes("local-soundness", c, detail),
           "local soundness for 200 proved (Gamma, phi) pairs on 3 atoms");
  }

  {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = experiment_passes("prf-crosscheck", cfg, detail);
    double secs = seconds_since(t0);
    ok = ok && secs < 120.0;
    report(5, ok, "Prf adequacy: corpus, mutations, prefixes (" +
                      std::to_string(secs) + "s)");
  }

  report(6, experiment_passes("numeral-decision", cfg, detail),
         "numeral decision for all m,n <= 20 (441 proofs)");

  {
    bool ok = check_coding(detail);
    report(7, ok, "coding soundness: " + detail);
  }

  {
    bool ok = check_evaluator_equivalence(detail);
    report(8, ok, "delta0 evaluator equivalence: " + detail);
  }

  report(9, check_shapes(),
         "Line/Prf are Delta0, Prov is Sigma1, Con closed and Form-true");

  return g_failures == 0 ? 0 : 1;
}

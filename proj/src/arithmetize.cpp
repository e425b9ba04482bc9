#include "pts/arithmetize.hpp"

#include <stdexcept>

namespace pts {

namespace {

// Fresh canonical (codeable) variable names, threaded through nested builders.
class NameGen {
 public:
  explicit NameGen(std::set<std::string> avoid) : avoid_(std::move(avoid)) {}
  std::string fresh() {
    static const char letters[] = "xyzuvw";
    for (int round = 0;; ++round) {
      for (int l = 0; l < 6; ++l) {
        std::string n(1, letters[l]);
        if (round > 0) n += std::to_string(round - 1);
        if (avoid_.insert(n).second) return n;
      }
    }
  }

 private:
  std::set<std::string> avoid_;
};

std::set<std::string> fv_union(std::initializer_list<TermPtr> ts) {
  std::set<std::string> s;
  for (const auto& t : ts) {
    auto f = free_vars(t);
    s.insert(f.begin(), f.end());
  }
  return s;
}

FormulaPtr leq(TermPtr a, TermPtr b, NameGen& g) {
  std::string w = g.fresh();
  return mk_exists(w, mk_eq(mk_plus(std::move(a), mk_var(w)), std::move(b)));
}
FormulaPtr lt(TermPtr a, TermPtr b, NameGen& g) {
  return leq(mk_succ(std::move(a)), std::move(b), g);
}
FormulaPtr bexists(const std::string& var, TermPtr bound, FormulaPtr body, NameGen& g,
                   bool strict = false) {
  TermPtr left = strict ? mk_succ(mk_var(var)) : mk_var(var);
  std::string w = g.fresh();
  auto guard = mk_exists(w, mk_eq(mk_plus(std::move(left), mk_var(w)), std::move(bound)));
  return mk_neg(mk_forall(var, mk_imp(std::move(guard), mk_neg(std::move(body)))));
}
FormulaPtr bforall(const std::string& var, TermPtr bound, FormulaPtr body, NameGen& g,
                   bool strict = false) {
  TermPtr left = strict ? mk_succ(mk_var(var)) : mk_var(var);
  std::string w = g.fresh();
  auto guard = mk_exists(w, mk_eq(mk_plus(std::move(left), mk_var(w)), std::move(bound)));
  return mk_forall(var, mk_imp(std::move(guard), std::move(body)));
}

// beta(a, b, k) = y: exists q <= a (a = q * S(S(k)*b) + y  /\  S(y) <= S(S(k)*b))
FormulaPtr beta_eq(const TermPtr& a, const TermPtr& b, TermPtr k, TermPtr y, NameGen& g) {
  TermPtr m = mk_succ(mk_times(mk_succ(std::move(k)), b));
  std::string q = g.fresh();
  FormulaPtr rem = mk_eq(a, mk_plus(mk_times(mk_var(q), m), y));
  FormulaPtr small = leq(mk_succ(std::move(y)), m, g);
  return bexists(q, a, mk_and(std::move(rem), std::move(small)), g);
}

// 2p = (a+b) * S(a+b) + 2a
FormulaPtr pairing_eq(const TermPtr& p, const TermPtr& a, const TermPtr& b) {
  TermPtr s = mk_plus(a, b);
  return mk_eq(mk_times(numeral(2ull), p),
               mk_plus(mk_times(s, mk_succ(s)), mk_times(numeral(2ull), a)));
}

}  // namespace

FormulaPtr build_form(TermPtr x) { return mk_atom("Form", {std::move(x)}); }
FormulaPtr build_ax(TermPtr x) { return mk_atom("Ax", {std::move(x)}); }
FormulaPtr build_mp(TermPtr a, TermPtr b, TermPtr c) {
  return mk_atom("MP", {std::move(a), std::move(b), std::move(c)});
}
FormulaPtr build_gen(TermPtr a, TermPtr c) {
  return mk_atom("Gen", {std::move(a), std::move(c)});
}
FormulaPtr build_seq(TermPtr p, TermPtr n) {
  return mk_atom("Seq", {std::move(p), std::move(n)});
}
FormulaPtr build_elt(TermPtr p, TermPtr i, TermPtr y) {
  return mk_atom("Elt", {std::move(p), std::move(i), std::move(y)});
}

FormulaPtr seq_def(TermPtr p, TermPtr n) {
  NameGen g(fv_union({p, n}));
  std::string a = g.fresh(), b = g.fresh();
  FormulaPtr body = mk_and(pairing_eq(p, mk_var(a), mk_var(b)),
                           beta_eq(mk_var(a), mk_var(b), mk_zero(), std::move(n), g));
  return bexists(a, p, bexists(b, p, std::move(body), g), g);
}

FormulaPtr elt_def(TermPtr p, TermPtr i, TermPtr y) {
  NameGen g(fv_union({p, i, y}));
  std::string a = g.fresh(), b = g.fresh(), n = g.fresh();
  FormulaPtr in_range = bexists(
      n, mk_var(a),
      mk_and(beta_eq(mk_var(a), mk_var(b), mk_zero(), mk_var(n), g),
             lt(i, mk_var(n), g)),
      g);
  FormulaPtr body =
      mk_and(pairing_eq(p, mk_var(a), mk_var(b)),
             mk_and(std::move(in_range),
                    beta_eq(mk_var(a), mk_var(b), mk_succ(i), std::move(y), g)));
  return bexists(a, p, bexists(b, p, std::move(body), g), g);
}

FormulaPtr expand_pure(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::Atom:
      if (f->pred == "Seq") return seq_def(f->args[0], f->args[1]);
      if (f->pred == "Elt") return elt_def(f->args[0], f->args[1], f->args[2]);
      return f;
    case Formula::Kind::Bot: return f;
    case Formula::Kind::Imp: return mk_imp(expand_pure(f->lhs), expand_pure(f->rhs));
    case Formula::Kind::And: return mk_and(expand_pure(f->lhs), expand_pure(f->rhs));
    case Formula::Kind::Forall: return mk_forall(f->var, expand_pure(f->lhs));
  }
  return f;
}

FormulaPtr build_line(TermPtr p, TermPtr i) {
  NameGen g(fv_union({p, i}));
  std::string y = g.fresh();
  std::string j = g.fresh(), k = g.fresh(), y1 = g.fresh(), y2 = g.fresh();
  FormulaPtr mp_case = bexists(
      j, i,
      bexists(k, i,
              bexists(y1, p,
                      mk_and(build_elt(p, mk_var(j), mk_var(y1)),
                             bexists(y2, p,
                                     mk_and(build_elt(p, mk_var(k), mk_var(y2)),
                                            build_mp(mk_var(y1), mk_var(y2), mk_var(y))),
                                     g)),
                      g),
              g, true),
      g, true);
  FormulaPtr gen_case = bexists(
      j, i,
      bexists(y1, p,
              mk_and(build_elt(p, mk_var(j), mk_var(y1)), build_gen(mk_var(y1), mk_var(y))),
              g),
      g, true);
  FormulaPtr cases = mk_or(build_ax(mk_var(y)), mk_or(std::move(mp_case), std::move(gen_case)));
  FormulaPtr body = mk_and(build_elt(p, i, mk_var(y)),
                           mk_and(build_form(mk_var(y)), std::move(cases)));
  return bexists(y, p, std::move(body), g);
}

FormulaPtr build_prf(TermPtr p, TermPtr x) {
  NameGen g(fv_union({p, x}));
  std::string n = g.fresh(), m = g.fresh(), i = g.fresh();
  FormulaPtr last = bexists(m, mk_var(n),
                            mk_and(mk_eq(mk_var(n), mk_succ(mk_var(m))),
                                   build_elt(p, mk_var(m), x)),
                            g, true);
  FormulaPtr lines = bforall(i, mk_var(n), build_line(p, mk_var(i)), g, true);
  FormulaPtr body = mk_and(build_seq(p, mk_var(n)),
                           mk_and(std::move(last), std::move(lines)));
  return mk_and(build_form(x), bexists(n, p, std::move(body), g));
}

FormulaPtr build_prov(TermPtr x) {
  NameGen g(fv_union({x}));
  std::string p = g.fresh();
  return mk_exists(p, build_prf(mk_var(p), std::move(x)));
}

FormulaPtr build_con(const Theory&) {
  return mk_neg(build_prov(numeral(code_formula(mk_bot()))));
}

// ---------------------------------------------------------------------------

bool arith_oracle(const Theory& t, const std::string& pred, const std::vector<Nat>& args) {
  if (pred == "Seq") return seq_len(args[0]) == args[1];
  if (pred == "Elt") return args[1] < seq_len(args[0]) && elt(args[0], args[1]) == args[2];
  if (pred == "Form") return decode_formula(args[0]).has_value();
  if (pred == "Ax") {
    auto f = decode_formula(args[0]);
    return f && axiom_name(*f, t).has_value();
  }
  if (pred == "MP") {
    auto a = decode_formula(args[0]);
    auto b = decode_formula(args[1]);
    auto c = decode_formula(args[2]);
    return a && b && c && (*b)->kind == Formula::Kind::Imp &&
           formula_equal((*b)->lhs, *a) && formula_equal((*b)->rhs, *c);
  }
  if (pred == "Gen") {
    auto a = decode_formula(args[0]);
    auto c = decode_formula(args[1]);
    return a && c && (*c)->kind == Formula::Kind::Forall && formula_equal((*c)->lhs, *a);
  }
  throw std::invalid_argument("arith_oracle: unknown predicate " + pred);
}

bool eval_delta0(const FormulaPtr& f, const Env& env, ArithMode mode, const Theory& t,
                 std::uint64_t budget) {
  FormulaPtr target = mode == ArithMode::Pure ? expand_pure(f) : f;
  EvalOptions opts;
  opts.budget = budget;
  opts.oracle = [&t](const std::string& pred, const std::vector<Nat>& args) {
    return arith_oracle(t, pred, args);
  };
  if (mode == ArithMode::Oracle) {
    opts.solver = [](const std::string& pred, const std::vector<Nat>& args,
                     std::optional<Nat>& witness) {
      if (pred == "Seq" && args.size() == 1) {
        witness = seq_len(args[0]);
        return true;
      }
      if (pred == "Elt" && args.size() == 2) {
        if (args[1] < seq_len(args[0])) witness = elt(args[0], args[1]);
        return true;
      }
      return false;
    };
  }
  return eval_delta0_formula(target, env, opts);
}

Code code_proof(const Proof& p) {
  std::vector<Code> xs;
  for (const auto& line : p.lines) xs.push_back(code_formula(line.formula));
  return code_sequence(xs);
}

CrosscheckReport crosscheck(const Proof& p, const Theory& t, std::uint64_t budget) {
  CrosscheckReport r;
  const Code pc = code_proof(p);
  const FormulaPtr prf = build_prf(mk_var("x"), mk_var("y"));
  auto eval_prf = [&](const Code& proof_code, const Code& concl_code) {
    Env env{{"x", proof_code}, {"y", concl_code}};
    return eval_delta0(prf, env, ArithMode::Oracle, t, budget);
  };
  r.meta_ok = check_proof(p, t).ok;
  r.arith_prf = eval_prf(pc, code_formula(p.conclusion()));
  r.agree = r.meta_ok == r.arith_prf;
  r.ok = r.agree;
  for (std::size_t k = 1; k <= p.size(); ++k) {
    PrefixCheck pk;
    pk.k = k;
    Proof pre = prefix(p, k);
    Code prek = pref_code(pc, Nat(k));
    pk.meta_ok = check_proof(pre, t).ok;
    pk.arith_prf = eval_prf(prek, code_formula(pre.conclusion()));
    // length both meta-level and arithmetized
    bool len_meta = seq_len(prek) == Nat(k) && pre.size() == k;
    Env lenv{{"x", prek}, {"y", Nat(k)}};
    bool len_arith =
        eval_delta0(build_seq(mk_var("x"), mk_var("y")), lenv, ArithMode::Oracle, t, budget);
    pk.len_ok = len_meta && len_arith;
    pk.agree = (pk.meta_ok == pk.arith_prf) && pk.len_ok;
    if (!pk.agree) r.ok = false;
    r.prefixes.push_back(pk);
  }
  return r;
}

}  // namespace pts

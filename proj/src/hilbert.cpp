#include "pts/hilbert.hpp"

#include <sstream>
#include <stdexcept>

namespace pts {

namespace {

bool eq2(const FormulaPtr& f, TermPtr& a, TermPtr& b) {
  if (f->kind != Formula::Kind::Atom || f->pred != "=" || f->args.size() != 2) return false;
  a = f->args[0];
  b = f->args[1];
  return true;
}

bool is_imp(const FormulaPtr& f) { return f->kind == Formula::Kind::Imp; }

// inst == body with every free occurrence of var replaced by one consistent
// closed term (or no free occurrence at all, any instance term).
bool match_term_inst(const TermPtr& body, const TermPtr& inst, const std::string& var,
                     TermPtr& t) {
  if (body->kind == Term::Kind::Var && body->name == var) {
    if (!is_closed(inst)) return false;
    if (t) return term_equal(t, inst);
    t = inst;
    return true;
  }
  if (body->kind != inst->kind) return false;
  switch (body->kind) {
    case Term::Kind::Zero: return true;
    case Term::Kind::Var:
    case Term::Kind::Const: return body->name == inst->name;
    case Term::Kind::Succ: return match_term_inst(body->lhs, inst->lhs, var, t);
    case Term::Kind::Plus:
    case Term::Kind::Times:
      return match_term_inst(body->lhs, inst->lhs, var, t) &&
             match_term_inst(body->rhs, inst->rhs, var, t);
  }
  return false;
}

bool match_formula_inst(const FormulaPtr& body, const FormulaPtr& inst, const std::string& var,
                        TermPtr& t) {
  if (body->kind != inst->kind) return false;
  switch (body->kind) {
    case Formula::Kind::Bot: return true;
    case Formula::Kind::Atom: {
      if (body->pred != inst->pred || body->args.size() != inst->args.size()) return false;
      for (std::size_t k = 0; k < body->args.size(); ++k)
        if (!match_term_inst(body->args[k], inst->args[k], var, t)) return false;
      return true;
    }
    case Formula::Kind::Imp:
    case Formula::Kind::And:
      return match_formula_inst(body->lhs, inst->lhs, var, t) &&
             match_formula_inst(body->rhs, inst->rhs, var, t);
    case Formula::Kind::Forall:
      if (body->var != inst->var) return false;
      if (body->var == var) return formula_equal(body->lhs, inst->lhs);  // var shadowed
      return match_formula_inst(body->lhs, inst->lhs, var, t);
  }
  return false;
}

// u and v are identical except at one direct argument position, where u has t
// and v has s.
bool one_step_congruence(const TermPtr& u, const TermPtr& v, const TermPtr& t, const TermPtr& s) {
  if (u->kind != v->kind) return false;
  switch (u->kind) {
    case Term::Kind::Succ: return term_equal(u->lhs, t) && term_equal(v->lhs, s);
    case Term::Kind::Plus:
    case Term::Kind::Times: {
      bool left = term_equal(u->lhs, t) && term_equal(v->lhs, s) && term_equal(u->rhs, v->rhs);
      bool right = term_equal(u->rhs, t) && term_equal(v->rhs, s) && term_equal(u->lhs, v->lhs);
      return left || right;
    }
    default: return false;
  }
}

}  // namespace

std::optional<std::string> logical_axiom(const FormulaPtr& f) {
  if (!is_imp(f)) {
    TermPtr a, b;
    if (eq2(f, a, b) && term_equal(a, b)) return "EqRefl";
    return std::nullopt;
  }
  const FormulaPtr& l = f->lhs;
  const FormulaPtr& r = f->rhs;

  // K: a -> (b -> a)
  if (is_imp(r) && formula_equal(l, r->rhs)) return "K";
  // S: (a -> (b -> c)) -> ((a -> b) -> (a -> c))
  if (is_imp(l) && is_imp(l->rhs) && is_imp(r) && is_imp(r->lhs) && is_imp(r->rhs) &&
      formula_equal(l->lhs, r->lhs->lhs) && formula_equal(l->lhs, r->rhs->lhs) &&
      formula_equal(l->rhs->lhs, r->lhs->rhs) && formula_equal(l->rhs->rhs, r->rhs->rhs))
    return "S";
  // DNE: ((a -> bot) -> bot) -> a
  if (is_imp(l) && l->rhs->kind == Formula::Kind::Bot && is_imp(l->lhs) &&
      l->lhs->rhs->kind == Formula::Kind::Bot && formula_equal(l->lhs->lhs, r))
    return "DNE";
  // AndI: a -> (b -> (a /\ b))
  if (is_imp(r) && r->rhs->kind == Formula::Kind::And && formula_equal(l, r->rhs->lhs) &&
      formula_equal(r->lhs, r->rhs->rhs))
    return "AndI";
  // AndE1 / AndE2: (a /\ b) -> a, (a /\ b) -> b
  if (l->kind == Formula::Kind::And) {
    if (formula_equal(l->lhs, r)) return "AndE1";
    if (formula_equal(l->rhs, r)) return "AndE2";
  }
  // ForallDist: forall x (a -> b) -> (forall x a -> forall x b)
  if (l->kind == Formula::Kind::Forall && is_imp(l->lhs) && is_imp(r) &&
      r->lhs->kind == Formula::Kind::Forall && r->rhs->kind == Formula::Kind::Forall &&
      r->lhs->var == l->var && r->rhs->var == l->var &&
      formula_equal(l->lhs->lhs, r->lhs->lhs) && formula_equal(l->lhs->rhs, r->rhs->lhs))
    return "ForallDist";
  // ForallVac: a -> forall x a, x not free in a
  if (r->kind == Formula::Kind::Forall && formula_equal(l, r->lhs) &&
      !free_vars(l).count(r->var))
    return "ForallVac";
  // ForallInst: forall x a -> a[t/x], t closed
  if (l->kind == Formula::Kind::Forall) {
    TermPtr t;
    if (match_formula_inst(l->lhs, r, l->var, t)) return "ForallInst";
  }
  // Equality schemas
  TermPtr a, b, c, d, e, g;
  if (eq2(l, a, b)) {
    // EqSym: t=s -> s=t
    if (eq2(r, c, d) && term_equal(a, d) && term_equal(b, c)) return "EqSym";
    // EqTrans: t=s -> (s=r -> t=r)
    if (is_imp(r) && eq2(r->lhs, c, d) && eq2(r->rhs, e, g) && term_equal(b, c) &&
        term_equal(a, e) && term_equal(d, g))
      return "EqTrans";
    // EqCong: t=s -> u=v, u/v a one-step context around t/s
    if (eq2(r, c, d) && one_step_congruence(c, d, a, b)) return "EqCong";
  }
  return std::nullopt;
}

const Theory& q_theory() {
  static const Theory t = [] {
    auto x = mk_var("x");
    auto y = mk_var("y");
    Theory q;
    q.name = "q";
    q.axioms = {
        {"Q1", mk_forall("x", mk_neg(mk_eq(mk_succ(x), mk_zero())))},
        {"Q2", mk_forall("x", mk_forall("y", mk_imp(mk_eq(mk_succ(x), mk_succ(y)),
                                                    mk_eq(x, y))))},
        {"Q3", mk_forall("x", mk_imp(mk_neg(mk_eq(x, mk_zero())),
                                     mk_exists("y", mk_eq(x, mk_succ(y)))))},
        {"Q4", mk_forall("x", mk_eq(mk_plus(x, mk_zero()), x))},
        {"Q5", mk_forall("x", mk_forall("y", mk_eq(mk_plus(x, mk_succ(y)),
                                                   mk_succ(mk_plus(x, y)))))},
        {"Q6", mk_forall("x", mk_eq(mk_times(x, mk_zero()), mk_zero()))},
        {"Q7", mk_forall("x", mk_forall("y", mk_eq(mk_times(x, mk_succ(y)),
                                                   mk_plus(mk_times(x, y), x))))},
    };
    return q;
  }();
  return t;
}

Theory theory_from_axioms(std::string name, const std::vector<FormulaPtr>& axioms) {
  Theory t;
  t.name = std::move(name);
  for (std::size_t i = 0; i < axioms.size(); ++i)
    t.axioms.emplace_back(t.name + "." + std::to_string(i + 1), axioms[i]);
  return t;
}

std::optional<std::string> axiom_name(const FormulaPtr& f, const Theory& t) {
  if (auto s = logical_axiom(f)) return s;
  for (const auto& [name, ax] : t.axioms)
    if (formula_equal(ax, f)) return name;
  return std::nullopt;
}

namespace {

bool justifies(const Proof& p, const Theory& t, std::size_t k, const Justification& j,
               std::string* schema_out) {
  const FormulaPtr& f = p.lines[k].formula;
  switch (j.kind) {
    case Justification::Kind::Axiom: {
      auto name = axiom_name(f, t);
      if (name && schema_out) *schema_out = *name;
      return name.has_value();
    }
    case Justification::Kind::MP: {
      if (j.i < 1 || j.j < 1 || j.i > k || j.j > k) return false;
      const FormulaPtr& prem = p.lines[j.i - 1].formula;
      const FormulaPtr& imp = p.lines[j.j - 1].formula;
      return is_imp(imp) && formula_equal(imp->lhs, prem) && formula_equal(imp->rhs, f);
    }
    case Justification::Kind::Gen: {
      if (j.i < 1 || j.i > k) return false;
      return f->kind == Formula::Kind::Forall &&
             formula_equal(f->lhs, p.lines[j.i - 1].formula);
    }
  }
  return false;
}

std::optional<Justification> find_justification(const Proof& p, const Theory& t,
                                                std::size_t k) {
  const FormulaPtr& f = p.lines[k].formula;
  if (auto name = axiom_name(f, t)) {
    Justification j;
    j.kind = Justification::Kind::Axiom;
    j.schema = *name;
    return j;
  }
  for (std::size_t b = 0; b < k; ++b) {
    const FormulaPtr& imp = p.lines[b].formula;
    if (!is_imp(imp) || !formula_equal(imp->rhs, f)) continue;
    for (std::size_t a = 0; a < k; ++a) {
      if (formula_equal(p.lines[a].formula, imp->lhs)) {
        Justification j;
        j.kind = Justification::Kind::MP;
        j.i = a + 1;
        j.j = b + 1;
        return j;
      }
    }
  }
  if (f->kind == Formula::Kind::Forall) {
    for (std::size_t a = 0; a < k; ++a) {
      if (formula_equal(p.lines[a].formula, f->lhs)) {
        Justification j;
        j.kind = Justification::Kind::Gen;
        j.i = a + 1;
        return j;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

CheckResult check_proof(const Proof& p, const Theory& t) {
  CheckResult r;
  if (p.lines.empty()) {
    r.reason = "empty proof";
    return r;
  }
  for (std::size_t k = 0; k < p.lines.size(); ++k) {
    LineReport rep;
    const auto& hint = p.lines[k].hint;
    if (hint && justifies(p, t, k, *hint, &rep.used.schema)) {
      std::string actual = rep.used.schema;  // recomputed name, Axiom case only
      rep.used = *hint;
      if (rep.used.kind == Justification::Kind::Axiom && !actual.empty()) {
        rep.hint_mismatch = !hint->schema.empty() && hint->schema != actual;
        rep.used.schema = actual;
      }
      r.lines.push_back(rep);
      continue;
    }
    auto found = find_justification(p, t, k);
    if (found) {
      rep.used = *found;
      rep.hint_mismatch = hint.has_value();
      r.lines.push_back(rep);
      continue;
    }
    r.bad_line = k + 1;
    if (hint) {
      switch (hint->kind) {
        case Justification::Kind::Axiom: r.reason = "not-axiom"; break;
        case Justification::Kind::MP: r.reason = "bad-mp"; break;
        case Justification::Kind::Gen: r.reason = "bad-gen"; break;
      }
    } else {
      r.reason = "no-justification";
    }
    return r;
  }
  r.ok = true;
  return r;
}

FormulaPtr checked_conclusion(const Proof& p, const Theory& t) {
  CheckResult r = check_proof(p, t);
  if (!r.ok)
    throw std::runtime_error("proof check failed at line " + std::to_string(r.bad_line) +
                             ": " + r.reason);
  return p.conclusion();
}

Proof prefix(const Proof& p, std::size_t k) {
  if (k < 1 || k > p.lines.size())
    throw std::invalid_argument("prefix: k out of range");
  Proof out;
  out.lines.assign(p.lines.begin(), p.lines.begin() + static_cast<std::ptrdiff_t>(k));
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Appends lines with recorded justifications; indices are 1-based.
class Builder {
 public:
  std::size_t axiom(FormulaPtr f, std::string schema = "") {
    Justification j;
    j.kind = Justification::Kind::Axiom;
    j.schema = std::move(schema);
    return push(std::move(f), j);
  }
  std::size_t mp(std::size_t i, std::size_t j) {
    const FormulaPtr& imp = p_.lines[j - 1].formula;
    Justification just;
    just.kind = Justification::Kind::MP;
    just.i = i;
    just.j = j;
    return push(imp->rhs, just);
  }
  // From lines proving a->b and b->c, derives a->c (K/S composition).
  std::size_t compose(std::size_t ab, std::size_t bc) {
    FormulaPtr a = p_.lines[ab - 1].formula->lhs;
    FormulaPtr b = p_.lines[ab - 1].formula->rhs;
    FormulaPtr c = p_.lines[bc - 1].formula->rhs;
    FormulaPtr bc_f = p_.lines[bc - 1].formula;
    std::size_t k1 = axiom(mk_imp(bc_f, mk_imp(a, bc_f)), "K");
    std::size_t l1 = mp(bc, k1);  // a -> (b -> c)
    std::size_t s1 = axiom(mk_imp(mk_imp(a, mk_imp(b, c)),
                                  mk_imp(mk_imp(a, b), mk_imp(a, c))),
                           "S");
    std::size_t l2 = mp(l1, s1);  // (a -> b) -> (a -> c)
    return mp(ab, l2);            // a -> c
  }
  // From a line proving forall x body, derives body[t/x].
  std::size_t inst(std::size_t univ, const TermPtr& t) {
    const FormulaPtr& u = p_.lines[univ - 1].formula;
    FormulaPtr instf = substitute(u->lhs, u->var, t);
    std::size_t ax = axiom(mk_imp(u, instf), "ForallInst");
    return mp(univ, ax);
  }
  std::size_t last() const { return p_.lines.size(); }
  Proof take() { return std::move(p_); }

 private:
  std::size_t push(FormulaPtr f, Justification j) {
    p_.lines.push_back(ProofLine{std::move(f), j});
    return p_.lines.size();
  }
  Proof p_;
};

}  // namespace

Proof prove_numeral_atom(const Nat& m, const Nat& n, const Nat& bound) {
  if (m > bound || n > bound)
    throw std::invalid_argument("prove_numeral_atom: numeral bound exceeded");
  Builder b;
  if (m == n) {
    b.axiom(mk_eq(numeral(m), numeral(m)), "EqRefl");
    return b.take();
  }
  const Nat lo = m < n ? m : n;
  const Nat d = m < n ? n - m : m - n;  // d >= 1
  const auto& q2 = q_theory().axioms[1].second;
  // Chain of injectivity steps: m=n -> (m-1)=(n-1) -> ... -> (m-lo)=(n-lo).
  std::optional<std::size_t> chain;
  for (Nat k = 0; k < lo; ++k) {
    Nat a = m - k - 1, c = n - k - 1;
    std::size_t ax = b.axiom(q2, "Q2");
    std::size_t u1 = b.inst(ax, numeral(a));
    std::size_t step = b.inst(u1, numeral(c));  // S(a)=S(c) -> a=c
    chain = chain ? b.compose(*chain, step) : step;
  }
  // ~(d=0) from Q1.
  const auto& q1 = q_theory().axioms[0].second;
  std::size_t ax1 = b.axiom(q1, "Q1");
  std::size_t neg_d0 = b.inst(ax1, numeral(d - 1));  // S(d-1)=0 -> bot
  std::size_t tail;  // (m-lo)=(n-lo) -> bot
  if (m > n) {
    tail = neg_d0;  // m-lo = d, n-lo = 0
  } else {
    // m-lo = 0, n-lo = d: compose 0=d -> d=0 with ~(d=0).
    std::size_t sym = b.axiom(mk_imp(mk_eq(numeral(Nat(0)), numeral(d)),
                                     mk_eq(numeral(d), numeral(Nat(0)))),
                              "EqSym");
    tail = b.compose(sym, neg_d0);
  }
  if (chain) b.compose(*chain, tail);
  return b.take();
}

bool eval_delta0_truth(const FormulaPtr& f, std::uint64_t budget) {
  EvalOptions opts;
  opts.budget = budget;
  return eval_delta0_sentence(f, opts);
}

// ---------------------------------------------------------------------------

Proof parse_proof(const std::string& text) {
  Proof p;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::string body = line.substr(start);
    std::size_t colon = body.find(':');
    if (colon == std::string::npos)
      throw ParseError("proof line " + std::to_string(lineno) + ": missing ':'", 0);
    std::size_t idx;
    try {
      idx = std::stoul(body.substr(0, colon));
    } catch (const std::exception&) {
      throw ParseError("proof line " + std::to_string(lineno) + ": bad line number", 0);
    }
    if (idx != p.lines.size() + 1)
      throw ParseError("proof line " + std::to_string(lineno) +
                           ": expected line number " + std::to_string(p.lines.size() + 1),
                       0);
    std::string rest = body.substr(colon + 1);
    std::optional<Justification> hint;
    std::size_t hash = rest.find('#');
    if (hash != std::string::npos) {
      std::istringstream hs(rest.substr(hash + 1));
      std::string kw;
      hs >> kw;
      Justification j;
      if (kw == "axiom") {
        j.kind = Justification::Kind::Axiom;
      } else if (kw == "mp") {
        j.kind = Justification::Kind::MP;
        char comma = 0;
        if (!(hs >> j.i >> comma >> j.j) || comma != ',')
          throw ParseError("proof line " + std::to_string(lineno) + ": bad mp hint", 0);
      } else if (kw == "gen") {
        j.kind = Justification::Kind::Gen;
        if (!(hs >> j.i))
          throw ParseError("proof line " + std::to_string(lineno) + ": bad gen hint", 0);
      } else {
        throw ParseError("proof line " + std::to_string(lineno) + ": unknown hint '" +
                             kw + "'",
                         0);
      }
      hint = j;
      rest = rest.substr(0, hash);
    }
    p.lines.push_back(ProofLine{parse_formula(rest), hint});
  }
  if (p.lines.empty()) throw ParseError("empty proof", 0);
  return p;
}

std::string serialize_proof(const Proof& p) {
  std::ostringstream out;
  for (std::size_t k = 0; k < p.lines.size(); ++k) {
    out << (k + 1) << ": " << print_formula(p.lines[k].formula);
    if (const auto& h = p.lines[k].hint) {
      switch (h->kind) {
        case Justification::Kind::Axiom: out << " # axiom"; break;
        case Justification::Kind::MP: out << " # mp " << h->i << "," << h->j; break;
        case Justification::Kind::Gen: out << " # gen " << h->i; break;
      }
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace pts

#include "pts/delta0.hpp"

namespace pts {

namespace {
bool is_var(const TermPtr& t, const std::string& name) {
  return t->kind == Term::Kind::Var && t->name == name;
}
}  // namespace

std::optional<LeqPattern> match_leq(const FormulaPtr& f) {
  // (forall w ((left + w = right) -> bot)) -> bot
  if (f->kind != Formula::Kind::Imp || f->rhs->kind != Formula::Kind::Bot) return std::nullopt;
  const FormulaPtr& fa = f->lhs;
  if (fa->kind != Formula::Kind::Forall) return std::nullopt;
  const std::string& w = fa->var;
  const FormulaPtr& inner = fa->lhs;
  if (inner->kind != Formula::Kind::Imp || inner->rhs->kind != Formula::Kind::Bot)
    return std::nullopt;
  const FormulaPtr& eq = inner->lhs;
  if (eq->kind != Formula::Kind::Atom || eq->pred != "=" || eq->args.size() != 2)
    return std::nullopt;
  const TermPtr& sum = eq->args[0];
  if (sum->kind != Term::Kind::Plus || !is_var(sum->rhs, w)) return std::nullopt;
  if (free_vars(sum->lhs).count(w) || free_vars(eq->args[1]).count(w)) return std::nullopt;
  return LeqPattern{sum->lhs, eq->args[1]};
}

std::optional<BoundedForallPattern> match_bounded_forall(const FormulaPtr& f) {
  if (f->kind != Formula::Kind::Forall) return std::nullopt;
  const FormulaPtr& body = f->lhs;
  if (body->kind != Formula::Kind::Imp) return std::nullopt;
  auto leq = match_leq(body->lhs);
  if (!leq) return std::nullopt;
  BoundedForallPattern out;
  out.var = f->var;
  out.body = body->rhs;
  if (is_var(leq->left, f->var)) {
    out.strict = false;
  } else if (leq->left->kind == Term::Kind::Succ && is_var(leq->left->lhs, f->var)) {
    out.strict = true;
  } else {
    return std::nullopt;
  }
  if (free_vars(leq->right).count(f->var)) return std::nullopt;
  out.bound = leq->right;
  return out;
}

std::optional<ExistsPattern> match_exists(const FormulaPtr& f) {
  // (forall x (body -> bot)) -> bot
  if (f->kind != Formula::Kind::Imp || f->rhs->kind != Formula::Kind::Bot) return std::nullopt;
  const FormulaPtr& fa = f->lhs;
  if (fa->kind != Formula::Kind::Forall) return std::nullopt;
  const FormulaPtr& inner = fa->lhs;
  if (inner->kind != Formula::Kind::Imp || inner->rhs->kind != Formula::Kind::Bot)
    return std::nullopt;
  return ExistsPattern{fa->var, inner->lhs};
}

bool is_delta0(const FormulaPtr& f) {
  if (match_leq(f)) return true;
  switch (f->kind) {
    case Formula::Kind::Atom:
    case Formula::Kind::Bot: return true;
    case Formula::Kind::And:
    case Formula::Kind::Imp: return is_delta0(f->lhs) && is_delta0(f->rhs);
    case Formula::Kind::Forall: {
      auto bf = match_bounded_forall(f);
      return bf && is_delta0(bf->body);
    }
  }
  return false;
}

FormulaClass classify(const FormulaPtr& f) {
  if (is_delta0(f)) return FormulaClass::Delta0;
  if (auto ex = match_exists(f); ex && is_delta0(ex->body)) return FormulaClass::Sigma1;
  return FormulaClass::Beyond;
}

// ---------------------------------------------------------------------------

Nat eval_term(const TermPtr& t, const Env& env) {
  switch (t->kind) {
    case Term::Kind::Zero: return 0;
    case Term::Kind::Succ: return eval_term(t->lhs, env) + 1;
    case Term::Kind::Plus: return eval_term(t->lhs, env) + eval_term(t->rhs, env);
    case Term::Kind::Times: return eval_term(t->lhs, env) * eval_term(t->rhs, env);
    case Term::Kind::Var: {
      auto it = env.find(t->name);
      if (it == env.end())
        throw std::invalid_argument("eval_term: unbound variable " + t->name);
      return it->second;
    }
    case Term::Kind::Const:
      throw std::invalid_argument("eval_term: constant symbol " + t->name +
                                  " has no numeric value");
  }
  throw std::logic_error("unreachable");
}

namespace {

class Evaluator {
 public:
  Evaluator(const EvalOptions& opts) : opts_(opts), budget_(opts.budget) {}

  bool eval(const FormulaPtr& f, Env& env) {
    tick();
    if (auto leq = match_leq(f)) return eval_term(leq->left, env) <= eval_term(leq->right, env);
    switch (f->kind) {
      case Formula::Kind::Bot: return false;
      case Formula::Kind::Atom: {
        if (f->pred == "=") {
          if (f->args.size() != 2)
            throw std::invalid_argument("equality atom must have two arguments");
          return eval_term(f->args[0], env) == eval_term(f->args[1], env);
        }
        if (!opts_.oracle)
          throw std::invalid_argument("uninterpreted predicate in evaluation: " + f->pred);
        std::vector<Nat> args;
        args.reserve(f->args.size());
        for (const auto& a : f->args) args.push_back(eval_term(a, env));
        return opts_.oracle(f->pred, args);
      }
      case Formula::Kind::And: return eval(f->lhs, env) && eval(f->rhs, env);
      case Formula::Kind::Imp: return !eval(f->lhs, env) || eval(f->rhs, env);
      case Formula::Kind::Forall: {
        auto bf = match_bounded_forall(f);
        if (!bf)
          throw NotDelta0Error("unbounded universal quantifier over " + f->var);
        Nat hi = eval_term(bf->bound, env);
        if (bf->strict) {
          if (hi == 0) return true;
          hi -= 1;
        }
        if (opts_.solver) {
          if (auto r = eval_functional(*bf, hi, env)) return *r;
        }
        auto saved = save(env, bf->var);
        bool result = true;
        for (Nat x = 0; x <= hi; ++x) {
          tick();
          env[bf->var] = x;
          if (!eval(bf->body, env)) { result = false; break; }
        }
        restore(env, bf->var, saved);
        return result;
      }
    }
    throw std::logic_error("unreachable");
  }

 private:
  // Bounded universals whose matrix is (P(.., x) /\ rest) -> bot for a
  // functional predicate P have at most one non-vacuous instance; solve for
  // it instead of scanning the range.
  std::optional<bool> eval_functional(const BoundedForallPattern& bf, const Nat& hi, Env& env) {
    const FormulaPtr& m = bf.body;
    if (m->kind != Formula::Kind::Imp || m->rhs->kind != Formula::Kind::Bot) return std::nullopt;
    // leftmost conjunct of the matrix
    FormulaPtr head = m->lhs;
    while (head->kind == Formula::Kind::And) head = head->lhs;
    if (head->kind != Formula::Kind::Atom || head->pred == "=" || head->args.empty())
      return std::nullopt;
    const TermPtr& last = head->args.back();
    if (last->kind != Term::Kind::Var || last->name != bf.var) return std::nullopt;
    std::vector<Nat> prefix;
    for (std::size_t i = 0; i + 1 < head->args.size(); ++i) {
      if (free_vars(head->args[i]).count(bf.var)) return std::nullopt;
      prefix.push_back(eval_term(head->args[i], env));
    }
    std::optional<Nat> witness;
    if (!opts_.solver(head->pred, prefix, witness)) return std::nullopt;
    if (!witness || *witness > hi) return true;  // every instance vacuous
    auto saved = save(env, bf.var);
    env[bf.var] = *witness;
    bool ok = eval(m, env);
    restore(env, bf.var, saved);
    return ok;
  }

  void tick() {
    if (budget_ == 0) throw BudgetExceeded();
    --budget_;
  }
  static std::optional<Nat> save(Env& env, const std::string& v) {
    auto it = env.find(v);
    if (it == env.end()) return std::nullopt;
    return it->second;
  }
  static void restore(Env& env, const std::string& v, const std::optional<Nat>& saved) {
    if (saved) env[v] = *saved;
    else env.erase(v);
  }

  const EvalOptions& opts_;
  std::uint64_t budget_;
};

}  // namespace

bool eval_delta0_formula(const FormulaPtr& f, const Env& env, const EvalOptions& opts) {
  Env e = env;
  Evaluator ev(opts);
  return ev.eval(f, e);
}

bool eval_delta0_sentence(const FormulaPtr& f, const EvalOptions& opts) {
  if (!is_closed(f)) throw std::invalid_argument("eval_delta0_sentence: formula is open");
  return eval_delta0_formula(f, Env{}, opts);
}

}  // namespace pts

#include "pts/syntax.hpp"

#include <cctype>
#include <sstream>

namespace pts {

TermPtr mk_zero() {
  static const TermPtr z = std::make_shared<Term>(Term{Term::Kind::Zero, "", nullptr, nullptr});
  return z;
}
TermPtr mk_succ(TermPtr t) {
  return std::make_shared<Term>(Term{Term::Kind::Succ, "", std::move(t), nullptr});
}
TermPtr mk_plus(TermPtr a, TermPtr b) {
  return std::make_shared<Term>(Term{Term::Kind::Plus, "", std::move(a), std::move(b)});
}
TermPtr mk_times(TermPtr a, TermPtr b) {
  return std::make_shared<Term>(Term{Term::Kind::Times, "", std::move(a), std::move(b)});
}
TermPtr mk_var(std::string name) {
  return std::make_shared<Term>(Term{Term::Kind::Var, std::move(name), nullptr, nullptr});
}
TermPtr mk_const(std::string name) {
  return std::make_shared<Term>(Term{Term::Kind::Const, std::move(name), nullptr, nullptr});
}

FormulaPtr mk_atom(std::string pred, std::vector<TermPtr> args) {
  return std::make_shared<Formula>(
      Formula{Formula::Kind::Atom, std::move(pred), std::move(args), nullptr, nullptr, ""});
}
FormulaPtr mk_eq(TermPtr a, TermPtr b) {
  return mk_atom("=", {std::move(a), std::move(b)});
}
FormulaPtr mk_bot() {
  static const FormulaPtr b = std::make_shared<Formula>(
      Formula{Formula::Kind::Bot, "", {}, nullptr, nullptr, ""});
  return b;
}
FormulaPtr mk_imp(FormulaPtr a, FormulaPtr b) {
  return std::make_shared<Formula>(
      Formula{Formula::Kind::Imp, "", {}, std::move(a), std::move(b), ""});
}
FormulaPtr mk_and(FormulaPtr a, FormulaPtr b) {
  return std::make_shared<Formula>(
      Formula{Formula::Kind::And, "", {}, std::move(a), std::move(b), ""});
}
FormulaPtr mk_forall(std::string var, FormulaPtr body) {
  return std::make_shared<Formula>(
      Formula{Formula::Kind::Forall, "", {}, std::move(body), nullptr, std::move(var)});
}

FormulaPtr mk_neg(FormulaPtr a) { return mk_imp(std::move(a), mk_bot()); }
FormulaPtr mk_or(FormulaPtr a, FormulaPtr b) {
  return mk_neg(mk_and(mk_neg(std::move(a)), mk_neg(std::move(b))));
}
FormulaPtr mk_exists(std::string var, FormulaPtr body) {
  return mk_neg(mk_forall(std::move(var), mk_neg(std::move(body))));
}

namespace {
std::string fresh_var(const std::set<std::string>& avoid) {
  static const char* prefs[] = {"w", "v", "u", "z", "y", "x"};
  for (const char* p : prefs)
    if (!avoid.count(p)) return p;
  for (int i = 0;; ++i) {
    std::string cand = "w" + std::to_string(i);
    if (!avoid.count(cand)) return cand;
  }
}
}  // namespace

FormulaPtr mk_less(TermPtr t, TermPtr s) {
  auto avoid = free_vars(t);
  auto fs = free_vars(s);
  avoid.insert(fs.begin(), fs.end());
  std::string w = fresh_var(avoid);
  return mk_exists(w, mk_eq(mk_plus(std::move(t), mk_var(w)), std::move(s)));
}

FormulaPtr mk_bounded_forall(std::string var, TermPtr bound, FormulaPtr body) {
  auto avoid = free_vars(bound);
  avoid.insert(var);
  std::string w = fresh_var(avoid);
  auto guard = mk_exists(w, mk_eq(mk_plus(mk_var(var), mk_var(w)), std::move(bound)));
  return mk_forall(std::move(var), mk_imp(std::move(guard), std::move(body)));
}

FormulaPtr mk_bounded_exists(std::string var, TermPtr bound, FormulaPtr body) {
  auto avoid = free_vars(bound);
  avoid.insert(var);
  std::string w = fresh_var(avoid);
  auto guard = mk_exists(w, mk_eq(mk_plus(mk_var(var), mk_var(w)), std::move(bound)));
  return mk_neg(mk_forall(std::move(var), mk_imp(std::move(guard), mk_neg(std::move(body)))));
}

bool term_equal(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Term::Kind::Zero: return true;
    case Term::Kind::Var:
    case Term::Kind::Const: return a->name == b->name;
    case Term::Kind::Succ: return term_equal(a->lhs, b->lhs);
    case Term::Kind::Plus:
    case Term::Kind::Times:
      return term_equal(a->lhs, b->lhs) && term_equal(a->rhs, b->rhs);
  }
  return false;
}

bool formula_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Formula::Kind::Bot: return true;
    case Formula::Kind::Atom: {
      if (a->pred != b->pred || a->args.size() != b->args.size()) return false;
      for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!term_equal(a->args[i], b->args[i])) return false;
      return true;
    }
    case Formula::Kind::Imp:
    case Formula::Kind::And:
      return formula_equal(a->lhs, b->lhs) && formula_equal(a->rhs, b->rhs);
    case Formula::Kind::Forall:
      return a->var == b->var && formula_equal(a->lhs, b->lhs);
  }
  return false;
}

bool is_variable_name(const std::string& name) {
  if (name.empty()) return false;
  char c = name[0];
  if (c != 'x' && c != 'y' && c != 'z' && c != 'u' && c != 'v' && c != 'w') return false;
  for (std::size_t i = 1; i < name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Token {
  enum class Kind {
    Ident, Number, Arrow, AndOp, OrOp, Not, Forall, Exists, Bot,
    Eq, Less, Plus, Times, LParen, RParen, Comma, Dot, End
  };
  Kind kind;
  std::string text;
  std::size_t pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : src_(s) { tokenize(); }
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = idx_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  Token next() {
    const Token& t = peek();
    if (t.kind != Token::Kind::End) ++idx_;
    return t;
  }
  std::size_t mark() const { return idx_; }
  void reset(std::size_t m) { idx_ = m; }

 private:
  void tokenize() {
    std::size_t i = 0;
    auto starts = [&](std::string_view w) {
      return src_.compare(i, w.size(), w) == 0;
    };
    while (i < src_.size()) {
      char c = src_[i];
      if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
      std::size_t start = i;
      if (starts("->")) { push(Token::Kind::Arrow, "->", start); i += 2; continue; }
      if (starts("/\\")) { push(Token::Kind::AndOp, "/\\", start); i += 2; continue; }
      if (starts("\\/")) { push(Token::Kind::OrOp, "\\/", start); i += 2; continue; }
      if (starts("_|_")) { push(Token::Kind::Bot, "_|_", start); i += 3; continue; }
      // UTF-8 aliases
      if (starts("→")) { push(Token::Kind::Arrow, "->", start); i += 3; continue; }
      if (starts("∧")) { push(Token::Kind::AndOp, "/\\", start); i += 3; continue; }
      if (starts("∨")) { push(Token::Kind::OrOp, "\\/", start); i += 3; continue; }
      if (starts("¬")) { push(Token::Kind::Not, "~", start); i += 2; continue; }
      if (starts("∀")) { push(Token::Kind::Forall, "forall", start); i += 3; continue; }
      if (starts("∃")) { push(Token::Kind::Exists, "exists", start); i += 3; continue; }
      if (starts("⊥")) { push(Token::Kind::Bot, "_|_", start); i += 3; continue; }
      if (starts("×")) { push(Token::Kind::Times, "*", start); i += 2; continue; }
      switch (c) {
        case '~': push(Token::Kind::Not, "~", start); ++i; continue;
        case '=': push(Token::Kind::Eq, "=", start); ++i; continue;
        case '<': push(Token::Kind::Less, "<", start); ++i; continue;
        case '+': push(Token::Kind::Plus, "+", start); ++i; continue;
        case '*': push(Token::Kind::Times, "*", start); ++i; continue;
        case '(': push(Token::Kind::LParen, "(", start); ++i; continue;
        case ')': push(Token::Kind::RParen, ")", start); ++i; continue;
        case ',': push(Token::Kind::Comma, ",", start); ++i; continue;
        case '.': push(Token::Kind::Dot, ".", start); ++i; continue;
        case '&': push(Token::Kind::AndOp, "/\\", start); ++i; continue;
        case '|': push(Token::Kind::OrOp, "\\/", start); ++i; continue;
        default: break;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t j = i;
        while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) ++j;
        push(Token::Kind::Number, std::string(src_.substr(i, j - i)), start);
        i = j;
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '#' || c == '$') {
        std::size_t j = i;
        while (j < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[j])) || src_[j] == '_' ||
                src_[j] == '#' || src_[j] == '$'))
          ++j;
        std::string word(src_.substr(i, j - i));
        if (word == "forall") push(Token::Kind::Forall, word, start);
        else if (word == "exists") push(Token::Kind::Exists, word, start);
        else if (word == "bot") push(Token::Kind::Bot, "_|_", start);
        else push(Token::Kind::Ident, word, start);
        i = j;
        continue;
      }
      throw ParseError("unexpected character '" + std::string(1, c) + "'", i);
    }
    push(Token::Kind::End, "", src_.size());
  }
  void push(Token::Kind k, std::string t, std::size_t p) { toks_.push_back({k, std::move(t), p}); }
  std::string_view src_;
  std::vector<Token> toks_;
  std::size_t idx_ = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view s) : lex_(s) {}

  FormulaPtr formula_all() {
    auto f = formula();
    expect(Token::Kind::End, "trailing input after formula");
    return f;
  }
  TermPtr term_all() {
    auto t = term();
    expect(Token::Kind::End, "trailing input after term");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg, lex_.peek().pos);
  }
  Token expect(Token::Kind k, const std::string& msg) {
    if (lex_.peek().kind != k) fail(msg);
    return lex_.next();
  }

  FormulaPtr formula() { return imp(); }

  FormulaPtr imp() {
    auto a = orf();
    if (lex_.peek().kind == Token::Kind::Arrow) {
      lex_.next();
      return mk_imp(std::move(a), imp());
    }
    return a;
  }

  FormulaPtr orf() {
    auto a = andf();
    while (lex_.peek().kind == Token::Kind::OrOp) {
      lex_.next();
      a = mk_or(std::move(a), andf());
    }
    return a;
  }

  FormulaPtr andf() {
    auto a = unary();
    while (lex_.peek().kind == Token::Kind::AndOp) {
      lex_.next();
      a = mk_and(std::move(a), unary());
    }
    return a;
  }

  FormulaPtr unary() {
    const Token& t = lex_.peek();
    if (t.kind == Token::Kind::Not) {
      lex_.next();
      return mk_neg(unary());
    }
    if (t.kind == Token::Kind::Forall || t.kind == Token::Kind::Exists) {
      bool uni = t.kind == Token::Kind::Forall;
      lex_.next();
      Token v = expect(Token::Kind::Ident, "expected variable after quantifier");
      if (!is_variable_name(v.text))
        throw ParseError("'" + v.text + "' is not a variable name", v.pos);
      TermPtr bound;
      if (lex_.peek().kind == Token::Kind::Less) {
        lex_.next();
        bound = term();
      }
      expect(Token::Kind::Dot, "expected '.' after quantifier binder");
      auto body = imp();
      if (bound) {
        return uni ? mk_bounded_forall(v.text, bound, std::move(body))
                   : mk_bounded_exists(v.text, bound, std::move(body));
      }
      return uni ? mk_forall(v.text, std::move(body)) : mk_exists(v.text, std::move(body));
    }
    return atomf();
  }

  FormulaPtr atomf() {
    const Token& t = lex_.peek();
    if (t.kind == Token::Kind::Bot) {
      lex_.next();
      return mk_bot();
    }
    if (t.kind == Token::Kind::LParen) {
      // Either a parenthesized formula or a parenthesized term followed by a
      // comparison; try the term reading first.
      std::size_t m = lex_.mark();
      try {
        auto lt = term();
        if (lex_.peek().kind == Token::Kind::Eq || lex_.peek().kind == Token::Kind::Less)
          return comparison(std::move(lt));
      } catch (const ParseError&) {
      }
      lex_.reset(m);
      lex_.next();
      auto f = formula();
      expect(Token::Kind::RParen, "expected ')'");
      return f;
    }
    if (t.kind == Token::Kind::Ident && !is_variable_name(t.text) && t.text != "S" &&
        !t.text.empty() && std::isupper(static_cast<unsigned char>(t.text[0]))) {
      // Predicate atom.
      Token p = lex_.next();
      std::vector<TermPtr> args;
      if (lex_.peek().kind == Token::Kind::LParen) {
        lex_.next();
        args.push_back(term());
        while (lex_.peek().kind == Token::Kind::Comma) {
          lex_.next();
          args.push_back(term());
        }
        expect(Token::Kind::RParen, "expected ')' after predicate arguments");
      }
      return mk_atom(p.text, std::move(args));
    }
    return comparison(term());
  }

  FormulaPtr comparison(TermPtr lt) {
    const Token& op = lex_.peek();
    if (op.kind == Token::Kind::Eq) {
      lex_.next();
      return mk_eq(std::move(lt), term());
    }
    if (op.kind == Token::Kind::Less) {
      lex_.next();
      return mk_less(std::move(lt), term());
    }
    fail("expected '=' or '<' after term");
  }

  TermPtr term() {
    auto a = factor();
    while (lex_.peek().kind == Token::Kind::Plus) {
      lex_.next();
      a = mk_plus(std::move(a), factor());
    }
    return a;
  }

  TermPtr factor() {
    auto a = primary();
    while (lex_.peek().kind == Token::Kind::Times) {
      lex_.next();
      a = mk_times(std::move(a), primary());
    }
    return a;
  }

  TermPtr primary() {
    const Token& t = lex_.peek();
    if (t.kind == Token::Kind::Number) {
      Token n = lex_.next();
      return numeral(Nat(n.text));
    }
    if (t.kind == Token::Kind::LParen) {
      lex_.next();
      auto inner = term();
      expect(Token::Kind::RParen, "expected ')'");
      return inner;
    }
    if (t.kind == Token::Kind::Ident) {
      Token id = lex_.next();
      if (id.text == "S") {
        expect(Token::Kind::LParen, "expected '(' after S");
        auto inner = term();
        expect(Token::Kind::RParen, "expected ')'");
        return mk_succ(std::move(inner));
      }
      if (is_variable_name(id.text)) return mk_var(id.text);
      return mk_const(id.text);
    }
    fail("expected a term");
  }

  Lexer lex_;
};

}  // namespace

FormulaPtr parse_formula(std::string_view text) { return Parser(text).formula_all(); }
TermPtr parse_term(std::string_view text) { return Parser(text).term_all(); }

// ---------------------------------------------------------------------------
// Printing

namespace {

void print_term_rec(const TermPtr& t, std::ostream& os, int parent_prec, bool right_operand) {
  // precedence: + = 1, * = 2, atoms = 3
  switch (t->kind) {
    case Term::Kind::Zero: os << "0"; return;
    case Term::Kind::Var:
    case Term::Kind::Const: os << t->name; return;
    case Term::Kind::Succ:
      os << "S(";
      print_term_rec(t->lhs, os, 0, false);
      os << ")";
      return;
    case Term::Kind::Plus:
    case Term::Kind::Times: {
      int prec = t->kind == Term::Kind::Plus ? 1 : 2;
      bool need = prec < parent_prec || (prec == parent_prec && right_operand);
      if (need) os << "(";
      print_term_rec(t->lhs, os, prec, false);
      os << (t->kind == Term::Kind::Plus ? " + " : " * ");
      print_term_rec(t->rhs, os, prec, true);
      if (need) os << ")";
      return;
    }
  }
}

// precedence: -> = 1 (right assoc), /\ = 2, quantifier/atom = 3
void print_formula_rec(const FormulaPtr& f, std::ostream& os, int parent_prec, bool left_of_imp) {
  switch (f->kind) {
    case Formula::Kind::Bot: os << "_|_"; return;
    case Formula::Kind::Atom: {
      if (f->pred == "=" && f->args.size() == 2) {
        print_term_rec(f->args[0], os, 0, false);
        os << " = ";
        print_term_rec(f->args[1], os, 0, false);
        return;
      }
      os << f->pred;
      if (!f->args.empty()) {
        os << "(";
        for (std::size_t i = 0; i < f->args.size(); ++i) {
          if (i) os << ", ";
          print_term_rec(f->args[i], os, 0, false);
        }
        os << ")";
      }
      return;
    }
    case Formula::Kind::Imp: {
      bool need = parent_prec > 1 || left_of_imp;
      if (need) os << "(";
      print_formula_rec(f->lhs, os, 1, true);
      os << " -> ";
      print_formula_rec(f->rhs, os, 1, false);
      if (need) os << ")";
      return;
    }
    case Formula::Kind::And: {
      bool need = parent_prec > 2;
      if (need) os << "(";
      print_formula_rec(f->lhs, os, 2, false);
      os << " /\\ ";
      print_formula_rec(f->rhs, os, 3, false);  // right assoc not offered; parenthesize
      if (need) os << ")";
      return;
    }
    case Formula::Kind::Forall: {
      // the body extends maximally right, so a quantifier on the left of an
      // implication must be parenthesized
      bool need = parent_prec > 1 || left_of_imp;
      if (need) os << "(";
      os << "forall " << f->var << ". ";
      print_formula_rec(f->lhs, os, 1, false);
      if (need) os << ")";
      return;
    }
  }
}

}  // namespace

std::string print_term(const TermPtr& t) {
  std::ostringstream os;
  print_term_rec(t, os, 0, false);
  return os.str();
}

std::string print_formula(const FormulaPtr& f) {
  std::ostringstream os;
  print_formula_rec(f, os, 0, false);
  return os.str();
}

// ---------------------------------------------------------------------------

TermPtr numeral(const Nat& n) {
  if (n < 0 || n > 1000000) throw std::invalid_argument("numeral out of range");
  TermPtr t = mk_zero();
  for (Nat i = 0; i < n; ++i) t = mk_succ(t);
  return t;
}
TermPtr numeral(unsigned long long n) { return numeral(Nat(n)); }

bool numeral_value(const TermPtr& t, Nat& out) {
  Nat n = 0;
  const Term* cur = t.get();
  while (cur->kind == Term::Kind::Succ) {
    ++n;
    cur = cur->lhs.get();
  }
  if (cur->kind != Term::Kind::Zero) return false;
  out = n;
  return true;
}

namespace {
void collect_vars(const TermPtr& t, std::set<std::string>& out) {
  switch (t->kind) {
    case Term::Kind::Var: out.insert(t->name); return;
    case Term::Kind::Succ: collect_vars(t->lhs, out); return;
    case Term::Kind::Plus:
    case Term::Kind::Times:
      collect_vars(t->lhs, out);
      collect_vars(t->rhs, out);
      return;
    default: return;
  }
}
void collect_free(const FormulaPtr& f, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (f->kind) {
    case Formula::Kind::Bot: return;
    case Formula::Kind::Atom: {
      std::set<std::string> vs;
      for (const auto& a : f->args) collect_vars(a, vs);
      for (const auto& v : vs)
        if (!bound.count(v)) out.insert(v);
      return;
    }
    case Formula::Kind::Imp:
    case Formula::Kind::And:
      collect_free(f->lhs, bound, out);
      collect_free(f->rhs, bound, out);
      return;
    case Formula::Kind::Forall: {
      bool was = bound.count(f->var) > 0;
      bound.insert(f->var);
      collect_free(f->lhs, bound, out);
      if (!was) bound.erase(f->var);
      return;
    }
  }
}
}  // namespace

std::set<std::string> free_vars(const TermPtr& t) {
  std::set<std::string> out;
  collect_vars(t, out);
  return out;
}
std::set<std::string> free_vars(const FormulaPtr& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}
bool is_closed(const TermPtr& t) { return free_vars(t).empty(); }
bool is_closed(const FormulaPtr& f) { return free_vars(f).empty(); }

TermPtr substitute(const TermPtr& term, const std::string& var, const TermPtr& t) {
  switch (term->kind) {
    case Term::Kind::Zero:
    case Term::Kind::Const: return term;
    case Term::Kind::Var: return term->name == var ? t : term;
    case Term::Kind::Succ: {
      auto inner = substitute(term->lhs, var, t);
      return inner == term->lhs ? term : mk_succ(inner);
    }
    case Term::Kind::Plus:
    case Term::Kind::Times: {
      auto a = substitute(term->lhs, var, t);
      auto b = substitute(term->rhs, var, t);
      if (a == term->lhs && b == term->rhs) return term;
      return term->kind == Term::Kind::Plus ? mk_plus(a, b) : mk_times(a, b);
    }
  }
  return term;
}

FormulaPtr substitute(const FormulaPtr& f, const std::string& var, const TermPtr& t) {
  if (!is_closed(t)) throw std::invalid_argument("substitute: replacement term must be closed");
  switch (f->kind) {
    case Formula::Kind::Bot: return f;
    case Formula::Kind::Atom: {
      bool changed = false;
      std::vector<TermPtr> args;
      args.reserve(f->args.size());
      for (const auto& a : f->args) {
        auto na = substitute(a, var, t);
        changed |= na != a;
        args.push_back(std::move(na));
      }
      return changed ? mk_atom(f->pred, std::move(args)) : f;
    }
    case Formula::Kind::Imp:
    case Formula::Kind::And: {
      auto a = substitute(f->lhs, var, t);
      auto b = substitute(f->rhs, var, t);
      if (a == f->lhs && b == f->rhs) return f;
      return f->kind == Formula::Kind::Imp ? mk_imp(a, b) : mk_and(a, b);
    }
    case Formula::Kind::Forall: {
      if (f->var == var) return f;
      auto body = substitute(f->lhs, var, t);
      return body == f->lhs ? f : mk_forall(f->var, body);
    }
  }
  return f;
}

Nat eval_closed_term(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Zero: return 0;
    case Term::Kind::Succ: return eval_closed_term(t->lhs) + 1;
    case Term::Kind::Plus: return eval_closed_term(t->lhs) + eval_closed_term(t->rhs);
    case Term::Kind::Times: return eval_closed_term(t->lhs) * eval_closed_term(t->rhs);
    case Term::Kind::Var: throw std::invalid_argument("eval_closed_term: open term");
    case Term::Kind::Const:
      throw std::invalid_argument("eval_closed_term: constant symbol has no numeric value");
  }
  throw std::logic_error("unreachable");
}

bool term_in_austere_signature(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Zero:
    case Term::Kind::Var: return true;
    case Term::Kind::Const: return false;
    case Term::Kind::Succ: return term_in_austere_signature(t->lhs);
    case Term::Kind::Plus:
    case Term::Kind::Times:
      return term_in_austere_signature(t->lhs) && term_in_austere_signature(t->rhs);
  }
  return false;
}

}  // namespace pts

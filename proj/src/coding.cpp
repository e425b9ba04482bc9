#include "pts/coding.hpp"

#include <algorithm>
#include <boost/integer/common_factor.hpp>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace pts {

namespace {

constexpr int kVarBase = 20;
constexpr int kVarMax = 99;
const char kVarLetters[] = "xyzuvw";

struct PredSym {
  const char* name;
  int code;
  int arity;
};
constexpr PredSym kPreds[] = {
    {"Form", 10, 1}, {"Seq", 11, 2}, {"Elt", 12, 3},
    {"Ax", 13, 1},   {"MP", 14, 3},  {"Gen", 15, 2},
};

const PredSym* pred_by_name(const std::string& n) {
  for (const auto& p : kPreds)
    if (n == p.name) return &p;
  return nullptr;
}
const PredSym* pred_by_code(int c) {
  for (const auto& p : kPreds)
    if (c == p.code) return &p;
  return nullptr;
}

}  // namespace

const std::vector<SymbolInfo>& coding_table() {
  static const std::vector<SymbolInfo> table = {
      {"0", 1, 0},       {"S", 2, 1},    {"+", 3, 2},   {"*", 4, 2},
      {"=", 5, 2},       {"bot", 6, 0},  {"->", 7, 2},  {"/\\", 8, 2},
      {"forall", 9, 2},  {"Form", 10, 1}, {"Seq", 11, 2}, {"Elt", 12, 3},
      {"Ax", 13, 1},     {"MP", 14, 3},  {"Gen", 15, 2},
      {"<variable k>", -1, -1},  // codes 20..99: x,y,z,u,v,w,x0,y0,...
  };
  return table;
}

std::string coding_table_text() {
  std::ostringstream out;
  out << "coding table version " << kCodingVersion << ", base " << kCodingBase << "\n";
  out << "symbol strings are read in Polish notation, most significant digit first\n";
  for (const auto& s : coding_table()) {
    if (s.code < 0) {
      out << "20+k  variable k of x,y,z,u,v,w,x0,y0,...  (k <= 79)\n";
    } else {
      out << s.code << "  " << s.name << "  arity " << s.arity << "\n";
    }
  }
  out << "sequences: pair(a,b) with beta(a,b,0) = length, beta(a,b,i+1) = element i\n";
  return out.str();
}

std::optional<int> variable_code(const std::string& name) {
  if (name.empty()) return std::nullopt;
  int letter = -1;
  for (int i = 0; i < 6; ++i)
    if (name[0] == kVarLetters[i]) letter = i;
  if (letter < 0) return std::nullopt;
  int k = letter;
  if (name.size() > 1) {
    if (name.size() > 2 && name[1] == '0') return std::nullopt;  // no leading zeros
    long num = 0;
    for (std::size_t i = 1; i < name.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
      num = num * 10 + (name[i] - '0');
      if (num > kVarMax) return std::nullopt;
    }
    k = letter + 6 * static_cast<int>(num + 1);
  }
  if (kVarBase + k > kVarMax) return std::nullopt;
  return kVarBase + k;
}

std::string variable_name(int code) {
  int k = code - kVarBase;
  if (k < 0 || code > kVarMax) throw std::invalid_argument("variable_name: bad code");
  std::string n(1, kVarLetters[k % 6]);
  if (k >= 6) n += std::to_string(k / 6 - 1);
  return n;
}

// ---------------------------------------------------------------------------

namespace {

void emit_term(const TermPtr& t, std::vector<int>& out) {
  switch (t->kind) {
    case Term::Kind::Zero: out.push_back(1); return;
    case Term::Kind::Succ: out.push_back(2); emit_term(t->lhs, out); return;
    case Term::Kind::Plus:
      out.push_back(3);
      emit_term(t->lhs, out);
      emit_term(t->rhs, out);
      return;
    case Term::Kind::Times:
      out.push_back(4);
      emit_term(t->lhs, out);
      emit_term(t->rhs, out);
      return;
    case Term::Kind::Var: {
      auto c = variable_code(t->name);
      if (!c) throw std::invalid_argument("not codeable: variable " + t->name);
      out.push_back(*c);
      return;
    }
    case Term::Kind::Const:
      throw std::invalid_argument("not codeable: constant symbol " + t->name);
  }
}

void emit_formula(const FormulaPtr& f, std::vector<int>& out) {
  switch (f->kind) {
    case Formula::Kind::Bot: out.push_back(6); return;
    case Formula::Kind::Atom: {
      if (f->pred == "=") {
        out.push_back(5);
      } else if (const PredSym* p = pred_by_name(f->pred)) {
        if (static_cast<int>(f->args.size()) != p->arity)
          throw std::invalid_argument("not codeable: bad arity for " + f->pred);
        out.push_back(p->code);
      } else {
        throw std::invalid_argument("not codeable: predicate " + f->pred);
      }
      for (const auto& a : f->args) emit_term(a, out);
      return;
    }
    case Formula::Kind::Imp:
      out.push_back(7);
      emit_formula(f->lhs, out);
      emit_formula(f->rhs, out);
      return;
    case Formula::Kind::And:
      out.push_back(8);
      emit_formula(f->lhs, out);
      emit_formula(f->rhs, out);
      return;
    case Formula::Kind::Forall: {
      auto c = variable_code(f->var);
      if (!c) throw std::invalid_argument("not codeable: variable " + f->var);
      out.push_back(9);
      out.push_back(*c);
      emit_formula(f->lhs, out);
      return;
    }
  }
}

Code fold_digits(const std::vector<int>& digits) {
  Code c = 0;
  for (int d : digits) c = c * kCodingBase + d;
  return c;
}

std::vector<int> unfold_digits(Code c) {
  std::vector<int> digits;
  while (c > 0) {
    digits.push_back(static_cast<int>(c % kCodingBase));
    c /= kCodingBase;
  }
  std::reverse(digits.begin(), digits.end());
  return digits;
}

struct Decoder {
  const std::vector<int>& d;
  std::size_t pos = 0;

  std::optional<TermPtr> term() {
    if (pos >= d.size()) return std::nullopt;
    int s = d[pos++];
    switch (s) {
      case 1: return mk_zero();
      case 2: {
        auto t = term();
        if (!t) return std::nullopt;
        return mk_succ(*t);
      }
      case 3:
      case 4: {
        auto a = term();
        if (!a) return std::nullopt;
        auto b = term();
        if (!b) return std::nullopt;
        return s == 3 ? mk_plus(*a, *b) : mk_times(*a, *b);
      }
      default:
        if (s >= kVarBase && s <= kVarMax) return mk_var(variable_name(s));
        return std::nullopt;
    }
  }

  std::optional<FormulaPtr> formula() {
    if (pos >= d.size()) return std::nullopt;
    int s = d[pos++];
    switch (s) {
      case 5: {
        auto a = term();
        if (!a) return std::nullopt;
        auto b = term();
        if (!b) return std::nullopt;
        return mk_eq(*a, *b);
      }
      case 6: return mk_bot();
      case 7:
      case 8: {
        auto a = formula();
        if (!a) return std::nullopt;
        auto b = formula();
        if (!b) return std::nullopt;
        return s == 7 ? mk_imp(*a, *b) : mk_and(*a, *b);
      }
      case 9: {
        if (pos >= d.size()) return std::nullopt;
        int v = d[pos++];
        if (v < kVarBase || v > kVarMax) return std::nullopt;
        auto b = formula();
        if (!b) return std::nullopt;
        return mk_forall(variable_name(v), *b);
      }
      default: {
        const PredSym* p = pred_by_code(s);
        if (!p) return std::nullopt;
        std::vector<TermPtr> args;
        for (int k = 0; k < p->arity; ++k) {
          auto t = term();
          if (!t) return std::nullopt;
          args.push_back(*t);
        }
        return mk_atom(p->name, std::move(args));
      }
    }
  }
};

}  // namespace

Code code_term(const TermPtr& t) {
  std::vector<int> digits;
  emit_term(t, digits);
  return fold_digits(digits);
}

Code code_formula(const FormulaPtr& f) {
  std::vector<int> digits;
  emit_formula(f, digits);
  return fold_digits(digits);
}

std::optional<TermPtr> decode_term(const Code& c) {
  auto digits = unfold_digits(c);
  if (digits.empty()) return std::nullopt;
  Decoder dec{digits};
  auto t = dec.term();
  if (!t || dec.pos != digits.size()) return std::nullopt;
  return t;
}

std::optional<FormulaPtr> decode_formula(const Code& c) {
  auto digits = unfold_digits(c);
  if (digits.empty()) return std::nullopt;
  Decoder dec{digits};
  auto f = dec.formula();
  if (!f || dec.pos != digits.size()) return std::nullopt;
  return f;
}

// ---------------------------------------------------------------------------

Code pair(const Code& a, const Code& b) { return (a + b) * (a + b + 1) / 2 + a; }

void unpair(const Code& p, Code& a, Code& b) {
  using boost::multiprecision::sqrt;
  Code w = (sqrt(Code(8) * p + 1) - 1) / 2;
  while (w * (w + 1) / 2 > p) --w;
  while ((w + 1) * (w + 2) / 2 <= p) ++w;
  a = p - w * (w + 1) / 2;
  b = w - a;
}

Code beta(const Code& a, const Code& b, const Code& i) { return a % (1 + (i + 1) * b); }

namespace {

// least non-negative x with x = r1 (mod m1) and x = r2 (mod m2); m1, m2 coprime
Nat egcd(const Nat& a, const Nat& b, Nat& x, Nat& y) {
  if (b == 0) {
    x = 1;
    y = 0;
    return a;
  }
  Nat x1, y1;
  Nat g = egcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

Nat crt2(const Nat& r1, const Nat& m1, const Nat& r2, const Nat& m2) {
  Nat x, y;
  Nat g = egcd(m1, m2, x, y);
  if (g != 1) throw std::logic_error("crt: moduli not coprime");
  Nat diff = ((r2 - r1) % m2 + m2) % m2;
  Nat t = (diff * (x % m2)) % m2;
  t = (t % m2 + m2) % m2;
  return r1 + m1 * t;
}

}  // namespace

Code code_sequence(const std::vector<Code>& xs) {
  std::vector<Code> entries;
  entries.push_back(Nat(xs.size()));
  for (const auto& x : xs) entries.push_back(x);
  const std::size_t count = entries.size();
  // Moduli m_i = 1 + (i+1) b are pairwise coprime when b is divisible by
  // every difference j - i < count, so take b a multiple of lcm(1..count-1)
  // large enough to bound every entry.
  Nat L = 1;
  for (std::size_t k = 2; k < count; ++k) L = boost::integer::lcm(L, Nat(k));
  Nat mx = 0;
  for (const auto& e : entries)
    if (e > mx) mx = e;
  Nat b = ((mx + L) / L) * L;  // smallest multiple of L that is > mx
  Nat a = entries[0] % (1 + b);
  Nat mod = 1 + b;
  for (std::size_t i = 1; i < count; ++i) {
    Nat mi = 1 + Nat(i + 1) * b;
    a = crt2(a, mod, entries[i] % mi, mi);
    mod *= mi;
  }
  return pair(a, b);
}

Nat seq_len(const Code& p) {
  Code a, b;
  unpair(p, a, b);
  return beta(a, b, 0);
}

Code elt(const Code& p, const Nat& i) {
  Code a, b;
  unpair(p, a, b);
  if (i >= beta(a, b, 0)) throw std::out_of_range("elt: index out of range");
  return beta(a, b, i + 1);
}

Code pref_code(const Code& p, const Nat& k) {
  Nat n = seq_len(p);
  if (k > n) throw std::out_of_range("pref_code: bad prefix length");
  std::vector<Code> xs;
  for (Nat i = 0; i < k; ++i) xs.push_back(elt(p, i));
  return code_sequence(xs);
}

}  // namespace pts

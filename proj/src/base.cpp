#include "pts/base.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

namespace pts {

std::string Atom::key() const {
  std::string k = pred;
  if (!args.empty()) {
    k += "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (i) k += ", ";
      k += print_term(args[i]);
    }
    k += ")";
  }
  return k;
}

Atom atom_from_formula(const FormulaPtr& f) {
  if (f->kind != Formula::Kind::Atom)
    throw std::invalid_argument("expected an atomic formula");
  for (const auto& t : f->args)
    if (!is_closed(t)) throw std::invalid_argument("atom has open arguments");
  return Atom{f->pred, f->args};
}

FormulaPtr atom_to_formula(const Atom& a) { return mk_atom(a.pred, a.args); }

Atom parse_atom(std::string_view text) { return atom_from_formula(parse_formula(text)); }

Vocabulary::Vocabulary(std::vector<Pred> preds, std::vector<TermPtr> terms, int reserve,
                       std::vector<TermPtr> reserve_terms)
    : preds_(std::move(preds)),
      terms_(std::move(terms)),
      reserve_terms_(std::move(reserve_terms)),
      reserve_(reserve) {
  for (const auto& t : terms_)
    if (!is_closed(t)) throw std::invalid_argument("vocabulary terms must be closed");
  for (const auto& t : reserve_terms_)
    if (!is_closed(t)) throw std::invalid_argument("reserve terms must be closed");
  build_universe();
}

std::vector<TermPtr> Vocabulary::forall_terms(bool include_reserve_terms) const {
  std::vector<TermPtr> out = terms_;
  if (include_reserve_terms)
    out.insert(out.end(), reserve_terms_.begin(), reserve_terms_.end());
  return out;
}

void Vocabulary::build_universe() {
  std::vector<TermPtr> all_terms = terms_;
  all_terms.insert(all_terms.end(), reserve_terms_.begin(), reserve_terms_.end());
  for (const auto& p : preds_) {
    if (p.arity == 0) {
      atoms_.push_back(Atom{p.name, {}});
      continue;
    }
    // All tuples of vocabulary terms, in lexicographic order.
    std::vector<int> idx(p.arity, 0);
    if (all_terms.empty()) continue;
    while (true) {
      std::vector<TermPtr> args;
      for (int i : idx) args.push_back(all_terms[i]);
      atoms_.push_back(Atom{p.name, std::move(args)});
      int pos = p.arity - 1;
      while (pos >= 0 && ++idx[pos] == static_cast<int>(all_terms.size())) idx[pos--] = 0;
      if (pos < 0) break;
    }
  }
  for (int i = 0; i < reserve_; ++i) atoms_.push_back(Atom{"#r" + std::to_string(i), {}});
  if (atoms_.size() > 31)
    throw std::invalid_argument("vocabulary atom universe too large (limit 31)");
  for (std::size_t i = 0; i < atoms_.size(); ++i) index_[atoms_[i].key()] = static_cast<int>(i);
}

std::optional<int> Vocabulary::atom_index(const Atom& a) const {
  auto it = index_.find(a.key());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

namespace {

bool is_placeholder(const TermPtr& t) {
  return t->kind == Term::Kind::Const && !t->name.empty() && t->name[0] == '$';
}

void collect_placeholders(const Atom& a, std::vector<std::string>& out) {
  std::function<void(const TermPtr&)> walk = [&](const TermPtr& t) {
    if (is_placeholder(t)) {
      if (std::find(out.begin(), out.end(), t->name) == out.end()) out.push_back(t->name);
      return;
    }
    if (t->lhs) walk(t->lhs);
    if (t->rhs) walk(t->rhs);
  };
  for (const auto& t : a.args) walk(t);
}

TermPtr subst_placeholder(const TermPtr& t, const std::string& ph, const TermPtr& rep) {
  if (is_placeholder(t) && t->name == ph) return rep;
  switch (t->kind) {
    case Term::Kind::Succ: return mk_succ(subst_placeholder(t->lhs, ph, rep));
    case Term::Kind::Plus:
      return mk_plus(subst_placeholder(t->lhs, ph, rep), subst_placeholder(t->rhs, ph, rep));
    case Term::Kind::Times:
      return mk_times(subst_placeholder(t->lhs, ph, rep), subst_placeholder(t->rhs, ph, rep));
    default: return t;
  }
}

Atom subst_atom(const Atom& a, const std::string& ph, const TermPtr& rep) {
  Atom out{a.pred, {}};
  for (const auto& t : a.args) out.args.push_back(subst_placeholder(t, ph, rep));
  return out;
}

}  // namespace

std::vector<AtomicRule> instantiate(const RuleSchema& schema, const Vocabulary& v) {
  std::vector<std::string> phs;
  for (const auto& p : schema.premises) collect_placeholders(p, phs);
  collect_placeholders(schema.conclusion, phs);
  std::vector<RuleSchema> work{schema};
  for (const auto& ph : phs) {
    std::vector<RuleSchema> next;
    for (const auto& s : work) {
      for (const auto& t : v.forall_terms(true)) {
        RuleSchema inst;
        for (const auto& p : s.premises) inst.premises.push_back(subst_atom(p, ph, t));
        inst.conclusion = subst_atom(s.conclusion, ph, t);
        next.push_back(std::move(inst));
      }
    }
    work = std::move(next);
  }
  std::vector<AtomicRule> out;
  for (auto& s : work) out.push_back(AtomicRule{std::move(s.premises), std::move(s.conclusion)});
  return out;
}

Base::Base(VocabularyPtr vocab, std::vector<AtomicRule> rules)
    : vocab_(std::move(vocab)), rules_(std::move(rules)) {
  for (const auto& r : rules_) {
    std::uint32_t prem = 0;
    for (const auto& p : r.premises) {
      auto idx = vocab_->atom_index(p);
      if (!idx) throw std::invalid_argument("rule premise outside vocabulary: " + p.key());
      prem |= 1u << *idx;
    }
    auto cidx = vocab_->atom_index(r.conclusion);
    if (!cidx)
      throw std::invalid_argument("rule conclusion outside vocabulary: " + r.conclusion.key());
    masks_.emplace_back(prem, *cidx);
  }
}

std::uint32_t closure_mask_with_facts(const Base& b, std::uint32_t facts) {
  std::uint32_t derived = facts;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [prem, concl] : b.rule_masks()) {
      if ((derived & prem) == prem && !(derived & (1u << concl))) {
        derived |= 1u << concl;
        changed = true;
      }
    }
  }
  return derived;
}

std::uint32_t closure_mask(const Base& b) { return closure_mask_with_facts(b, 0); }

std::vector<Atom> closure(const Base& b) {
  std::uint32_t m = closure_mask(b);
  std::vector<Atom> out;
  for (std::size_t i = 0; i < b.vocab().size(); ++i)
    if (m & (1u << i)) out.push_back(b.vocab().atoms()[i]);
  return out;
}

bool derives(const Base& b, const Atom& a, OutOfVocabulary policy) {
  auto idx = b.vocab().atom_index(a);
  if (!idx) {
    if (policy == OutOfVocabulary::Error)
      throw std::invalid_argument("atom outside vocabulary: " + a.key());
    return false;
  }
  return (closure_mask(b) & (1u << *idx)) != 0;
}

std::optional<Derivation> derivation_tree(const Base& b, const Atom& a) {
  auto idx = b.vocab().atom_index(a);
  if (!idx) return std::nullopt;
  // Re-run the fixpoint recording, for each atom, the first rule that fired.
  std::vector<int> by_rule(b.vocab().size(), -1);
  std::uint32_t derived = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t r = 0; r < b.rule_masks().size(); ++r) {
      const auto& [prem, concl] = b.rule_masks()[r];
      if ((derived & prem) == prem && !(derived & (1u << concl))) {
        derived |= 1u << concl;
        by_rule[concl] = static_cast<int>(r);
        changed = true;
      }
    }
  }
  if (!(derived & (1u << *idx))) return std::nullopt;
  std::function<Derivation(int)> build = [&](int atom_idx) {
    const AtomicRule& rule = b.rules()[by_rule[atom_idx]];
    Derivation d{b.vocab().atoms()[atom_idx], {}};
    for (const auto& p : rule.premises) d.children.push_back(build(*b.vocab().atom_index(p)));
    return d;
  };
  return build(*idx);
}

bool check_derivation(const Base& b, const Derivation& d) {
  for (const auto& c : d.children)
    if (!check_derivation(b, c)) return false;
  for (const auto& r : b.rules()) {
    if (!(r.conclusion == d.root)) continue;
    if (r.premises.size() != d.children.size()) continue;
    // Premises are a set; match regardless of order.
    std::vector<bool> used(d.children.size(), false);
    bool ok = true;
    for (const auto& p : r.premises) {
      bool found = false;
      for (std::size_t i = 0; i < d.children.size(); ++i) {
        if (!used[i] && d.children[i].root == p) {
          used[i] = true;
          found = true;
          break;
        }
      }
      if (!found) { ok = false; break; }
    }
    if (ok) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Base DSL

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty()) out.push_back(trim(cur));
  return out;
}

}  // namespace

Base load_base(const std::string& text) {
  std::vector<Vocabulary::Pred> preds;
  std::vector<TermPtr> terms, reserve_terms;
  int reserve = 0;
  std::vector<RuleSchema> schemas;

  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("base file line " + std::to_string(lineno) + ": expected 'key: ...'");
    std::string key = trim(line.substr(0, colon));
    std::string rest = trim(line.substr(colon + 1));
    if (key == "vocab") {
      for (const auto& w : split_ws(rest)) {
        auto slash = w.find('/');
        if (slash == std::string::npos) {
          preds.push_back({w, 0});
        } else {
          preds.push_back({w.substr(0, slash), std::stoi(w.substr(slash + 1))});
        }
      }
    } else if (key == "terms") {
      for (const auto& w : split_ws(rest)) terms.push_back(parse_term(w));
    } else if (key == "reserve") {
      reserve = std::stoi(rest);
    } else if (key == "reserve-terms") {
      for (const auto& w : split_ws(rest)) reserve_terms.push_back(parse_term(w));
    } else if (key == "rule") {
      auto arrow = rest.find("=>");
      if (arrow == std::string::npos)
        throw std::invalid_argument("base file line " + std::to_string(lineno) + ": rule needs '=>'");
      RuleSchema s;
      for (const auto& p : split_commas(rest.substr(0, arrow)))
        s.premises.push_back(parse_atom(p));
      s.conclusion = parse_atom(trim(rest.substr(arrow + 2)));
      schemas.push_back(std::move(s));
    } else {
      throw std::invalid_argument("base file line " + std::to_string(lineno) + ": unknown key '" +
                                  key + "'");
    }
  }

  auto vocab = std::make_shared<Vocabulary>(std::move(preds), std::move(terms), reserve,
                                            std::move(reserve_terms));
  std::vector<AtomicRule> rules;
  for (const auto& s : schemas)
    for (auto& r : instantiate(s, *vocab)) rules.push_back(std::move(r));
  return Base(vocab, std::move(rules));
}

Base load_base_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open base file: " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return load_base(os.str());
}

std::string serialize_base(const Base& b) {
  std::ostringstream os;
  os << "vocab:";
  for (const auto& p : b.vocab().predicates()) os << " " << p.name << "/" << p.arity;
  os << "\n";
  if (!b.vocab().terms().empty()) {
    os << "terms:";
    for (const auto& t : b.vocab().terms()) os << " " << print_term(t);
    os << "\n";
  }
  if (b.vocab().reserve() > 0) os << "reserve: " << b.vocab().reserve() << "\n";
  if (!b.vocab().reserve_terms().empty()) {
    os << "reserve-terms:";
    for (const auto& t : b.vocab().reserve_terms()) os << " " << print_term(t);
    os << "\n";
  }
  for (const auto& r : b.rules()) {
    os << "rule:";
    for (std::size_t i = 0; i < r.premises.size(); ++i)
      os << (i ? ", " : " ") << r.premises[i].key();
    os << (r.premises.empty() ? " " : " ") << "=> " << r.conclusion.key() << "\n";
  }
  return os.str();
}

}  // namespace pts

// pts: parse, derive, support, check-proof, encode, decode, build, eval,
// crosscheck, codes, experiment. JSON on stdout; exit 0 on success, 1 on a
// negative verdict, 2 on usage or input errors.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pts/arithmetize.hpp"
#include "pts/base.hpp"
#include "pts/coding.hpp"
#include "pts/delta0.hpp"
#include "pts/experiments.hpp"
#include "pts/hilbert.hpp"
#include "pts/support.hpp"
#include "pts/syntax.hpp"

using json = nlohmann::ordered_json;
using namespace pts;

namespace {

bool g_pretty = false;

void emit(const json& j) { std::cout << (g_pretty ? j.dump(2) : j.dump()) << "\n"; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const Theory& theory_by_name(const std::string& name) {
  if (name == "q") return q_theory();
  throw CLI::ValidationError("--theory", "unknown theory: " + name);
}

std::string class_name(FormulaClass c) {
  switch (c) {
    case FormulaClass::Delta0: return "delta0";
    case FormulaClass::Sigma1: return "sigma1";
    case FormulaClass::Beyond: return "beyond";
  }
  return "?";
}

json derivation_json(const Derivation& d) {
  json j{{"atom", d.root.key()}};
  json kids = json::array();
  for (const auto& c : d.children) kids.push_back(derivation_json(c));
  j["premises"] = kids;
  return j;
}

Env parse_env(const std::string& spec) {
  Env env;
  std::istringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("bad --env binding (want var=number): " + item);
    std::string var = item.substr(0, eq);
    env[var] = Nat(item.substr(eq + 1));
  }
  return env;
}

std::uint64_t default_budget() {
  if (const char* e = std::getenv("PTS_BUDGET")) return std::strtoull(e, nullptr, 10);
  return 50'000'000;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"consequence relations for arithmetic: derivability, support, "
               "and arithmetized proofs"};
  app.require_subcommand(1);
  app.add_flag("--pretty", g_pretty, "indent JSON output");
  app.set_version_flag("--version", std::string(kToolVersion));
  int exit_code = 0;

  // parse
  std::string parse_formula_str;
  auto* cmd_parse = app.add_subcommand("parse", "parse a formula and print its canonical form");
  cmd_parse->add_option("--formula", parse_formula_str, "formula text")->required();
  cmd_parse->callback([&] {
    FormulaPtr f = parse_formula(parse_formula_str);
    json fv = json::array();
    for (const auto& v : free_vars(f)) fv.push_back(v);
    emit(json{{"ok", true},
              {"formula", print_formula(f)},
              {"class", class_name(classify(f))},
              {"closed", is_closed(f)},
              {"free_vars", fv}});
  });

  // derive
  std::string derive_base, derive_atom;
  auto* cmd_derive = app.add_subcommand("derive", "decide derivability of an atom in a base");
  cmd_derive->add_option("--base", derive_base, "base file")->required();
  cmd_derive->add_option("--atom", derive_atom, "ground atom")->required();
  cmd_derive->callback([&] {
    Base b = load_base_file(derive_base);
    Atom a = parse_atom(derive_atom);
    bool ok = derives(b, a, OutOfVocabulary::False);
    json j{{"derivable", ok}};
    if (ok) {
      if (auto d = derivation_tree(b, a)) j["derivation"] = derivation_json(*d);
    }
    emit(j);
    if (!ok) exit_code = 1;
  });

  // support
  std::string sup_base, sup_formula, sup_under;
  bool sup_no_reserve_terms = false;
  auto* cmd_support = app.add_subcommand("support", "decide support of a closed formula");
  cmd_support->add_option("--base", sup_base, "base file")->required();
  cmd_support->add_option("--formula", sup_formula, "closed formula")->required();
  cmd_support->add_option("--under", sup_under, "semicolon-separated antecedent formulas");
  cmd_support->add_flag("--forall-excludes-reserve", sup_no_reserve_terms,
                        "universal quantifier ranges over base terms only");
  cmd_support->callback([&] {
    Base b = load_base_file(sup_base);
    SupportUniverse u(b.vocab_ptr(), !sup_no_reserve_terms);
    FormulaPtr f = parse_formula(sup_formula);
    std::vector<FormulaPtr> under;
    if (!sup_under.empty()) {
      std::istringstream in(sup_under);
      std::string part;
      while (std::getline(in, part, ';')) under.push_back(parse_formula(part));
    }
    bool ok = u.supports_under(b, under, f);
    emit(json{{"supported", ok}});
    if (!ok) exit_code = 1;
  });

  // check-proof
  std::string cp_theory = "q", cp_file;
  auto* cmd_cp = app.add_subcommand("check-proof", "check a Hilbert proof file");
  cmd_cp->add_option("--theory", cp_theory, "theory name (q)");
  cmd_cp->add_option("file", cp_file, "proof file")->required();
  cmd_cp->callback([&] {
    const Theory& t = theory_by_name(cp_theory);
    Proof p = parse_proof(slurp(cp_file));
    CheckResult r = check_proof(p, t);
    json lines = json::array();
    for (std::size_t i = 0; i < r.lines.size(); ++i) {
      const auto& rep = r.lines[i];
      json lj{{"line", i + 1}};
      switch (rep.used.kind) {
        case Justification::Kind::Axiom:
          lj["by"] = "axiom";
          lj["schema"] = rep.used.schema;
          break;
        case Justification::Kind::MP:
          lj["by"] = "mp";
          lj["premises"] = {rep.used.i, rep.used.j};
          break;
        case Justification::Kind::Gen:
          lj["by"] = "gen";
          lj["premise"] = rep.used.i;
          break;
      }
      if (rep.hint_mismatch) lj["hint_mismatch"] = true;
      lines.push_back(lj);
    }
    json j{{"ok", r.ok}, {"lines", lines}};
    if (r.ok) {
      j["conclusion"] = print_formula(p.conclusion());
    } else {
      j["bad_line"] = r.bad_line;
      j["reason"] = r.reason;
    }
    emit(j);
    if (!r.ok) exit_code = 1;
  });

  // encode / decode
  std::string enc_formula;
  auto* cmd_enc = app.add_subcommand("encode", "Godel code of a formula");
  cmd_enc->add_option("--formula", enc_formula, "formula text")->required();
  cmd_enc->callback([&] {
    FormulaPtr f = parse_formula(enc_formula);
    emit(json{{"code", code_formula(f).str()}});
  });

  std::string dec_code;
  auto* cmd_dec = app.add_subcommand("decode", "formula behind a Godel code");
  cmd_dec->add_option("--code", dec_code, "decimal code")->required();
  cmd_dec->callback([&] {
    auto f = decode_formula(Nat(dec_code));
    if (f) {
      emit(json{{"ok", true}, {"formula", print_formula(*f)}});
    } else {
      emit(json{{"ok", false}});
      exit_code = 1;
    }
  });

  // codes --table
  bool codes_table = false;
  auto* cmd_codes = app.add_subcommand("codes", "coding table");
  cmd_codes->add_flag("--table", codes_table, "print the full coding table");
  cmd_codes->callback([&] {
    if (codes_table) {
      std::cout << coding_table_text();
    } else {
      emit(json{{"coding_version", kCodingVersion}, {"base", kCodingBase}});
    }
  });

  // build
  std::string build_what, build_theory = "q";
  bool build_print = false;
  auto* cmd_build = app.add_subcommand("build", "construct Line/Prf/Prov/Con formulas");
  cmd_build->add_option("--what", build_what, "line|prf|prov|con")->required();
  cmd_build->add_option("--theory", build_theory, "theory name (q)");
  cmd_build->add_flag("--print", build_print, "also print the raw formula text");
  cmd_build->callback([&] {
    const Theory& t = theory_by_name(build_theory);
    FormulaPtr f;
    if (build_what == "line") {
      f = build_line(mk_var("x"), mk_var("y"));
    } else if (build_what == "prf") {
      f = build_prf(mk_var("x"), mk_var("y"));
    } else if (build_what == "prov") {
      f = build_prov(mk_var("x"));
    } else if (build_what == "con") {
      f = build_con(t);
    } else {
      throw CLI::ValidationError("--what", "expected line|prf|prov|con");
    }
    json fv = json::array();
    for (const auto& v : free_vars(f)) fv.push_back(v);
    json j{{"what", build_what},
           {"class", class_name(classify(f))},
           {"closed", is_closed(f)},
           {"free_vars", fv}};
    if (build_print) j["formula"] = print_formula(f);
    emit(j);
  });

  // eval
  std::string eval_mode = "oracle", eval_file, eval_env, eval_theory = "q";
  std::uint64_t eval_budget = default_budget();
  auto* cmd_eval = app.add_subcommand("eval", "evaluate a Delta0 sentence over the naturals");
  cmd_eval->add_option("--mode", eval_mode, "oracle|pure")->check(CLI::IsMember({"oracle", "pure"}));
  cmd_eval->add_option("--budget", eval_budget, "iteration budget");
  cmd_eval->add_option("--formula", eval_file, "file containing the formula")->required();
  cmd_eval->add_option("--env", eval_env, "comma-separated var=number bindings");
  cmd_eval->add_option("--theory", eval_theory, "theory name (q)");
  cmd_eval->callback([&] {
    const Theory& t = theory_by_name(eval_theory);
    FormulaPtr f = parse_formula(slurp(eval_file));
    Env env = eval_env.empty() ? Env{} : parse_env(eval_env);
    ArithMode mode = eval_mode == "pure" ? ArithMode::Pure : ArithMode::Oracle;
    bool result = eval_delta0(f, env, mode, t, eval_budget);
    emit(json{{"result", result}, {"mode", eval_mode}});
    if (!result) exit_code = 1;
  });

  // crosscheck
  std::string cc_theory = "q", cc_file;
  std::uint64_t cc_budget = default_budget();
  auto* cmd_cc = app.add_subcommand("crosscheck",
                                    "compare meta-level proof checking with arithmetized Prf");
  cmd_cc->add_option("--theory", cc_theory, "theory name (q)");
  cmd_cc->add_option("--budget", cc_budget, "iteration budget");
  cmd_cc->add_option("file", cc_file, "proof file")->required();
  cmd_cc->callback([&] {
    const Theory& t = theory_by_name(cc_theory);
    Proof p = parse_proof(slurp(cc_file));
    CrosscheckReport r = crosscheck(p, t, cc_budget);
    json prefixes = json::array();
    for (const auto& pk : r.prefixes)
      prefixes.push_back(json{{"k", pk.k},
                              {"meta_ok", pk.meta_ok},
                              {"arith_prf", pk.arith_prf},
                              {"len_ok", pk.len_ok},
                              {"agree", pk.agree}});
    emit(json{{"meta_ok", r.meta_ok},
              {"arith_prf", r.arith_prf},
              {"agree", r.agree},
              {"prefixes", prefixes},
              {"ok", r.ok}});
    if (!r.ok) exit_code = 1;
  });

  // experiment
  std::string exp_name, exp_out;
  ExperimentConfig exp_cfg;
  exp_cfg.budget = default_budget();
  auto* cmd_exp = app.add_subcommand("experiment", "run a batch experiment suite");
  cmd_exp->add_option("name", exp_name,
                      "classical-agreement|maxiconsistent|local-soundness|"
                      "prf-crosscheck|numeral-decision")
      ->required();
  cmd_exp->add_option("--seed", exp_cfg.seed, "random seed");
  cmd_exp->add_option("--atoms", exp_cfg.atoms, "vocabulary atom count");
  cmd_exp->add_option("--reserve", exp_cfg.reserve, "reserve atom count");
  cmd_exp->add_option("--depth", exp_cfg.depth, "formula depth limit");
  cmd_exp->add_option("--samples", exp_cfg.samples, "sample count");
  cmd_exp->add_option("--budget", exp_cfg.budget, "evaluation budget");
  cmd_exp->add_option("--theory", exp_cfg.theory, "theory name (q)");
  cmd_exp->add_option("--out", exp_out, "write the report to a file");
  cmd_exp->callback([&] {
    json rep = run_experiment(exp_name, exp_cfg);
    if (!exp_out.empty()) {
      std::ofstream out(exp_out);
      out << (g_pretty ? rep.dump(2) : rep.dump()) << "\n";
    }
    emit(rep);
    if (!rep.value("pass", false)) exit_code = 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}

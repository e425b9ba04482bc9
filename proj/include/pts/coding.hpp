#pragma once

// Godel numbering. Terms and formulas are coded as their Polish-notation
// symbol strings read as base-101 digit strings (most significant first);
// sequences of codes are coded by the beta function with a length prefix,
// which keeps the bounds in the arithmetized Seq/Elt predicates polynomial
// in the code value.

#include <optional>
#include <string>
#include <vector>

#include "pts/syntax.hpp"

namespace pts {

using Code = Nat;

inline constexpr int kCodingBase = 101;
inline constexpr const char* kCodingVersion = "1";

struct SymbolInfo {
  std::string name;
  int code;
  int arity;  // -1 for the variable block
};
const std::vector<SymbolInfo>& coding_table();
std::string coding_table_text();

// Variables are drawn from the canonical enumeration x,y,z,u,v,w,x0,y0,...;
// the k-th variable has symbol code 20+k, k <= 79.
std::optional<int> variable_code(const std::string& name);
std::string variable_name(int code);

// Coding covers the austere arithmetic signature plus the arithmetized
// predicate symbols Form/Seq/Elt/Ax/MP/Gen. Other constants or predicates
// raise std::invalid_argument.
Code code_term(const TermPtr& t);
Code code_formula(const FormulaPtr& f);
std::optional<TermPtr> decode_term(const Code& c);
std::optional<FormulaPtr> decode_formula(const Code& c);

// Cantor pairing (a bijection between naturals and pairs).
Code pair(const Code& a, const Code& b);
void unpair(const Code& p, Code& a, Code& b);
// beta(a, b, i) = a mod (1 + (i+1) * b)
Code beta(const Code& a, const Code& b, const Code& i);

// Sequence p = pair(a,b) represents [beta(a,b,1), ..., beta(a,b,n)] where
// n = beta(a,b,0); every natural represents some sequence, and
// code_sequence yields the canonical code.
Code code_sequence(const std::vector<Code>& xs);
Nat seq_len(const Code& p);
Code elt(const Code& p, const Nat& i);           // 0-based; throws out of range
Code pref_code(const Code& p, const Nat& k);     // canonical code of first k elements

}  // namespace pts

#pragma once

#include "invarforms/form.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

namespace invarforms {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Names visible to the expression grammar. Generators (phiK, cphiK for complex
/// frames, eK for real frames) are implicit.
struct SymbolTable {
  Frame frame{true, 0};
  std::map<std::string, Scalar> symbols;

  void add(const Var& v) { symbols[v.name] = Scalar::variable(v); }
};

/// Grammar:
///   sum     := term (("+"|"-") term)*
///   term    := unary (("*"|"/") unary)*
///   unary   := ("-"|"+") unary | power
///   power   := primary ("^" (["-"] integer | primary))*
///   primary := integer | "i" | name | generator | fn "(" sum ")" | "(" sum ")"
///   fn      := conj | re | im
/// `^` is integer power when its right side is an integer literal, wedge
/// otherwise; `*` is the wedge (scalar multiplication in degree 0); `/` only
/// divides by single-term scalars.
Form parse_form(std::string_view text, const SymbolTable& table);
/// Parses a degree-0 expression.
Scalar parse_scalar(std::string_view text, const std::map<std::string, Scalar>& symbols = {});
/// Parses a constant (no indeterminates), e.g. "3/5+4/5*i".
GaussRational parse_constant(std::string_view text);

}  // namespace invarforms

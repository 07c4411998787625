#pragma once

// Expression grammar (whitespace is insignificant between tokens):
//
//   expr    := term (("+" | "-") term)*
//   term    := unary (("*" | "/") unary)*
//   unary   := "-" unary | "+" unary | power
//   power   := primary ("^" unary)?          exponent must be an integer constant
//   primary := number | name | func "(" expr ")" | "(" expr ")"
//   func    := "exp" | "log" | "sin" | "cos"
//   number  := digits ["." digits] [("e" | "E") ["+" | "-"] digits]
//
// Names resolve to chart coordinates or parameters. Decimal numbers are read
// exactly (0.1 is 1/10). On a torus-strict chart, angle coordinates may only
// occur inside sin/cos.
//
// Graded objects (forms, multivectors) add basis monomials after an optional
// coefficient:
//
//   graded  := gterm (("+" | "-") gterm)*
//   gterm   := [term] basis ("^" basis)*  |  term
//   basis   := "d" name        (forms)
//            | "∂" name        (multivectors; "@" name is an ASCII alias)
//
// "∧" may be used in place of "^" between basis elements.

#include "expr/chart.hpp"
#include "expr/expr.hpp"

#include <string_view>
#include <vector>

namespace corank {

Expr parse_scalar(std::string_view text, const Chart& chart);

enum class BasisKind { Differential, Partial };

struct GradedTerm {
    Expr coefficient;
    std::vector<std::size_t> basis;  // coordinate indices in written order
};

std::vector<GradedTerm> parse_graded(std::string_view text, const Chart& chart, BasisKind kind);

}  // namespace corank

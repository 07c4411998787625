#pragma once

#include "calculus/forms.hpp"

#include <optional>

namespace corank {

// Antiderivative in one variable for the shapes that occur in practice:
// var^k (k != -1), var^-1 (gives log(var)), and var^k times exp/sin/cos of an
// argument linear in var with constant slope, all with var-free factors.
// Returns nullopt for anything else. The result is checked by differentiation.
std::optional<Expr> integrate(const Expr& e, const std::string& var, const Chart& chart,
                              const ZeroTestOptions& options = {});

// f with df = η for a closed 1-form, built coordinate by coordinate; nullopt
// when η is not closed or some integral is out of reach.
std::optional<Expr> potential(const DiffForm& eta, const ZeroTestOptions& options = {});

// True when every occurrence of `var` in e sits inside a sin or cos, so that e
// is a well-defined function of an angle coordinate.
bool angle_safe(const Expr& e, const std::string& var);

}  // namespace corank

#pragma once

#include "expr/expr.hpp"

#include <optional>

namespace corank::detail {

// Both operate in the free polynomial ring: every kernel is an independent
// indeterminate and all exponents must be nonnegative.

// Monic (leading lexicographic coefficient 1) greatest common divisor.
Poly poly_gcd(const Poly& a, const Poly& b);

// a / b when b divides a exactly, nullopt otherwise.
std::optional<Poly> poly_divide_exact(const Poly& a, const Poly& b);

}  // namespace corank::detail

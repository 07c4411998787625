#pragma once

#include "expr/chart.hpp"
#include "expr/expr.hpp"
#include "expr/zero_test.hpp"

#include <vector>

namespace corank {

using Matrix = std::vector<std::vector<Expr>>;

// Solves A X = B for A with at least as many rows as columns, by fraction-free
// (Bareiss) elimination. A pivot must be certainly nonzero. Rows left over
// after elimination must reduce to zero. Throws Error(Degenerate) for a rank
// deficient or inconsistent system (with a witness when one was found) and
// Error(Undecided) when a pivot or consistency test is inconclusive.
Matrix solve(const Matrix& a, const Matrix& b, const Chart& chart, const ZeroTestOptions& options = {});
std::vector<Expr> solve(const Matrix& a, const std::vector<Expr>& b, const Chart& chart,
                        const ZeroTestOptions& options = {});
Matrix inverse(const Matrix& a, const Chart& chart, const ZeroTestOptions& options = {});

Matrix identity_matrix(std::size_t n);

}  // namespace corank

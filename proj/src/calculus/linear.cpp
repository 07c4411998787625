#include "calculus/linear.hpp"

#include "common/error.hpp"

namespace corank {

Matrix identity_matrix(std::size_t n)
{
    Matrix m(n, std::vector<Expr>(n));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = Expr(1);
    return m;
}

namespace {

enum class PivotState { Nonzero, Zero, Undecided };

PivotState classify(const Expr& e, const Chart& chart, const ZeroTestOptions& options)
{
    if (e.is_zero()) return PivotState::Zero;
    if (auto q = e.as_rational()) return *q == 0 ? PivotState::Zero : PivotState::Nonzero;
    const Verdict v = is_zero(e, chart, options);
    if (v.is_false()) return PivotState::Nonzero;
    if (v.holds()) return PivotState::Zero;
    return PivotState::Undecided;
}

}  // namespace

Matrix solve(const Matrix& a, const Matrix& b, const Chart& chart, const ZeroTestOptions& options)
{
    const std::size_t rows = a.size();
    if (rows == 0 || b.size() != rows) throw Error(ErrorCode::DegreeMismatch, "linear system shape mismatch");
    const std::size_t n = a[0].size();
    const std::size_t r = b[0].size();
    if (rows < n) throw Error(ErrorCode::Degenerate, "underdetermined linear system");

    Matrix m(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        if (a[i].size() != n || b[i].size() != r) throw Error(ErrorCode::DegreeMismatch, "ragged linear system");
        m[i] = a[i];
        m[i].insert(m[i].end(), b[i].begin(), b[i].end());
    }
    const std::size_t width = n + r;

    Expr previous(1);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = rows;
        bool undecided = false;
        for (std::size_t i = k; i < rows; ++i) {
            const PivotState s = classify(m[i][k], chart, options);
            if (s == PivotState::Nonzero) {
                if (pivot == rows || m[i][k].term_count() < m[pivot][k].term_count()) pivot = i;
                if (m[i][k].as_rational()) break;
            } else if (s == PivotState::Undecided) {
                undecided = true;
            } else {
                m[i][k] = Expr();
            }
        }
        if (pivot == rows) {
            if (undecided) throw Error(ErrorCode::Undecided, "no pivot in column " + std::to_string(k) + " is certainly nonzero");
            throw Error(ErrorCode::Degenerate, "linear system is singular (column " + std::to_string(k) + ")");
        }
        std::swap(m[k], m[pivot]);
        for (std::size_t i = k + 1; i < rows; ++i) {
            for (std::size_t j = k + 1; j < width; ++j) {
                Expr updated = m[k][k] * m[i][j] - m[i][k] * m[k][j];
                m[i][j] = previous.is_one() ? updated : updated / previous;
            }
            m[i][k] = Expr();
        }
        previous = m[k][k];
    }

    for (std::size_t i = n; i < rows; ++i) {
        for (std::size_t j = n; j < width; ++j) {
            const Verdict v = is_zero(m[i][j], chart, options);
            if (v.is_false()) throw Error(ErrorCode::Degenerate, "linear system is inconsistent", v.witness);
            if (!v.holds()) throw Error(ErrorCode::Undecided, "could not decide consistency of a linear system");
        }
    }

    Matrix x(n, std::vector<Expr>(r));
    for (std::size_t c = 0; c < r; ++c) {
        for (std::size_t k = n; k-- > 0;) {
            Expr acc = m[k][n + c];
            for (std::size_t j = k + 1; j < n; ++j) acc -= m[k][j] * x[j][c];
            x[k][c] = acc / m[k][k];
        }
    }
    return x;
}

std::vector<Expr> solve(const Matrix& a, const std::vector<Expr>& b, const Chart& chart, const ZeroTestOptions& options)
{
    Matrix column(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) column[i] = {b[i]};
    const Matrix x = solve(a, column, chart, options);
    std::vector<Expr> out;
    for (const auto& row : x) out.push_back(row[0]);
    return out;
}

Matrix inverse(const Matrix& a, const Chart& chart, const ZeroTestOptions& options)
{
    if (!a.empty() && a[0].size() != a.size()) throw Error(ErrorCode::DegreeMismatch, "inverse of a non-square matrix");
    return solve(a, identity_matrix(a.size()), chart, options);
}

}  // namespace corank

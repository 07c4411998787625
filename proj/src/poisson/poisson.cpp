#include "poisson/poisson.hpp"

#include "common/error.hpp"

#include <cmath>
#include <random>

namespace corank {

Expr poisson_bracket(const MultiVector& pi, const Expr& f, const Expr& g)
{
    return apply_vector(hamiltonian_vf(pi, f), g);
}

MultiVector hamiltonian_vf(const MultiVector& pi, const Expr& f)
{
    if (pi.degree() != 2 && !pi.is_structurally_zero()) throw Error(ErrorCode::DegreeMismatch, "expected a bivector");
    if (pi.is_structurally_zero()) return MultiVector(pi.chart(), 1);
    return interior(differential(pi.chart(), f), pi);
}

JacobiReport jacobi_check(const MultiVector& pi, const ZeroTestOptions& options)
{
    if (pi.degree() != 2 && !pi.is_structurally_zero()) throw Error(ErrorCode::DegreeMismatch, "expected a bivector");
    const Chart& chart = pi.chart();
    JacobiReport r;
    r.schouten_square = pi.is_structurally_zero() ? MultiVector(chart, 3) : schouten(pi, pi);
    r.schouten = is_zero(r.schouten_square, options);

    r.jacobiator = Verdict::symbolic();
    const std::size_t n = chart.dim();
    std::vector<Expr> x;
    for (std::size_t i = 0; i < n; ++i) x.push_back(Expr::variable(chart.name(i)));
    for (std::size_t i = 0; i < n && !r.jacobiator.is_false(); ++i) {
        for (std::size_t j = i + 1; j < n && !r.jacobiator.is_false(); ++j) {
            for (std::size_t k = j + 1; k < n && !r.jacobiator.is_false(); ++k) {
                const Expr jac = poisson_bracket(pi, x[i], poisson_bracket(pi, x[j], x[k])) +
                                 poisson_bracket(pi, x[j], poisson_bracket(pi, x[k], x[i])) +
                                 poisson_bracket(pi, x[k], poisson_bracket(pi, x[i], x[j]));
                Verdict v = is_zero(jac, chart, options);
                if (v.witness) v.witness->label = "{" + chart.name(i) + "," + chart.name(j) + "," + chart.name(k) + "}";
                r.jacobiator = all_of(r.jacobiator, v);
            }
        }
    }
    r.paths_agree = r.schouten.holds() == r.jacobiator.holds() && r.schouten.is_false() == r.jacobiator.is_false();
    if (r.paths_agree) {
        r.verdict = r.schouten.is_false() ? r.schouten : all_of(r.schouten, r.jacobiator);
    } else {
        r.verdict = Verdict::unknown("Schouten and Jacobiator computations disagree");
    }
    return r;
}

CorankEvidence corank_evidence(const MultiVector& pi, int n, const ZeroTestOptions& options)
{
    const Chart& chart = pi.chart();
    CorankEvidence ev;
    ev.n = n;
    ev.top_power = power(pi, n);
    ev.top_power_zero = is_zero(ev.top_power, options);
    std::mt19937_64 rng(options.seed);
    const int wanted = std::max(options.trials / 2, 4);
    int attempts = 0;
    while (ev.samples < wanted && attempts < wanted + options.retry_budget) {
        ++attempts;
        const Assignment p = sample_point(chart, rng);
        double largest = 0;
        double scale = 0;
        try {
            for (const auto& [b, c] : ev.top_power.terms()) {
                const Expr::Parts parts = c.evaluate_parts(p);
                largest = std::max(largest, std::fabs(parts.numerator / parts.denominator));
                scale = std::max(scale, parts.numerator_scale / std::fabs(parts.denominator));
            }
        } catch (const Error& e) {
            if (e.code() != ErrorCode::Singular) throw;
            continue;
        }
        ++ev.samples;
        Witness w = make_witness(chart, p, largest, "max |coefficient of Pi^n|");
        if (largest > options.tolerance * std::max(scale, 1e-300) && largest > 0) {
            ++ev.nonvanishing;
        } else if (!ev.degenerate_point) {
            ev.degenerate_point = w;
        }
        ev.evaluations.push_back(std::move(w));
    }
    return ev;
}

Matrix coefficient_matrix(const MultiVector& p)
{
    const std::size_t n = p.chart().dim();
    Matrix m(n, std::vector<Expr>(n));
    for (const auto& [b, c] : p.terms()) {
        const auto idx = blade_indices(b);
        m[idx[0]][idx[1]] = c;
        m[idx[1]][idx[0]] = -c;
    }
    return m;
}

Matrix coefficient_matrix(const DiffForm& w)
{
    const std::size_t n = w.chart().dim();
    Matrix m(n, std::vector<Expr>(n));
    for (const auto& [b, c] : w.terms()) {
        const auto idx = blade_indices(b);
        m[idx[0]][idx[1]] = c;
        m[idx[1]][idx[0]] = -c;
    }
    return m;
}

MultiVector bivector_from_matrix(const Chart& chart, const Matrix& m)
{
    MultiVector p(chart, 2);
    for (std::size_t i = 0; i < chart.dim(); ++i) {
        for (std::size_t j = i + 1; j < chart.dim(); ++j) p.add(blade_of({i, j}), m[i][j]);
    }
    return p;
}

DiffForm twoform_from_matrix(const Chart& chart, const Matrix& m)
{
    DiffForm w(chart, 2);
    for (std::size_t i = 0; i < chart.dim(); ++i) {
        for (std::size_t j = i + 1; j < chart.dim(); ++j) w.add(blade_of({i, j}), m[i][j]);
    }
    return w;
}

namespace {

// Position of unknown (i, j), i < j, in the packed list of antisymmetric entries.
std::size_t pair_index(std::size_t i, std::size_t j, std::size_t n)
{
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

// Row of coefficients expressing Σ_k L[a][k] X[k][b] in the packed unknowns of
// an antisymmetric X.
std::vector<Expr> left_product_row(const Matrix& l, std::size_t a, std::size_t b, std::size_t n)
{
    std::vector<Expr> row(n * (n - 1) / 2);
    for (std::size_t k = 0; k < n; ++k) {
        if (k == b || l[a][k].is_zero()) continue;
        if (k < b) {
            row[pair_index(k, b, n)] += l[a][k];
        } else {
            row[pair_index(b, k, n)] -= l[a][k];
        }
    }
    return row;
}

// Same for X R: entry (a, c) = Σ_k X[a][k] R[k][c].
std::vector<Expr> right_product_row(const Matrix& r, std::size_t a, std::size_t c, std::size_t n)
{
    std::vector<Expr> row(n * (n - 1) / 2);
    for (std::size_t k = 0; k < n; ++k) {
        if (k == a || r[k][c].is_zero()) continue;
        if (a < k) {
            row[pair_index(a, k, n)] += r[k][c];
        } else {
            row[pair_index(k, a, n)] -= r[k][c];
        }
    }
    return row;
}

Matrix unpack_antisymmetric(const std::vector<Expr>& packed, std::size_t n)
{
    Matrix m(n, std::vector<Expr>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            m[i][j] = packed[pair_index(i, j, n)];
            m[j][i] = -m[i][j];
        }
    }
    return m;
}

}  // namespace

DiffForm adapted_identity_defect(const MultiVector& pi, const DiffForm& alpha, const DiffForm& omega)
{
    const int n = static_cast<int>(pi.chart().dim() - 1) / 2;
    const DiffForm top = wedge(alpha, power(omega, n));
    const DiffForm lower = Expr(n) * wedge(alpha, power(omega, n - 1));
    return interior(pi, top) - lower;
}

AdaptedForms adapted_forms(const MultiVector& pi, const MultiVector& v, const ZeroTestOptions& options)
{
    const Chart& chart = pi.chart();
    require_same_frame(chart, v.chart());
    const std::size_t dim = chart.dim();
    if (dim % 2 == 0) throw Error(ErrorCode::NotCorankOne, "a corank-one structure needs an odd-dimensional chart");
    if (v.degree() != 1) throw Error(ErrorCode::DegreeMismatch, "transversal must be a vector field");
    const int n = static_cast<int>(dim - 1) / 2;
    const Verdict top = is_zero(power(pi, n), options);
    if (top.holds()) throw Error(ErrorCode::NotCorankOne, "Pi^n vanishes identically, so the rank is below 2n");

    const Matrix p = coefficient_matrix(pi);
    const std::vector<Expr> vc = v.components();

    // α: Σ_i P[j][i] α_i = 0 for every j, and Σ_i v^i α_i = 1.
    Matrix a(dim + 1, std::vector<Expr>(dim));
    std::vector<Expr> rhs(dim + 1);
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t i = 0; i < dim; ++i) a[j][i] = p[j][i];
    }
    for (std::size_t i = 0; i < dim; ++i) a[dim][i] = vc[i];
    rhs[dim] = Expr(1);
    std::vector<Expr> alpha_c;
    try {
        alpha_c = solve(a, rhs, chart, options);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::Degenerate) {
            throw Error(ErrorCode::NotTransversal, std::string("no defining one-form with alpha(v) = 1: ") + e.what(), e.witness());
        }
        throw;
    }
    const DiffForm alpha = DiffForm::from_components(chart, alpha_c);

    // ω: P W = -(I - v α^T) and W v = 0, W antisymmetric.
    Matrix system;
    std::vector<Expr> values;
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            system.push_back(left_product_row(p, r, c, dim));
            values.push_back(vc[r] * alpha_c[c] - Expr(r == c ? 1 : 0));
        }
    }
    Matrix vcol(dim, std::vector<Expr>(1));
    for (std::size_t k = 0; k < dim; ++k) vcol[k][0] = vc[k];
    for (std::size_t r = 0; r < dim; ++r) {
        system.push_back(right_product_row(vcol, r, 0, dim));
        values.push_back(Expr());
    }
    std::vector<Expr> packed;
    try {
        packed = solve(system, values, chart, options);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::Degenerate) {
            throw Error(ErrorCode::NotCorankOne, std::string("no defining two-form: ") + e.what(), e.witness());
        }
        throw;
    }
    const DiffForm omega = twoform_from_matrix(chart, unpack_antisymmetric(packed, dim));

    AdaptedForms out{alpha, omega, v, Verdict::symbolic()};
    out.postcondition = is_zero(interior(v, alpha).scalar_value() - Expr(1), chart, options);
    out.postcondition = all_of(out.postcondition, is_zero(interior(v, omega), options));
    out.postcondition = all_of(out.postcondition, is_zero(adapted_identity_defect(pi, alpha, omega), options));
    return out;
}

MultiVector bivector_from_forms(const DiffForm& alpha, const DiffForm& omega, const MultiVector& v,
                                const ZeroTestOptions& options)
{
    const Chart& chart = alpha.chart();
    require_same_frame(chart, omega.chart());
    require_same_frame(chart, v.chart());
    const std::size_t dim = chart.dim();
    const Matrix w = coefficient_matrix(omega);
    const std::vector<Expr> ac = alpha.components();
    const std::vector<Expr> vc = v.components();

    Matrix system;
    std::vector<Expr> values;
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            system.push_back(right_product_row(w, r, c, dim));
            values.push_back(vc[r] * ac[c] - Expr(r == c ? 1 : 0));
        }
    }
    Matrix acol(dim, std::vector<Expr>(1));
    for (std::size_t k = 0; k < dim; ++k) acol[k][0] = ac[k];
    for (std::size_t r = 0; r < dim; ++r) {
        system.push_back(right_product_row(acol, r, 0, dim));
        values.push_back(Expr());
    }
    std::vector<Expr> packed;
    try {
        packed = solve(system, values, chart, options);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::Degenerate) {
            throw Error(ErrorCode::Degenerate, std::string("forms do not determine a corank-one bivector: ") + e.what(), e.witness());
        }
        throw;
    }
    return bivector_from_matrix(chart, unpack_antisymmetric(packed, dim));
}

MultiVector invert_twoform(const DiffForm& w, const ZeroTestOptions& options)
{
    if (w.degree() != 2) throw Error(ErrorCode::DegreeMismatch, "expected a 2-form");
    const Chart& chart = w.chart();
    if (chart.dim() % 2 != 0) throw Error(ErrorCode::Degenerate, "a 2-form on an odd-dimensional chart is degenerate");
    Matrix inv = inverse(coefficient_matrix(w), chart, options);
    for (auto& row : inv) {
        for (auto& e : row) e = -e;
    }
    return bivector_from_matrix(chart, inv);
}

DiffForm invert_bivector(const MultiVector& p, const ZeroTestOptions& options)
{
    if (p.degree() != 2) throw Error(ErrorCode::DegreeMismatch, "expected a bivector");
    const Chart& chart = p.chart();
    if (chart.dim() % 2 != 0) throw Error(ErrorCode::Degenerate, "a bivector on an odd-dimensional chart is degenerate");
    Matrix inv = inverse(coefficient_matrix(p), chart, options);
    for (auto& row : inv) {
        for (auto& e : row) e = -e;
    }
    return twoform_from_matrix(chart, inv);
}

}  // namespace corank

#include "invariants/antiderivative.hpp"

#include "common/error.hpp"

namespace corank {

namespace {

Expr monomial_expr(const Monomial& m, const Rational& c)
{
    Poly p;
    p.emplace(m, c);
    return Expr::from_poly(std::move(p));
}

// Slope of an argument that is linear in var with a rational slope.
std::optional<Rational> linear_slope(const Expr& arg, const std::string& var)
{
    const Expr d = arg.derive(var);
    auto q = d.as_rational();
    if (!q || *q == 0) return std::nullopt;
    return q;
}

// ∫ var^k * g(var) dvar where g is exp/sin/cos of a linear argument (or 1).
std::optional<Expr> integrate_factor(int k, const std::optional<Kernel>& special, const std::string& var)
{
    const Expr x = Expr::variable(var);
    if (!special) {
        if (k == -1) return Expr::log(x);
        return x.pow(k + 1) / Expr(k + 1);
    }
    if (k < 0) return std::nullopt;
    const Expr& arg = special->argument();
    const auto slope = linear_slope(arg, var);
    if (!slope) return std::nullopt;
    const Expr a(*slope);
    // Integration by parts reduces the power of var one step at a time.
    switch (special->kind()) {
    case KernelKind::Exp: {
        const Expr e = Expr::exp(arg);
        if (k == 0) return e / a;
        auto rest = integrate_factor(k - 1, special, var);
        if (!rest) return std::nullopt;
        return x.pow(k) * e / a - Expr(k) / a * *rest;
    }
    case KernelKind::Sin: {
        const Expr c = Expr::cos(arg);
        if (k == 0) return -c / a;
        auto rest = integrate_factor(k - 1, Kernel::function(KernelKind::Cos, arg), var);
        if (!rest) return std::nullopt;
        return -x.pow(k) * c / a + Expr(k) / a * *rest;
    }
    case KernelKind::Cos: {
        const Expr s = Expr::sin(arg);
        if (k == 0) return s / a;
        auto rest = integrate_factor(k - 1, Kernel::function(KernelKind::Sin, arg), var);
        if (!rest) return std::nullopt;
        return x.pow(k) * s / a - Expr(k) / a * *rest;
    }
    default: return std::nullopt;
    }
}

}  // namespace

std::optional<Expr> integrate(const Expr& e, const std::string& var, const Chart& chart, const ZeroTestOptions& options)
{
    if (!e.depends_on(var)) return e * Expr::variable(var);
    for (const auto& [m, c] : e.denominator()) {
        for (const auto& f : m.factors) {
            if (f.first.depends_on(var)) return std::nullopt;
        }
    }
    const Expr den = Expr::from_poly(e.denominator());
    Expr total;
    for (const auto& [m, c] : e.numerator()) {
        int k = 0;
        std::optional<Kernel> special;
        std::vector<std::pair<Kernel, int>> rest;
        for (const auto& [kernel, power] : m.factors) {
            if (!kernel.depends_on(var)) {
                rest.emplace_back(kernel, power);
            } else if (kernel.is_variable()) {
                k = power;
            } else if (power == 1 && !special &&
                       (kernel.kind() == KernelKind::Exp || kernel.kind() == KernelKind::Sin || kernel.kind() == KernelKind::Cos)) {
                special = kernel;
            } else {
                return std::nullopt;
            }
        }
        auto piece = integrate_factor(k, special, var);
        if (!piece) return std::nullopt;
        total += monomial_expr(make_monomial(std::move(rest)), c) * *piece;
    }
    total = total / den;
    if (!is_zero(total.derive(var) - e, chart, options).holds()) return std::nullopt;
    return total;
}

std::optional<Expr> potential(const DiffForm& eta, const ZeroTestOptions& options)
{
    if (eta.degree() != 1 && !eta.is_structurally_zero()) return std::nullopt;
    const Chart& chart = eta.chart();
    if (eta.is_structurally_zero()) return Expr();
    if (!is_zero(ext_deriv(eta), options).holds()) return std::nullopt;
    const auto comps = eta.components();
    Expr f;
    for (std::size_t i = 0; i < chart.dim(); ++i) {
        const Expr residual = comps[i] - f.derive(chart.name(i));
        if (residual.is_zero()) continue;
        auto piece = integrate(residual, chart.name(i), chart, options);
        if (!piece) return std::nullopt;
        f += *piece;
    }
    if (!is_zero(differential(chart, f) - eta, options).holds()) return std::nullopt;
    return f;
}

bool angle_safe(const Expr& e, const std::string& var)
{
    for (const Poly* p : {&e.numerator(), &e.denominator()}) {
        for (const auto& [m, c] : *p) {
            for (const auto& [k, power] : m.factors) {
                if (!k.depends_on(var)) continue;
                if (k.is_variable()) return false;
                if (k.kind() == KernelKind::Sin || k.kind() == KernelKind::Cos) continue;
                if (!angle_safe(k.argument(), var)) return false;
            }
        }
    }
    return true;
}

}  // namespace corank

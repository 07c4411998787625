#include "bgeom/bgeom.hpp"

#include "common/roots.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

namespace corank {

namespace {

constexpr double kDegenerateSlope = 1e-6;

Blade full_blade(std::size_t dim) { return dim >= 32 ? ~Blade{0} : (Blade{1} << dim) - 1; }

// Integer-primitive numerator with positive leading coefficient, as "<p> = 0".
std::string locus_text(const Expr& h)
{
    const Poly& num = h.numerator();
    if (num.empty()) return {};
    mpz_class l = 1;
    mpz_class g = 0;
    for (const auto& [m, c] : num) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    for (const auto& [m, c] : num) {
        const mpz_class scaled = c.get_num() * (l / c.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), scaled.get_mpz_t());
    }
    Rational factor(l, g);
    factor.canonicalize();
    if (num.begin()->second < 0) factor = -factor;
    Poly scaled;
    for (const auto& [m, c] : num) scaled.emplace(m, c * factor);
    const Expr p = Expr::from_poly(std::move(scaled));
    if (p.as_rational()) return {};
    return p.str() + " = 0";
}

bool involves(const Expr& e, const std::string& name) { return e.depends_on(name); }

template <Variance V>
bool involves(const Alternating<V>& a, std::size_t index)
{
    const std::string& name = a.chart().name(index);
    for (const auto& [blade, c] : a.terms()) {
        if (blade & (Blade{1} << index)) return true;
        if (involves(c, name)) return true;
    }
    return false;
}

template <Variance V>
Alternating<V> lift_impl(const Alternating<V>& a, const Chart& chart)
{
    const Chart& from = a.chart();
    bool prefix = from.dim() <= chart.dim() && from.parameters().size() == chart.parameters().size();
    for (std::size_t i = 0; prefix && i < from.dim(); ++i) prefix = from.name(i) == chart.name(i);
    for (std::size_t i = 0; prefix && i < from.parameters().size(); ++i) {
        prefix = from.parameters()[i].name == chart.parameters()[i].name;
    }
    if (!prefix) throw Error(ErrorCode::ChartMismatch, "target chart does not extend the source chart");
    Alternating<V> out(chart, a.degree());
    for (const auto& [blade, c] : a.terms()) out.add(blade, c);
    return out;
}

Blade drop_bit(Blade b, std::size_t index)
{
    const Blade low = b & ((Blade{1} << index) - 1);
    const Blade high = (b >> (index + 1)) << index;
    return low | high;
}

std::string fresh_name(const Chart& chart)
{
    for (int k = 0;; ++k) {
        std::string name = k == 0 ? "t" : "t" + std::to_string(k);
        if (chart.knows(name)) continue;
        try {
            (void)chart.extended(line_coordinate(name));
            return name;
        } catch (const Error&) {
        }
    }
}

Verdict guarded(const std::function<Verdict()>& check)
{
    try {
        return check();
    } catch (const Error& e) {
        if (e.witness()) return Verdict::refuted(*e.witness(), e.what());
        return Verdict::unknown(e.what());
    }
}

}  // namespace

DiffForm lift(const DiffForm& eta, const Chart& chart) { return lift_impl(eta, chart); }
MultiVector lift(const MultiVector& p, const Chart& chart) { return lift_impl(p, chart); }

Chart drop_coordinate(const Chart& chart, std::size_t index)
{
    auto coords = chart.coordinates();
    if (index >= coords.size()) throw Error(ErrorCode::UnknownCoordinate, "no coordinate at that index");
    coords.erase(coords.begin() + static_cast<std::ptrdiff_t>(index));
    return Chart(std::move(coords), chart.parameters(), chart.torus_strict());
}

MultiVector restrict_to(const MultiVector& p, const Chart& sub, std::size_t dropped)
{
    if (involves(p, dropped)) {
        throw Error(ErrorCode::Validation, "'" + p.str() + "' involves " + p.chart().name(dropped));
    }
    MultiVector out(sub, p.degree());
    for (const auto& [blade, c] : p.terms()) out.add(drop_bit(blade, dropped), c);
    return out;
}

BTransversality b_transversality_check(const MultiVector& pi, int n, const ZeroTestOptions& options)
{
    const Chart& chart = pi.chart();
    if (pi.degree() != 2) throw Error(ErrorCode::DegreeMismatch, "expected a bivector");
    if (n < 1 || chart.dim() != static_cast<std::size_t>(2 * n)) {
        throw Error(ErrorCode::DegreeMismatch, "chart dimension must be 2n = " + std::to_string(2 * n));
    }

    BTransversality out;
    out.top_power = power(pi, n);
    out.h = out.top_power.coefficient(full_blade(chart.dim()));
    out.critical_locus = locus_text(out.h);

    if (auto c = out.h.as_rational()) {
        if (*c == 0) {
            out.verdict = Verdict::refuted(make_witness(chart, midpoint(chart), 0.0, "Pi^n"),
                                           "Pi^n vanishes identically");
        } else {
            out.verdict = Verdict::symbolic();
            out.verdict.note = "Pi^n has no zeros";
        }
        return out;
    }

    std::vector<Expr> gradient;
    for (std::size_t j = 0; j < chart.dim(); ++j) gradient.push_back(out.h.derive(chart.name(j)));
    for (const auto& g : gradient) {
        auto c = g.as_rational();
        if (c && *c != 0) {
            out.verdict = Verdict::symbolic();
            out.verdict.note = "dh has a nonzero constant component";
            return out;
        }
    }

    // Sample {h = 0} along coordinate lines through a few base points.
    std::mt19937_64 rng(options.seed);
    constexpr int kBases = 4;
    for (std::size_t k = 0; k < chart.dim(); ++k) {
        const Coordinate& ck = chart.coordinates()[k];
        for (int b = 0; b < kBases; ++b) {
            Assignment base = b == 0 ? midpoint(chart) : sample_point(chart, rng);
            std::vector<double> roots;
            try {
                roots = find_roots(
                    [&](double s) {
                        base[ck.name] = s;
                        return out.h.evaluate(base);
                    },
                    ck.lo, ck.hi);
            } catch (const Error& e) {
                if (e.code() != ErrorCode::Singular) throw;
                continue;
            }
            for (double r : roots) {
                base[ck.name] = r;
                double norm = 0;
                try {
                    for (const auto& g : gradient) norm = std::hypot(norm, g.evaluate(base));
                } catch (const Error& e) {
                    if (e.code() != ErrorCode::Singular) throw;
                    continue;
                }
                Witness w = make_witness(chart, base, norm, "|dh| at h = 0");
                if (norm < kDegenerateSlope) {
                    out.verdict = Verdict::refuted(w, "h and dh vanish together");
                    out.zero_samples.push_back(std::move(w));
                    return out;
                }
                out.zero_samples.push_back(std::move(w));
            }
        }
    }
    if (out.zero_samples.empty()) {
        out.verdict = Verdict::unknown("no zeros of h were found by sampling");
    } else {
        out.verdict = {Truth::ProbablyTrue, std::nullopt,
                       "dh nonzero at " + std::to_string(out.zero_samples.size()) + " sampled zeros"};
    }
    return out;
}

BExtension extend_to_b(const MultiVector& pi, const AdaptedForms& adapted, const ZeroTestOptions& options,
                       int quotient_samples)
{
    const Chart& chart = pi.chart();
    require_same_frame(chart, adapted.alpha.chart());
    require_same_frame(chart, adapted.omega.chart());
    if (chart.dim() % 2 == 0) throw Error(ErrorCode::NotCorankOne, "chart dimension must be odd");
    const int n = static_cast<int>(chart.dim() - 1) / 2;

    const Verdict da = is_zero(ext_deriv(adapted.alpha), options);
    if (!da.holds()) throw Error(ErrorCode::InvariantsNotVanishing, "d(alpha) does not vanish", da.witness);
    const Verdict dw = is_zero(ext_deriv(adapted.omega), options);
    if (!dw.holds()) throw Error(ErrorCode::InvariantsNotVanishing, "d(omega) does not vanish", dw.witness);

    const std::string t = fresh_name(chart);
    const std::size_t ti = chart.dim();
    const Blade tbit = Blade{1} << ti;
    BExtension out;
    out.form_chart = chart.extended(line_coordinate(t, 0.0, 1.0));
    out.bivector_chart = chart.extended(line_coordinate(t, -1.0, 1.0));

    const Expr tv = Expr::variable(t);
    const DiffForm log_dt = DiffForm::basis(out.form_chart, {ti}, Expr(1) / tv);
    out.omega_tilde = wedge(log_dt, lift(adapted.alpha, out.form_chart)) + lift(adapted.omega, out.form_chart);
    const MultiVector pi_form = invert_twoform(out.omega_tilde, options);
    out.pi_tilde = lift(pi_form, out.bivector_chart);
    const MultiVector base = lift(pi, out.bivector_chart);

    out.omega_closed = is_zero(ext_deriv(out.omega_tilde), options);
    out.restriction = guarded([&] { return is_zero(out.pi_tilde.substitute({{t, Expr(0)}}) - base, options); });

    const Expr top = power(out.pi_tilde, n + 1).coefficient(full_blade(out.bivector_chart.dim()));
    out.divisible = guarded([&] { return is_zero(top.substitute({{t, Expr(0)}}), out.bivector_chart, options); });
    out.quotient = top / tv;
    if (auto c = out.quotient.as_rational(); c && *c != 0) {
        out.quotient_nonzero = Verdict::symbolic();
    }
    std::mt19937_64 rng(options.seed);
    int attempts = 0;
    while (static_cast<int>(out.quotient_samples.size()) < quotient_samples && attempts++ < quotient_samples + options.retry_budget) {
        const Assignment p = out.quotient_samples.empty() ? midpoint(out.bivector_chart) : sample_point(out.bivector_chart, rng);
        double q = 0;
        try {
            q = out.quotient.evaluate(p);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::Singular) throw;
            continue;
        }
        Witness w = make_witness(out.bivector_chart, p, q, "Pi~^(n+1) / t");
        if (std::abs(q) <= options.tolerance && !out.quotient_nonzero.is_false()) {
            out.quotient_nonzero = Verdict::refuted(w, "quotient vanishes at a sample point");
        }
        out.quotient_samples.push_back(std::move(w));
    }
    if (out.quotient_nonzero.truth == Truth::Unknown && out.quotient_nonzero.note.empty()) {
        if (static_cast<int>(out.quotient_samples.size()) == quotient_samples) {
            out.quotient_nonzero = {Truth::ProbablyTrue, std::nullopt,
                                    "nonzero at " + std::to_string(quotient_samples) + " sample points"};
        } else {
            out.quotient_nonzero = Verdict::unknown("too many singular sample points");
        }
    }

    out.round_trip = guarded([&] { return is_zero(invert_bivector(pi_form, options) - out.omega_tilde, options); });
    out.projection = guarded([&] {
        const MultiVector at_one = out.pi_tilde.substitute({{t, Expr(1)}});
        MultiVector projected(out.bivector_chart, 2);
        for (const auto& [blade, c] : at_one.terms()) {
            if (!(blade & tbit)) projected.add(blade, c);
        }
        return is_zero(projected - base, options);
    });
    return out;
}

ProductBPoisson build_product_bpoisson(const Chart& chart, const std::string& angle, const Expr& f, const MultiVector& x,
                                       const MultiVector& leaf_structure, const ZeroTestOptions& options)
{
    const std::size_t ti = chart.require(angle);
    require_same_frame(chart, x.chart());
    require_same_frame(chart, leaf_structure.chart());
    if (x.degree() != 1 || leaf_structure.degree() != 2) {
        throw Error(ErrorCode::DegreeMismatch, "expected a vector field X and a bivector pi");
    }
    if (chart.dim() % 2 != 0) throw Error(ErrorCode::Validation, "the product chart must be even dimensional");
    for (std::size_t i = 0; i < chart.dim(); ++i) {
        if (i != ti && f.depends_on(chart.name(i))) {
            throw Error(ErrorCode::Validation, "f must depend on " + angle + " only, but involves " + chart.name(i));
        }
    }
    if (involves(x, ti)) throw Error(ErrorCode::Validation, "X must not involve " + angle);
    if (involves(leaf_structure, ti)) throw Error(ErrorCode::Validation, "pi must not involve " + angle);

    const Verdict poisson = is_zero(schouten(x, leaf_structure), options);
    if (poisson.is_false()) throw Error(ErrorCode::NotPoissonField, "[X, pi] does not vanish", poisson.witness);
    if (!poisson.holds()) throw Error(ErrorCode::Undecided, "could not decide whether [X, pi] vanishes");

    ProductBPoisson out;
    out.chart = chart;
    out.angle = angle;
    out.f = f;
    out.x = x;
    out.leaf_structure = leaf_structure;
    out.pi = wedge(MultiVector::basis(chart, {ti}, f), x) + leaf_structure;
    out.jacobi = jacobi_check(out.pi, options);
    out.transversality = b_transversality_check(out.pi, static_cast<int>(chart.dim() / 2), options);

    // Zeros of f on one period. The scan window is shifted by half a grid
    // step so that a zero at the period boundary is a sign change, not an
    // endpoint.
    const Coordinate& c = chart.coordinates()[ti];
    Assignment point = midpoint(chart);
    auto g = [&](double s) {
        point[angle] = s;
        return f.evaluate(point);
    };
    constexpr int kGrid = 64;
    const double width = c.hi - c.lo;
    const bool wraps = c.periodic && std::abs(width - 2 * std::numbers::pi) < 1e-12;
    std::vector<double> roots;
    if (wraps) {
        const double shift = width / kGrid / 2;
        for (double r : find_roots(g, c.lo - shift, c.hi - shift, kGrid)) {
            if (r < c.lo) r += width;
            if (std::abs(r - c.lo) < 1e-12 || std::abs(r - c.hi) < 1e-12) r = c.lo;
            roots.push_back(r);
        }
        std::sort(roots.begin(), roots.end());
        roots.erase(std::unique(roots.begin(), roots.end(), [](double a, double b) { return std::abs(a - b) < 1e-9; }),
                    roots.end());
    } else {
        roots = find_roots(g, c.lo, c.hi, kGrid);
    }
    out.zeros = roots;

    const Expr slope = f.derive(angle);
    out.linear_vanishing = Verdict::symbolic();
    for (double r : roots) {
        point[angle] = r;
        const double s = slope.evaluate(point);
        out.zero_slopes.push_back(s);
        if (std::abs(s) < kDegenerateSlope && !out.linear_vanishing.is_false()) {
            out.linear_vanishing = Verdict::refuted(make_witness(chart, point, s, "f'"), "f vanishes to second order");
        }
    }
    const bool constant = f.as_rational() && *f.as_rational() != 0;
    if (roots.empty()) {
        out.regular = constant ? Verdict::symbolic() : Verdict{Truth::ProbablyTrue, std::nullopt, "no zeros of f found"};
        out.linear_vanishing.note = "f has no zeros";
    } else {
        point[angle] = roots.front();
        out.regular = Verdict::refuted(make_witness(chart, point, 0.0, "f"), "f vanishes");
        if (out.linear_vanishing.truth == Truth::True) {
            out.linear_vanishing = {Truth::ProbablyTrue, std::nullopt, "f' nonzero at every zero"};
        }
    }

    const Chart n_chart = drop_coordinate(chart, ti);
    const MultiVector xn = restrict_to(x, n_chart, ti);
    const MultiVector pin = restrict_to(leaf_structure, n_chart, ti);
    try {
        out.n_forms = adapted_forms(pin, xn, options);
        out.transverse = Verdict::symbolic();
        out.transverse.note = "alpha_N(X) = 1";
    } catch (const Error& e) {
        if (e.code() == ErrorCode::NotTransversal && e.witness()) {
            out.transverse = Verdict::refuted(*e.witness(), e.what());
        } else {
            out.transverse = Verdict::unknown(e.what());
        }
    }
    if (out.n_forms) {
        out.n_first_vanishes = is_zero(ext_deriv(out.n_forms->alpha), options);
        out.n_second_vanishes = is_zero(ext_deriv(out.n_forms->omega), options);
        out.n_transverse = check_transverse_poisson(pin, *out.n_forms, options);
    } else {
        out.n_first_vanishes = Verdict::unknown("no adapted forms on N");
        out.n_second_vanishes = Verdict::unknown("no adapted forms on N");
    }
    return out;
}

Verdict mapping_torus_check(const ChartMap& phi, const DiffForm& omega_leaf, const ZeroTestOptions& options)
{
    require_same_frame(phi.target, omega_leaf.chart());
    return is_zero(pullback(phi, omega_leaf) - lift(omega_leaf, phi.source), options);
}

}  // namespace corank

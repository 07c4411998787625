#include "invariants/antiderivative.hpp"
#include "invariants/invariants.hpp"

#include "common/error.hpp"
#include "common/roots.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <set>

namespace corank {

namespace {

bool periodic_safe(const Expr& f, const Chart& chart)
{
    if (!chart.torus_strict()) return true;
    for (const auto& c : chart.coordinates()) {
        if (c.periodic && !angle_safe(f, c.name)) return false;
    }
    return true;
}

std::optional<double> try_evaluate(const Expr& e, const Assignment& p)
{
    try {
        return e.evaluate(p);
    } catch (const Error& err) {
        if (err.code() != ErrorCode::Singular) throw;
        return std::nullopt;
    }
}

std::vector<Certificate> certificate_candidates(const DiffForm& alpha, const DiffForm& beta,
                                                const std::optional<Expr>& supplied, const ZeroTestOptions& options)
{
    const Chart& chart = alpha.chart();
    std::vector<Certificate> out;
    std::set<std::string> seen;
    auto push = [&](const Expr& f, const char* origin) {
        if (!seen.insert(f.str()).second) return;
        out.push_back({CertificateKind::First, f, std::nullopt, std::nullopt, origin});
    };
    if (supplied) push(*supplied, "supplied");
    push(Expr(), "trivial");
    // Normalizing one coefficient of α to ±1.
    const Assignment mid = midpoint(chart);
    for (const auto& [b, c] : alpha.terms()) {
        if (c.as_rational()) continue;
        const auto at_mid = try_evaluate(c, mid);
        if (!at_mid || *at_mid == 0) continue;
        const Expr f = Expr::log(*at_mid > 0 ? c : -c);
        if (periodic_safe(f, chart) && try_evaluate(f, mid)) push(f, "coefficient");
    }
    if (auto f = potential(beta, options); f && periodic_safe(*f, chart)) push(*f, "antiderivative");
    return out;
}

bool same_class(const Verdict& a, const Verdict& b)
{
    return a.holds() == b.holds() && a.is_false() == b.is_false();
}

// Looks for a loop of an angle coordinate that lies in a leaf (α vanishes on
// the loop's tangent all the way round) along which β has a nonzero period.
// Such a loop rules out β = df + gα with f a function on the chart.
std::optional<PeriodObstruction> find_period_obstruction(const DiffForm& alpha, const DiffForm& beta, const ZeroTestOptions& options)
{
    const Chart& chart = alpha.chart();
    if (!chart.torus_strict()) return std::nullopt;
    const auto a = alpha.components();
    const auto b = beta.components();
    std::mt19937_64 rng(options.seed);
    constexpr int kLoopChecks = 24;
    constexpr int kQuadrature = 256;
    constexpr int kGrid = 64;
    const double two_pi = 2.0 * std::numbers::pi;

    for (std::size_t j = 0; j < chart.dim(); ++j) {
        if (!chart.coordinates()[j].periodic) continue;
        const std::string& angle = chart.name(j);
        for (int attempt = 0; attempt < 4; ++attempt) {
            const Assignment base = attempt == 0 ? midpoint(chart) : sample_point(chart, rng);
            for (std::size_t k = 0; k < chart.dim(); ++k) {
                if (k == j) continue;
                const Coordinate& ck = chart.coordinates()[k];
                auto g = [&](double s) {
                    Assignment p = base;
                    p[ck.name] = s;
                    return a[j].evaluate(p);
                };
                std::vector<double> roots;
                try {
                    roots = find_roots(g, ck.lo, ck.hi, kGrid);
                } catch (const Error& e) {
                    if (e.code() != ErrorCode::Singular) throw;
                    continue;
                }
                for (double root : roots) {
                    Assignment p = base;
                    p[ck.name] = root;
                    bool in_leaf = true;
                    try {
                        for (int m = 0; m < kLoopChecks && in_leaf; ++m) {
                            p[angle] = two_pi * m / kLoopChecks;
                            const Expr::Parts parts = a[j].evaluate_parts(p);
                            double others = 0;
                            for (std::size_t i = 0; i < chart.dim(); ++i) others = std::max(others, std::fabs(a[i].evaluate(p)));
                            in_leaf = std::fabs(parts.numerator / parts.denominator) <= 1e-9 * std::max(1.0, others);
                        }
                        if (!in_leaf) continue;
                        double period = 0;
                        for (int m = 0; m < kQuadrature; ++m) {
                            p[angle] = two_pi * m / kQuadrature;
                            period += b[j].evaluate(p);
                        }
                        period *= two_pi / kQuadrature;
                        if (std::fabs(period) > 1e-6) {
                            p[angle] = 0;
                            return PeriodObstruction{angle, period, make_witness(chart, p, period, "period of beta around " + angle)};
                        }
                    } catch (const Error& e) {
                        if (e.code() != ErrorCode::Singular) throw;
                    }
                }
            }
        }
    }
    return std::nullopt;
}

}  // namespace

UnimodularityResult unimodularity_check(const MultiVector& pi, const AdaptedForms& adapted,
                                        const std::optional<Expr>& supplied, const ZeroTestOptions& options)
{
    const DiffForm& alpha = adapted.alpha;
    const Chart& chart = alpha.chart();
    const int n = static_cast<int>(chart.dim() - 1) / 2;
    UnimodularityResult r;
    r.beta = compute_beta(alpha, adapted.transversal, options).beta;
    r.godbillon_vey = godbillon_vey(r.beta);
    const DiffForm omega_power = power(adapted.omega, n);

    for (const auto& cert : certificate_candidates(alpha, r.beta, supplied, options)) {
        CertificateTrial t;
        t.certificate = cert;
        const DiffForm reduced = r.beta - differential(chart, cert.f);
        t.beta_test = is_zero(wedge(reduced, alpha), options);
        t.certificate_test = verify_certificate(cert, alpha, adapted.omega, options);
        try {
            const DiffForm theta = wedge(Expr::exp(-cert.f) * alpha, omega_power);
            t.modular_test = is_zero(modular_field(pi, theta, options).field, options);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::DegenerateVolume && e.code() != ErrorCode::Singular) throw;
            t.modular_test = Verdict::unknown(e.what());
        }
        t.agree = same_class(t.beta_test, t.certificate_test) && same_class(t.beta_test, t.modular_test);
        const bool accepted = t.beta_test.holds() && t.certificate_test.holds();
        r.trials.push_back(t);
        if (accepted) {
            r.verdict = all_of(t.beta_test, t.certificate_test);
            r.certificate = cert;
            r.certified_godbillon_vey = godbillon_vey(reduced);
            return r;
        }
    }

    if (auto obstruction = find_period_obstruction(alpha, r.beta, options)) {
        r.verdict = Verdict::refuted(obstruction->base_point, "beta has a nonzero period along a closed loop in a leaf");
        r.obstruction = std::move(obstruction);
        return r;
    }
    r.verdict = Verdict::unknown("no certificate verified and no period obstruction was found");
    return r;
}

}  // namespace corank

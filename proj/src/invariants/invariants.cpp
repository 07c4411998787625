#include "invariants/invariants.hpp"

#include "common/error.hpp"
#include "common/roots.hpp"

#include <cmath>
#include <random>

namespace corank {

BetaResult compute_beta(const DiffForm& alpha, const MultiVector& v, const ZeroTestOptions& options)
{
    const DiffForm dalpha = ext_deriv(alpha);
    const Verdict integrable = is_zero(wedge(dalpha, alpha), options);
    if (integrable.is_false()) throw Error(ErrorCode::NotIntegrable, "d(alpha) ^ alpha is not zero", integrable.witness);
    if (!integrable.holds()) throw Error(ErrorCode::Undecided, "could not decide whether d(alpha) ^ alpha = 0");
    BetaResult r;
    r.beta = exterior_divide(dalpha, alpha, v, options);
    r.postcondition = is_zero(dalpha - wedge(r.beta, alpha), options);
    r.closed_mod_alpha = is_zero(wedge(ext_deriv(r.beta), alpha), options);
    return r;
}

MuResult compute_mu(const DiffForm& omega, const DiffForm& alpha, const MultiVector& v, const ZeroTestOptions& options)
{
    const DiffForm domega = ext_deriv(omega);
    MuResult r;
    r.alpha_closed = is_zero(ext_deriv(alpha), options);
    if (!r.alpha_closed.holds()) r.warning = "alpha is not closed; mu is computed formally";
    r.mu = exterior_divide(domega, alpha, v, options);
    r.postcondition = is_zero(domega - wedge(r.mu, alpha), options);
    r.closed_mod_alpha = is_zero(wedge(ext_deriv(r.mu), alpha), options);
    return r;
}

Verdict verify_certificate(const Certificate& cert, const DiffForm& alpha, const DiffForm& omega, const ZeroTestOptions& options)
{
    if (cert.kind == CertificateKind::First) {
        return is_zero(ext_deriv(Expr::exp(-cert.f) * alpha), options);
    }
    if (!cert.nu) throw Error(ErrorCode::Validation, "second-kind certificate without nu");
    const DiffForm closed = omega - wedge(*cert.nu, alpha);
    return all_of(is_zero(ext_deriv(closed), options), leafwise_equal(closed, omega, alpha, options));
}

DiffForm godbillon_vey(const DiffForm& beta)
{
    return wedge(beta, ext_deriv(beta));
}

// ---------------------------------------------------------------------------

namespace {

Expr top_coefficient(const DiffForm& theta)
{
    const Blade full = static_cast<Blade>((std::uint64_t{1} << theta.chart().dim()) - 1);
    return theta.coefficient(full);
}

void require_volume(const DiffForm& theta, const ZeroTestOptions& options)
{
    const Chart& chart = theta.chart();
    if (theta.degree() != static_cast<int>(chart.dim())) throw Error(ErrorCode::DegreeMismatch, "a volume form must have top degree");
    const Expr c = top_coefficient(theta);
    if (c.is_zero()) throw Error(ErrorCode::DegenerateVolume, "the volume form is zero");

    auto vanishes_at = [&](const Assignment& p) {
        const Expr::Parts parts = c.evaluate_parts(p);
        if (std::fabs(parts.numerator) <= options.tolerance * parts.numerator_scale) {
            throw Error(ErrorCode::DegenerateVolume, "the volume form vanishes at a sample point",
                        make_witness(chart, p, parts.numerator / parts.denominator, "volume coefficient"));
        }
        return parts.numerator / parts.denominator;
    };
    auto along = [](const Assignment& p, const Assignment& q, double s) {
        Assignment r = p;
        for (auto& [name, value] : r) value += s * (q.at(name) - value);
        return r;
    };

    // Midpoint first, then random points; a sign change between consecutive
    // samples is chased along the segment joining them.
    std::mt19937_64 rng(options.seed);
    std::optional<std::pair<Assignment, double>> previous;
    for (int i = 0; i <= options.trials; ++i) {
        const Assignment p = i == 0 ? midpoint(chart) : sample_point(chart, rng);
        double value = 0;
        try {
            value = vanishes_at(p);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::Singular) throw;
            continue;
        }
        if (previous && (previous->second < 0) != (value < 0)) {
            const Assignment& q = previous->first;
            std::vector<double> roots;
            try {
                roots = find_roots([&](double s) { return c.evaluate(along(q, p, s)); }, 0, 1, 16);
            } catch (const Error& e) {
                if (e.code() != ErrorCode::Singular) throw;
            }
            for (double s : roots) {
                try {
                    vanishes_at(along(q, p, s));
                } catch (const Error& e) {
                    if (e.code() != ErrorCode::Singular) throw;
                }
            }
        }
        previous = std::make_pair(p, value);
    }
}

}  // namespace

ModularField modular_field(const MultiVector& pi, const DiffForm& theta, const ZeroTestOptions& options)
{
    require_same_frame(pi.chart(), theta.chart());
    require_volume(theta, options);
    const Chart& chart = pi.chart();
    const Expr c = top_coefficient(theta);
    std::vector<Expr> comps;
    for (std::size_t i = 0; i < chart.dim(); ++i) {
        const MultiVector u = hamiltonian_vf(pi, Expr::variable(chart.name(i)));
        comps.push_back(top_coefficient(lie_derivative(u, theta)) / c);
    }
    ModularField r;
    r.field = MultiVector::from_components(chart, comps);
    r.preserves_volume = is_zero(lie_derivative(r.field, theta), options);
    r.preserves_pi = is_zero(lie_derivative(r.field, pi), options);
    return r;
}

MultiVector standard_structure(const DiffForm& theta)
{
    if (theta.chart().dim() != 2 || theta.degree() != 2) {
        throw Error(ErrorCode::DegreeMismatch, "the standard structure is defined for area forms in dimension 2");
    }
    return -invert_twoform(theta);
}

WeinsteinResult check_weinstein_identity(const MultiVector& pi, const AdaptedForms& adapted, const ZeroTestOptions& options)
{
    const int n = static_cast<int>(pi.chart().dim() - 1) / 2;
    const DiffForm theta = wedge(adapted.alpha, power(adapted.omega, n));
    WeinsteinResult r;
    r.modular = modular_field(pi, theta, options).field;
    r.contracted = interior(r.modular, adapted.omega);
    r.beta = compute_beta(adapted.alpha, adapted.transversal, options).beta;
    r.tangent = is_zero(interior(r.modular, adapted.alpha), options);
    r.verdict = leafwise_equal(r.contracted, r.beta, adapted.alpha, options);
    return r;
}

// ---------------------------------------------------------------------------

SecondObstructionResult second_obstruction_check(const AdaptedForms& adapted, const std::optional<DiffForm>& supplied_nu,
                                                 const ZeroTestOptions& options)
{
    SecondObstructionResult r;
    r.mu = compute_mu(adapted.omega, adapted.alpha, adapted.transversal, options);
    std::vector<Certificate> candidates;
    if (supplied_nu) candidates.push_back({CertificateKind::Second, Expr(), supplied_nu, std::nullopt, "supplied"});
    candidates.push_back({CertificateKind::Second, Expr(), DiffForm(adapted.alpha.chart(), 1), std::nullopt, "trivial"});
    r.verdict = Verdict::unknown("no second-kind certificate verified");
    for (const auto& cert : candidates) {
        const Verdict v = verify_certificate(cert, adapted.alpha, adapted.omega, options);
        if (v.holds()) {
            r.verdict = v;
            r.certificate = cert;
            break;
        }
    }
    return r;
}

// ---------------------------------------------------------------------------

TransversePoissonResult check_transverse_poisson(const MultiVector& pi, const AdaptedForms& adapted, const ZeroTestOptions& options)
{
    const Chart& chart = pi.chart();
    const MultiVector& v = adapted.transversal;
    const DiffForm& alpha = adapted.alpha;
    const DiffForm& omega = adapted.omega;
    const int n = static_cast<int>(chart.dim() - 1) / 2;

    TransversePoissonResult r;
    r.lie_pi = lie_derivative(v, pi);
    r.poisson_field = is_zero(r.lie_pi, options);
    const DiffForm dalpha = ext_deriv(alpha);
    const DiffForm domega = ext_deriv(omega);
    r.alpha_closed = is_zero(dalpha, options);
    r.omega_closed = is_zero(domega, options);
    r.forward = is_zero(interior(r.lie_pi, wedge(alpha, power(omega, n))), options);

    std::vector<Expr> coords;
    std::vector<MultiVector> ham;
    for (std::size_t i = 0; i < chart.dim(); ++i) {
        coords.push_back(Expr::variable(chart.name(i)));
        ham.push_back(hamiltonian_vf(pi, coords.back()));
    }
    auto scalar_of = [](const DiffForm& form, const MultiVector& x) { return interior(x, form).scalar_value(); };

    r.alpha_identity = Verdict::symbolic();
    for (std::size_t i = 0; i < chart.dim(); ++i) {
        const Expr lhs = evaluate_on(dalpha, {v, ham[i]});
        const Expr rhs = apply_vector(v, scalar_of(alpha, ham[i])) - apply_vector(ham[i], scalar_of(alpha, v)) -
                         scalar_of(alpha, schouten(v, ham[i]));
        r.alpha_identity = all_of(r.alpha_identity, is_zero(lhs - rhs, chart, options));
        if (!r.alpha_witness) {
            const Verdict nz = is_zero(lhs, chart, options);
            if (nz.is_false()) r.alpha_witness = BracketWitness{chart.name(i), "", *nz.witness};
        }
    }

    r.omega_identity = Verdict::symbolic();
    r.omega_bracket_form = Verdict::symbolic();
    for (std::size_t i = 0; i < chart.dim(); ++i) {
        for (std::size_t j = i + 1; j < chart.dim(); ++j) {
            const Expr lhs = evaluate_on(domega, {v, ham[i], ham[j]});
            const Expr cartan = apply_vector(v, evaluate_on(omega, {ham[i], ham[j]})) -
                                evaluate_on(omega, {schouten(v, ham[i]), ham[j]}) +
                                evaluate_on(omega, {schouten(v, ham[j]), ham[i]});
            r.omega_identity = all_of(r.omega_identity, is_zero(lhs - cartan, chart, options));
            const Expr bracket = apply_vector(v, poisson_bracket(pi, coords[i], coords[j])) -
                                 poisson_bracket(pi, apply_vector(v, coords[i]), coords[j]) -
                                 poisson_bracket(pi, coords[i], apply_vector(v, coords[j]));
            r.omega_bracket_form = all_of(r.omega_bracket_form, is_zero(lhs - bracket, chart, options));
            if (!r.omega_witness) {
                const Verdict nz = is_zero(lhs, chart, options);
                if (nz.is_false()) r.omega_witness = BracketWitness{chart.name(i), chart.name(j), *nz.witness};
            }
        }
    }

    const Verdict closed = all_of(r.alpha_closed, r.omega_closed);
    const bool decided = (r.poisson_field.holds() || r.poisson_field.is_false()) && (closed.holds() || closed.is_false());
    if (!decided) {
        r.verdict = Verdict::unknown("could not decide one side of the equivalence");
    } else if (r.poisson_field.holds() == closed.holds()) {
        r.verdict = r.poisson_field.holds() ? all_of(r.poisson_field, closed) : Verdict::symbolic();
        if (!r.poisson_field.holds()) r.verdict.note = "v is not Poisson and the defining forms are not both closed";
    } else {
        r.verdict = Verdict{Truth::False, r.poisson_field.holds() ? closed.witness : r.poisson_field.witness,
                            "L_v Pi = 0 and d(alpha) = d(omega) = 0 disagree"};
    }
    return r;
}

}  // namespace corank

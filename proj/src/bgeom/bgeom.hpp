#pragma once

#include "calculus/forms.hpp"
#include "invariants/invariants.hpp"
#include "poisson/poisson.hpp"

#include <optional>
#include <string>
#include <vector>

namespace corank {

struct BTransversality {
    Verdict verdict;
    MultiVector top_power;          // Π^n
    Expr h;                         // its single coefficient
    std::string critical_locus;     // "<h> = 0", or empty when h has no zeros
    std::vector<Witness> zero_samples;  // sampled points of {h = 0}, value = |dh| there
};

// Chart dimension must be 2n. TRUE symbolically when h is a nonzero constant
// or some ∂h/∂x_k is a nonzero constant; otherwise PROBABLY-TRUE when every
// sampled zero has dh ≠ 0, FALSE with a witness where h = dh = 0, UNKNOWN
// when no zero was found.
BTransversality b_transversality_check(const MultiVector& pi, int n, const ZeroTestOptions& options = {});

struct BExtension {
    Chart form_chart;       // t sampled in (0, 1]
    Chart bivector_chart;   // t sampled in [-1, 1]
    DiffForm omega_tilde;   // (dt/t) ∧ α + ω
    MultiVector pi_tilde;
    Verdict omega_closed;   // dω̃ = 0
    Verdict restriction;    // Π̃ at t = 0 equals Π
    Verdict divisible;      // Π̃^(n+1) vanishes at t = 0
    Expr quotient;          // coefficient of Π̃^(n+1) divided by t
    std::vector<Witness> quotient_samples;
    Verdict quotient_nonzero;
    Verdict round_trip;     // inverting Π̃ gives back ω̃
    Verdict projection;     // Π̃ at t = 1 without ∂t terms equals Π
};

// Throws InvariantsNotVanishing unless dα = 0 and dω = 0.
BExtension extend_to_b(const MultiVector& pi, const AdaptedForms& adapted, const ZeroTestOptions& options = {},
                       int quotient_samples = 10);

// Copies a form/multivector onto a chart whose first coordinates match.
DiffForm lift(const DiffForm& eta, const Chart& chart);
MultiVector lift(const MultiVector& p, const Chart& chart);

struct ProductBPoisson {
    Chart chart;
    std::string angle;
    Expr f;
    MultiVector x;
    MultiVector leaf_structure;   // π
    MultiVector pi;               // f ∂θ ∧ X + π
    JacobiReport jacobi;
    std::vector<double> zeros;            // zeros of f on one period
    std::vector<double> zero_slopes;      // f'(θ) at each zero
    Verdict linear_vanishing;
    Verdict transverse;                   // X transverse to the leaves of π on N
    BTransversality transversality;
    Verdict regular;              // f has no zeros, so Π^(n+1) never vanishes
    // Invariants of N = {θ = const} with the structure π and transversal X.
    std::optional<AdaptedForms> n_forms;
    Verdict n_first_vanishes;    // dα_N = 0
    Verdict n_second_vanishes;   // dω_N = 0
    std::optional<TransversePoissonResult> n_transverse;  // X as transversal of N
};

// X and π must not involve θ or ∂θ; f must depend on θ (and parameters)
// only. Throws NotPoissonField when [X, π] ≠ 0.
ProductBPoisson build_product_bpoisson(const Chart& chart, const std::string& angle, const Expr& f, const MultiVector& x,
                                       const MultiVector& leaf_structure, const ZeroTestOptions& options = {});

// is_zero(φ^* ω_L − ω_L).
Verdict mapping_torus_check(const ChartMap& phi, const DiffForm& omega_leaf, const ZeroTestOptions& options = {});

// Subchart without one coordinate, and the restriction of θ-free objects to it.
Chart drop_coordinate(const Chart& chart, std::size_t index);
MultiVector restrict_to(const MultiVector& p, const Chart& sub, std::size_t dropped);

}  // namespace corank

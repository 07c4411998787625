#pragma once

#include "calculus/forms.hpp"
#include "poisson/poisson.hpp"

#include <optional>
#include <string>
#include <vector>

namespace corank {

// ---------------------------------------------------------------------------
// Obstruction representatives

struct BetaResult {
    DiffForm beta;             // dα = β ∧ α
    Verdict postcondition;     // dα − β ∧ α = 0
    Verdict closed_mod_alpha;  // dβ ∧ α = 0
};

// Throws NotIntegrable (with witness) when dα ∧ α ≠ 0.
BetaResult compute_beta(const DiffForm& alpha, const MultiVector& v, const ZeroTestOptions& options = {});

struct MuResult {
    DiffForm mu;               // dω = μ ∧ α
    Verdict postcondition;
    Verdict closed_mod_alpha;  // dμ ∧ α = 0
    Verdict alpha_closed;      // μ is only meaningful as a class when dα = 0
    std::string warning;
};

// Throws DivisionObstructed when dω ∧ α ≠ 0.
MuResult compute_mu(const DiffForm& omega, const DiffForm& alpha, const MultiVector& v,
                    const ZeroTestOptions& options = {});

enum class CertificateKind { First, Second };

struct Certificate {
    CertificateKind kind = CertificateKind::First;
    Expr f;                        // first kind: d(e^{-f} α) = 0
    std::optional<DiffForm> nu;    // second kind: d(ω − ν ∧ α) = 0
    std::optional<DiffForm> gamma; // optional, μ = dν + γ ∧ α
    std::string origin;            // "supplied", "trivial", "coefficient", "antiderivative"
};

Verdict verify_certificate(const Certificate& cert, const DiffForm& alpha, const DiffForm& omega,
                           const ZeroTestOptions& options = {});

// β ∧ dβ.
DiffForm godbillon_vey(const DiffForm& beta);

// ---------------------------------------------------------------------------
// Modular vector field

struct ModularField {
    MultiVector field;          // components L_{u_{x_i}} Θ / Θ
    Verdict preserves_volume;   // L_v Θ = 0
    Verdict preserves_pi;       // L_v Π = 0
};

// Throws DegenerateVolume (with witness) when Θ vanishes at a sample point.
ModularField modular_field(const MultiVector& pi, const DiffForm& theta, const ZeroTestOptions& options = {});

// The Poisson structure Θ^♯ of a volume form on a 2-dimensional chart, with
// Hamiltonian fields determined by ι_{u_f} Θ = df.
MultiVector standard_structure(const DiffForm& theta);

struct WeinsteinResult {
    MultiVector modular;   // for Θ = α ∧ ω^n
    DiffForm contracted;   // ι_{v_mod} ω
    DiffForm beta;
    Verdict tangent;       // α(v_mod) = 0
    Verdict verdict;       // ι_{v_mod} ω and β agree leafwise
};

WeinsteinResult check_weinstein_identity(const MultiVector& pi, const AdaptedForms& adapted,
                                         const ZeroTestOptions& options = {});

// ---------------------------------------------------------------------------
// Unimodularity

struct CertificateTrial {
    Certificate certificate;
    Verdict beta_test;         // (β − df) ∧ α = 0
    Verdict certificate_test;  // d(e^{-f} α) = 0
    Verdict modular_test;      // modular field of e^{-f} α ∧ ω^n vanishes
    bool agree = false;
};

struct PeriodObstruction {
    std::string coordinate;   // the angle whose loop lies in a leaf
    double period = 0;        // ∮ β along that loop
    Witness base_point;
};

struct UnimodularityResult {
    Verdict verdict;
    DiffForm beta;
    std::vector<CertificateTrial> trials;
    std::optional<Certificate> certificate;  // the one that decided TRUE
    std::optional<PeriodObstruction> obstruction;
    DiffForm godbillon_vey;                  // β ∧ dβ
    std::optional<DiffForm> certified_godbillon_vey;  // for β − df
};

// TRUE when a first-kind certificate (supplied or automatic) verifies; FALSE
// when, on a torus-strict chart, some angle loop lies in a leaf and β has a
// nonzero period along it; UNKNOWN otherwise.
UnimodularityResult unimodularity_check(const MultiVector& pi, const AdaptedForms& adapted,
                                        const std::optional<Expr>& supplied = std::nullopt,
                                        const ZeroTestOptions& options = {});

struct SecondObstructionResult {
    Verdict verdict;  // TRUE when a second-kind certificate verifies, UNKNOWN otherwise
    MuResult mu;
    std::optional<Certificate> certificate;
};

SecondObstructionResult second_obstruction_check(const AdaptedForms& adapted, const std::optional<DiffForm>& supplied_nu,
                                                 const ZeroTestOptions& options = {});

// ---------------------------------------------------------------------------
// Transverse Poisson vector fields

struct BracketWitness {
    std::string f;
    std::string g;   // empty for the one-form identity
    Witness at;
};

struct TransversePoissonResult {
    MultiVector lie_pi;               // L_v Π
    Verdict poisson_field;            // L_v Π = 0
    Verdict alpha_closed;             // dα = 0
    Verdict omega_closed;             // dω = 0
    Verdict forward;                  // ι_{L_v Π}(α ∧ ω^n) = 0
    Verdict alpha_identity;           // dα(v,u_f) = v(α(u_f)) − u_f(α(v)) − α([v,u_f]) for coordinate f
    Verdict omega_identity;           // Cartan expansion of dω(v,u_f,u_g) for coordinate f, g
    Verdict omega_bracket_form;       // dω(v,u_f,u_g) = v({f,g}) − {v(f),g} − {f,v(g)}; holds when v is Poisson
    std::optional<BracketWitness> alpha_witness;  // coordinate f with dα(v, u_f) ≠ 0
    std::optional<BracketWitness> omega_witness;
    Verdict verdict;                  // the equivalence L_v Π = 0 ⟺ dα = dω = 0
};

TransversePoissonResult check_transverse_poisson(const MultiVector& pi, const AdaptedForms& adapted,
                                                 const ZeroTestOptions& options = {});

}  // namespace corank

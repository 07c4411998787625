#pragma once

#include "calculus/forms.hpp"
#include "calculus/linear.hpp"

#include <optional>
#include <vector>

namespace corank {

// {f, g} = Π(df, dg).
Expr poisson_bracket(const MultiVector& pi, const Expr& f, const Expr& g);
// u_f = Π(df, ·), so u_f(g) = {f, g}.
MultiVector hamiltonian_vf(const MultiVector& pi, const Expr& f);

struct JacobiReport {
    MultiVector schouten_square;  // [Π, Π]
    Verdict schouten;             // is [Π, Π] zero
    Verdict jacobiator;           // is {{x_i,x_j},x_k} + cyclic zero for all coordinate triples
    bool paths_agree = false;
    Verdict verdict;              // the common verdict, or Unknown when the paths disagree
};

JacobiReport jacobi_check(const MultiVector& pi, const ZeroTestOptions& options = {});

struct CorankEvidence {
    int n = 0;
    MultiVector top_power;        // Π^n
    Verdict top_power_zero;       // is Π^n identically zero
    int samples = 0;
    int nonvanishing = 0;         // samples where some coefficient of Π^n is nonzero
    std::vector<Witness> evaluations;  // largest |coefficient| of Π^n at each sample
    std::optional<Witness> degenerate_point;
};

CorankEvidence corank_evidence(const MultiVector& pi, int n, const ZeroTestOptions& options = {});

// α(v) = 1, α ∘ Π^♯ = 0; ι_v ω = 0 and Π^♯ ∘ ω^♭ = -(id - v ⊗ α), which makes
// ι_Π(α ∧ ω^n) = n α ∧ ω^(n-1).
struct AdaptedForms {
    DiffForm alpha;
    DiffForm omega;
    MultiVector transversal;
    Verdict postcondition;
};

// Throws NotCorankOne when the chart is even dimensional or Π^n vanishes,
// NotTransversal when v is tangent to the leaves (the system for α has no
// solution).
AdaptedForms adapted_forms(const MultiVector& pi, const MultiVector& v, const ZeroTestOptions& options = {});

// ι_Π(α ∧ ω^n) − n α ∧ ω^(n−1), zero on an adapted triple.
DiffForm adapted_identity_defect(const MultiVector& pi, const DiffForm& alpha, const DiffForm& omega);

// Bivector Π with Π^♯ ∘ ω^♭ = -(id - v ⊗ α) and Π^♯ α = 0, i.e. the Poisson
// structure whose adapted forms are (α, ω) for the transversal v.
MultiVector bivector_from_forms(const DiffForm& alpha, const DiffForm& omega, const MultiVector& v,
                                const ZeroTestOptions& options = {});

// Coefficient matrix of a bivector / 2-form: M[i][j] = component (i, j).
Matrix coefficient_matrix(const MultiVector& p);
Matrix coefficient_matrix(const DiffForm& w);
MultiVector bivector_from_matrix(const Chart& chart, const Matrix& m);
DiffForm twoform_from_matrix(const Chart& chart, const Matrix& m);

// Π = -W^{-1} for a nondegenerate 2-form W (so dx^dy gives ∂x^∂y), and the
// reverse map. Throw Degenerate when the matrix is singular.
MultiVector invert_twoform(const DiffForm& w, const ZeroTestOptions& options = {});
DiffForm invert_bivector(const MultiVector& p, const ZeroTestOptions& options = {});

}  // namespace corank

#pragma once

// Differential forms and multivector fields on a chart, stored over the
// coordinate frame. A blade is a bitmask of coordinate indices; bit i stands
// for dx_i (forms) or ∂_i (multivectors), always taken in increasing order.

#include "expr/chart.hpp"
#include "expr/expr.hpp"
#include "expr/zero_test.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace corank {

using Blade = std::uint32_t;

// Lexicographic on the increasing index lists.
struct BladeOrder {
    bool operator()(Blade a, Blade b) const
    {
        if (a == b) return false;
        const Blade low = (a ^ b) & (~(a ^ b) + 1);
        return (a & low) != 0;
    }
};

int blade_degree(Blade b);
std::vector<std::size_t> blade_indices(Blade b);
// Sign of sorting the written sequence into increasing order; 0 on repeats.
int sort_sign(std::vector<std::size_t>& indices);
Blade blade_of(const std::vector<std::size_t>& sorted_indices);
// Sign of b1 ∧ b2 relative to the blade b1|b2 (0 if they overlap).
int wedge_sign(Blade a, Blade b);

enum class Variance { Covariant, Contravariant };

template <Variance V>
class Alternating {
public:
    using Terms = std::map<Blade, Expr, BladeOrder>;

    Alternating() = default;
    Alternating(Chart chart, int degree);

    static Alternating scalar(Chart chart, Expr value);
    static Alternating basis(Chart chart, const std::vector<std::size_t>& indices, Expr coefficient = Expr(1));
    // Parses text in the graded grammar; every term must have the same degree.
    // A text that is identically zero yields the zero element of `expected`
    // degree when one is given.
    static Alternating parse(std::string_view text, const Chart& chart, std::optional<int> expected = std::nullopt);
    // Degree-1 element from a component vector.
    static Alternating from_components(Chart chart, const std::vector<Expr>& components);

    const Chart& chart() const { return chart_; }
    int degree() const { return degree_; }
    const Terms& terms() const { return terms_; }
    Expr coefficient(Blade b) const;
    // Component along an arbitrary index sequence, with the permutation sign.
    Expr component(std::vector<std::size_t> indices) const;
    std::vector<Expr> components() const;  // degree 1 only
    Expr scalar_value() const;             // degree 0 only

    void add(Blade b, const Expr& c);
    bool is_structurally_zero() const { return terms_.empty(); }

    Alternating map(const std::function<Expr(const Expr&)>& f) const;
    Alternating substitute(const std::map<std::string, Expr, std::less<>>& replacements) const;

    std::string str() const;

    Alternating operator-() const;
    friend Alternating operator+(Alternating a, const Alternating& b) { return a += b; }
    friend Alternating operator-(Alternating a, const Alternating& b) { return a += -b; }
    friend Alternating operator*(const Expr& c, const Alternating& a) { return a.map([&](const Expr& x) { return c * x; }); }
    Alternating& operator+=(const Alternating& b);
    friend bool operator==(const Alternating& a, const Alternating& b)
    {
        return a.degree_ == b.degree_ && a.terms_ == b.terms_;
    }

private:
    Chart chart_;
    int degree_ = 0;
    Terms terms_;
};

using DiffForm = Alternating<Variance::Covariant>;
using MultiVector = Alternating<Variance::Contravariant>;

extern template class Alternating<Variance::Covariant>;
extern template class Alternating<Variance::Contravariant>;

// Charts are compatible when they list the same coordinate and parameter
// names; sampling intervals may differ.
bool same_frame(const Chart& a, const Chart& b);
void require_same_frame(const Chart& a, const Chart& b);

DiffForm wedge(const DiffForm& a, const DiffForm& b);
MultiVector wedge(const MultiVector& a, const MultiVector& b);
DiffForm power(const DiffForm& a, int m);
MultiVector power(const MultiVector& a, int m);

DiffForm ext_deriv(const DiffForm& eta);
DiffForm differential(const Chart& chart, const Expr& f);

// ι_X η with ι_{X∧Y} = ι_Y ∘ ι_X. Throws Error(DegreeUnderflow) if deg X > deg η.
DiffForm interior(const MultiVector& x, const DiffForm& eta);
// The same contraction with the roles of forms and vectors exchanged:
// ι_{df} Π = Π(df, ·).
MultiVector interior(const DiffForm& eta, const MultiVector& x);
// η(X_1, ..., X_k) = ι_{X_k} ... ι_{X_1} η.
Expr evaluate_on(const DiffForm& eta, const std::vector<MultiVector>& vectors);
// v(f) = Σ v^i ∂_i f.
Expr apply_vector(const MultiVector& v, const Expr& f);

MultiVector schouten(const MultiVector& p, const MultiVector& q);
DiffForm lie_derivative(const MultiVector& v, const DiffForm& eta);
MultiVector lie_derivative(const MultiVector& v, const MultiVector& p);

struct ChartMap {
    Chart source;
    Chart target;
    std::vector<Expr> components;  // one per target coordinate, in source variables
};

ChartMap identity_map(const Chart& chart);
DiffForm pullback(const ChartMap& phi, const DiffForm& eta);

// Coefficientwise zero test; a witness is labelled with the failing component.
Verdict is_zero(const DiffForm& eta, const ZeroTestOptions& options = {});
Verdict is_zero(const MultiVector& p, const ZeroTestOptions& options = {});

// ξ with η = ξ ∧ α, computed as ξ = (-1)^(k-1) ι_v η for deg η = k. Throws
// DivisionObstructed when η ∧ α is not zero, BadTransversal when α(v) ≠ 1.
DiffForm exterior_divide(const DiffForm& eta, const DiffForm& alpha, const MultiVector& v,
                         const ZeroTestOptions& options = {});
DiffForm exterior_divide(const DiffForm& eta, const DiffForm& alpha, const ZeroTestOptions& options = {});
// (1/α_j) ∂_j for the first coordinate j whose α-coefficient is certainly nonzero.
MultiVector default_transversal(const DiffForm& alpha, const ZeroTestOptions& options = {});

Verdict leafwise_equal(const DiffForm& a, const DiffForm& b, const DiffForm& alpha, const ZeroTestOptions& options = {});

}  // namespace corank

#include "expr/parser.hpp"
#include "generators.hpp"
#include "poisson/poisson.hpp"

#include <gtest/gtest.h>

using namespace corank;
using corank::testing::Gen;
using corank::testing::line_chart;

namespace {

DiffForm form(const std::string& text, const Chart& c) { return DiffForm::parse(text, c); }
MultiVector vec(const std::string& text, const Chart& c) { return MultiVector::parse(text, c); }

Chart torus()
{
    return Chart({angle_coordinate("th1"), angle_coordinate("th2"), angle_coordinate("th3")},
                 {{"a", 0.5, 2}, {"b", 0.5, 2}}, true);
}

const char* kTorusAlpha = "a/(a^2 + b^2 + 1) dth1 + b/(a^2 + b^2 + 1) dth2 - 1/(a^2 + b^2 + 1) dth3";
const char* kTorusOmega = "dth1^dth2 + b dth1^dth3 - a dth2^dth3";
const char* kTorusField = "a ∂th1 + b ∂th2 - ∂th3";

// Σ_l Π^{lk} ∂_l Π^{ij} + cyclic, straight from the components.
Expr jacobiator(const MultiVector& pi, std::size_t i, std::size_t j, std::size_t k)
{
    const Chart& c = pi.chart();
    auto term = [&](std::size_t a, std::size_t b, std::size_t d) {
        Expr s(0);
        for (std::size_t l = 0; l < c.dim(); ++l) s += pi.component({l, d}) * pi.component({a, b}).derive(c.name(l));
        return s;
    };
    return term(i, j, k) + term(j, k, i) + term(k, i, j);
}

Truth jacobi_oracle(const MultiVector& pi)
{
    const std::size_t n = pi.chart().dim();
    Truth worst = Truth::True;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                const Verdict v = is_zero(jacobiator(pi, i, j, k), pi.chart());
                if (v.is_false()) return Truth::False;
                if (v.truth == Truth::ProbablyTrue) worst = Truth::ProbablyTrue;
            }
    return worst;
}

}  // namespace

TEST(Jacobi, Examples)
{
    const Chart c2 = line_chart(2);
    EXPECT_EQ(jacobi_check(vec("∂x^∂y", c2)).verdict.truth, Truth::True);
    EXPECT_EQ(jacobi_check(vec("y ∂x^∂y", c2)).verdict.truth, Truth::True);

    const Chart c3 = line_chart(3);
    const MultiVector pi = vec("z ∂x^∂y + x ∂y^∂z", c3);
    const JacobiReport r = jacobi_check(pi);
    EXPECT_TRUE(r.paths_agree);
    EXPECT_EQ(r.verdict.truth, jacobi_oracle(pi));

    const JacobiReport bad = jacobi_check(vec("∂x^∂y + x ∂x^∂z", c3));
    EXPECT_TRUE(bad.paths_agree);
    ASSERT_TRUE(bad.verdict.is_false());
    EXPECT_TRUE(bad.verdict.witness.has_value());
    EXPECT_EQ(jacobi_oracle(vec("∂x^∂y + x ∂x^∂z", c3)), Truth::False);
}

TEST(Jacobi, TorusStructureIsPoisson)
{
    const Chart t = torus();
    const MultiVector pi = bivector_from_forms(form(kTorusAlpha, t), form(kTorusOmega, t), vec(kTorusField, t));
    const JacobiReport r = jacobi_check(pi);
    EXPECT_TRUE(r.paths_agree);
    EXPECT_EQ(r.verdict.truth, Truth::True);
}

class JacobiDualPath : public ::testing::TestWithParam<int> {};

TEST_P(JacobiDualPath, AgreesWithCoordinateOracle)
{
    Gen g(700 + GetParam());
    const Chart c = line_chart(static_cast<std::size_t>(3 + GetParam() % 2));
    // Odd seeds draw f ∂x∧∂y, which is always Poisson.
    const MultiVector pi = GetParam() % 2 == 1 ? MultiVector::basis(c, {0, 1}, g.polynomial(c)) : g.multivector(c, 2);
    const JacobiReport r = jacobi_check(pi);
    EXPECT_TRUE(r.paths_agree) << pi.str();
    EXPECT_EQ(r.verdict.truth, jacobi_oracle(pi)) << pi.str();
}

INSTANTIATE_TEST_SUITE_P(Seeds, JacobiDualPath, ::testing::Range(0, 60));

TEST(Hamiltonian, Examples)
{
    const Chart c = line_chart(2);
    EXPECT_TRUE(hamiltonian_vf(vec("y ∂x^∂y", c), Expr(3)).is_structurally_zero());
    EXPECT_EQ(hamiltonian_vf(vec("y ∂x^∂y", c), Expr::variable("x")), vec("y ∂y", c));
    const MultiVector u = hamiltonian_vf(vec("∂x^∂y", c), Expr::variable("y"));
    EXPECT_EQ(u, vec("-∂x", c));
    EXPECT_TRUE(is_zero(lie_derivative(u, form("dx^dy", c))).is_true());
}

TEST(Hamiltonian, BracketConvention)
{
    Gen g(17);
    const Chart c = line_chart(3);
    const MultiVector pi = vec("z ∂x^∂y + y^2 ∂y^∂z", c);
    for (int i = 0; i < 10; ++i) {
        const Expr f = g.polynomial(c, 2, 3);
        const Expr h = g.polynomial(c, 2, 3);
        EXPECT_EQ(apply_vector(hamiltonian_vf(pi, f), h), poisson_bracket(pi, f, h));
        EXPECT_EQ(poisson_bracket(pi, f, h), -poisson_bracket(pi, h, f));
    }
}

TEST(Corank, Examples)
{
    const Chart t = torus();
    const MultiVector pi = bivector_from_forms(form(kTorusAlpha, t), form(kTorusOmega, t), vec(kTorusField, t));
    const CorankEvidence e = corank_evidence(pi, 1);
    EXPECT_FALSE(e.top_power_zero.holds());
    EXPECT_GT(e.samples, 0);
    EXPECT_EQ(e.nonvanishing, e.samples);
    EXPECT_FALSE(e.degenerate_point.has_value());

    const Chart c = line_chart(2);
    const CorankEvidence affine = corank_evidence(vec("y ∂x^∂y", c), 1);
    EXPECT_EQ(affine.top_power, vec("y ∂x^∂y", c));
    EXPECT_FALSE(affine.top_power_zero.holds());

    const CorankEvidence zero = corank_evidence(MultiVector(c, 2), 1);
    EXPECT_TRUE(zero.top_power_zero.is_true());
    EXPECT_EQ(zero.nonvanishing, 0);
}

TEST(AdaptedForms, FlatCase)
{
    const Chart c = line_chart(3);
    const AdaptedForms f = adapted_forms(vec("∂x^∂y", c), vec("∂z", c));
    EXPECT_EQ(f.alpha, form("dz", c));
    EXPECT_EQ(f.omega, form("dx^dy", c));
    EXPECT_TRUE(f.postcondition.holds());
    EXPECT_TRUE(is_zero(adapted_identity_defect(vec("∂x^∂y", c), f.alpha, f.omega)).is_true());
}

TEST(AdaptedForms, TorusRecoversTheGivenForms)
{
    const Chart t = torus();
    const DiffForm alpha = form(kTorusAlpha, t);
    const DiffForm omega = form(kTorusOmega, t);
    const MultiVector v = vec(kTorusField, t);
    const MultiVector pi = bivector_from_forms(alpha, omega, v);
    const AdaptedForms f = adapted_forms(pi, v);
    EXPECT_TRUE(is_zero(f.alpha - alpha).holds());
    EXPECT_TRUE(leafwise_equal(f.omega, omega, alpha).holds());
    EXPECT_TRUE(f.postcondition.holds());
}

TEST(AdaptedForms, ProductFieldDirection)
{
    // π = ∂x∧∂y on (x, y, z) with X = ∂z; α must annihilate the leaves.
    const Chart c = line_chart(3);
    const MultiVector pi = vec("∂x^∂y", c);
    const AdaptedForms f = adapted_forms(pi, vec("∂z", c));
    EXPECT_TRUE(is_zero(interior(pi, wedge(f.alpha, form("dx", c)))).is_true());
    EXPECT_TRUE(is_zero(interior(hamiltonian_vf(pi, Expr::variable("x")), f.alpha)).is_true());
}

TEST(AdaptedForms, Errors)
{
    const Chart c2 = line_chart(2);
    try {
        adapted_forms(vec("∂x^∂y", c2), vec("∂x", c2));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotCorankOne);
    }
    const Chart c3 = line_chart(3);
    try {
        adapted_forms(vec("∂x^∂y", c3), vec("∂x", c3));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotTransversal);
    }
}

class AdaptedRoundTrip : public ::testing::TestWithParam<int> {};

TEST_P(AdaptedRoundTrip, FormsToBivectorAndBack)
{
    // α = dz + p dx + q dy with v = ∂z; ω is made horizontal (ι_v ω = 0).
    Gen g(800 + GetParam());
    const Chart c = line_chart(3);
    const DiffForm alpha = form("dz", c) + DiffForm::basis(c, {0}, g.polynomial(c)) + DiffForm::basis(c, {1}, g.polynomial(c));
    const MultiVector v = vec("∂z", c);
    DiffForm omega = form("dx^dy", c) + wedge(DiffForm::basis(c, {0}, g.polynomial(c)), DiffForm::basis(c, {1}));
    omega = omega - wedge(alpha, interior(v, omega));
    const MultiVector pi = bivector_from_forms(alpha, omega, v);
    const AdaptedForms back = adapted_forms(pi, v);
    EXPECT_TRUE(is_zero(back.alpha - alpha).holds());
    EXPECT_TRUE(leafwise_equal(back.omega, omega, alpha).holds());
    EXPECT_TRUE(is_zero(adapted_identity_defect(pi, back.alpha, back.omega)).holds());
}

INSTANTIATE_TEST_SUITE_P(Seeds, AdaptedRoundTrip, ::testing::Range(0, 10));

TEST(Inversion, Examples)
{
    const Chart c = line_chart(2);
    EXPECT_EQ(invert_twoform(form("dx^dy", c)), vec("∂x^∂y", c));
    EXPECT_EQ(invert_twoform(form("(1 + x^2) dx^dy", c)), vec("1/(1 + x^2) ∂x^∂y", c));
    EXPECT_EQ(invert_bivector(vec("∂x^∂y", c)), form("dx^dy", c));
    try {
        invert_twoform(form("dx^dy", line_chart(3)));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Degenerate);
    }
}

TEST(Inversion, RoundTripOnSymplecticFourForms)
{
    Gen g(21);
    const Chart c = line_chart(4);
    for (int i = 0; i < 5; ++i) {
        DiffForm w = form("dx^dy + dz^dw", c);
        w += DiffForm::basis(c, {0, 2}, g.polynomial(c, 1, 2));
        const MultiVector p = invert_twoform(w);
        EXPECT_TRUE(is_zero(invert_bivector(p) - w).holds());
    }
}

TEST(Hamiltonian, LeibnizInTheFunction)
{
    Gen g(31);
    const Chart c = line_chart(3);
    for (int i = 0; i < 10; ++i) {
        const MultiVector pi = g.multivector(c, 2);
        const Expr f = g.tree(c, 2);
        const Expr h = g.polynomial(c);
        const MultiVector lhs = hamiltonian_vf(pi, f * h);
        const MultiVector rhs = f * hamiltonian_vf(pi, h) + h * hamiltonian_vf(pi, f);
        EXPECT_TRUE(is_zero(lhs - rhs).holds());
    }
}

TEST(Inversion, RoundTripInDimensionTwo)
{
    Gen g(23);
    const Chart c = line_chart(2);
    for (int i = 0; i < 10; ++i) {
        const DiffForm w = DiffForm::basis(c, {0, 1}, Expr(2) + g.polynomial(c).pow(2));
        EXPECT_TRUE(is_zero(invert_bivector(invert_twoform(w)) - w).is_true());
    }
}

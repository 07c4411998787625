#include "calculus/forms.hpp"
#include "expr/parser.hpp"
#include "generators.hpp"

#include <gtest/gtest.h>

using namespace corank;
using corank::testing::Gen;
using corank::testing::line_chart;

namespace {

DiffForm form(const std::string& text, const Chart& c, std::optional<int> deg = std::nullopt)
{
    return DiffForm::parse(text, c, deg);
}

MultiVector vec(const std::string& text, const Chart& c, std::optional<int> deg = std::nullopt)
{
    return MultiVector::parse(text, c, deg);
}

Chart torus()
{
    return Chart({angle_coordinate("th1"), angle_coordinate("th2"), angle_coordinate("th3")},
                 {{"a", 0.5, 2}, {"b", 0.5, 2}}, true);
}

const char* kTorusAlpha = "a/(a^2 + b^2 + 1) dth1 + b/(a^2 + b^2 + 1) dth2 - 1/(a^2 + b^2 + 1) dth3";
const char* kTorusOmega = "dth1^dth2 + b dth1^dth3 - a dth2^dth3";

int sign(int p) { return p % 2 == 0 ? 1 : -1; }

}  // namespace

TEST(Wedge, Examples)
{
    const Chart c = line_chart(2);
    EXPECT_TRUE(wedge(form("dx", c), form("dx", c)).is_structurally_zero());
    EXPECT_EQ(wedge(form("x dy", c), form("y dx", c)), form("-x*y dx^dy", c));

    const Chart t = torus();
    const DiffForm volume = wedge(form(kTorusAlpha, t), form(kTorusOmega, t));
    ASSERT_EQ(volume.terms().size(), 1u);
    // α∧ω = (a² + b² + 1)/(a² + b² + 1) dθ₁∧dθ₂∧dθ₃ up to sign: nowhere zero.
    EXPECT_EQ(volume.terms().begin()->second.as_rational(), std::optional<Rational>(Rational(-1)));
}

TEST(ExtDeriv, Examples)
{
    const Chart c = line_chart(3);
    EXPECT_TRUE(ext_deriv(form("dx", c)).is_structurally_zero());
    EXPECT_EQ(ext_deriv(form("exp(x) dz", c)), form("exp(x) dx^dz", c));
    const Chart t = torus();
    EXPECT_EQ(is_zero(ext_deriv(form(kTorusAlpha, t))).truth, Truth::True);
    EXPECT_EQ(is_zero(ext_deriv(form(kTorusOmega, t))).truth, Truth::True);
}

TEST(Interior, Examples)
{
    const Chart c = line_chart(3);
    EXPECT_EQ(interior(vec("∂z", c), form("dz", c)).scalar_value(), Expr(1));
    EXPECT_EQ(interior(vec("∂x^∂y", c), form("dz^dx^dy", c)), form("dz", c));
    EXPECT_THROW(interior(vec("∂x^∂y", c), form("dz", c)), Error);

    const Chart t = torus();
    const DiffForm alpha = form(kTorusAlpha, t);
    const MultiVector v = vec("a ∂th1 + b ∂th2 - ∂th3", t);
    EXPECT_EQ(interior(v, alpha).scalar_value(), Expr(1));
    EXPECT_EQ(is_zero(interior(v, form(kTorusOmega, t))).truth, Truth::True);
}

TEST(Interior, ContractionOrderConvention)
{
    // ι_{X∧Y} = ι_Y ∘ ι_X, so ι_{∂x∧∂y}(dx∧dy) = ι_∂y(dy) = 1.
    const Chart c = line_chart(2);
    EXPECT_EQ(interior(vec("∂x^∂y", c), form("dx^dy", c)).scalar_value(), Expr(1));
    EXPECT_EQ(evaluate_on(form("dx^dy", c), {vec("∂x", c), vec("∂y", c)}), Expr(1));
}

TEST(LieDerivative, Examples)
{
    const Chart c = line_chart(3);
    EXPECT_TRUE(is_zero(lie_derivative(vec("∂x", c), form("dx^dy", c))).is_true());
    EXPECT_EQ(lie_derivative(vec("y ∂y", c), form("dx^dy", c)), form("dx^dy", c));
    // Closed α with α(v) = 1 is invariant.
    const DiffForm alpha = form("dz + dx", c);
    const MultiVector v = vec("x^2 ∂y + ∂z", c);
    EXPECT_TRUE(is_zero(lie_derivative(v, alpha)).is_true());
}

TEST(Pullback, Examples)
{
    const Chart c = line_chart(2);
    const DiffForm w = form("x dx^dy + y^2 dy^dx", c);
    EXPECT_EQ(pullback(identity_map(c), w), w);

    ChartMap shear{c, c, {parse_scalar("x + sin(y)", c), Expr::variable("y")}};
    EXPECT_TRUE(is_zero(pullback(shear, form("dx^dy", c)) - form("dx^dy", c)).holds());

    // α restricted to the leaf θ₃ = aθ₁ + bθ₂ + k, parametrized by (s1, s2).
    const Chart t = torus();
    const Chart leaf({line_coordinate("s1"), line_coordinate("s2")}, {{"a", 0.5, 2}, {"b", 0.5, 2}, {"k"}});
    ChartMap inclusion{leaf, t,
                       {Expr::variable("s1"), Expr::variable("s2"),
                        parse_scalar("a*s1 + b*s2 + k", leaf)}};
    EXPECT_EQ(is_zero(pullback(inclusion, form(kTorusAlpha, t))).truth, Truth::True);
}

TEST(Schouten, Examples)
{
    const Chart c = line_chart(2);
    EXPECT_TRUE(schouten(vec("∂x", c), vec("∂y", c)).is_structurally_zero());
    const MultiVector pi = vec("y ∂x^∂y", c);
    EXPECT_TRUE(is_zero(schouten(pi, pi)).is_true());
}

TEST(Schouten, VectorFieldsGiveTheCommutator)
{
    Gen g(11);
    const Chart c = line_chart(3);
    for (int i = 0; i < 20; ++i) {
        const MultiVector x = g.multivector(c, 1);
        const MultiVector y = g.multivector(c, 1);
        const Expr f = g.polynomial(c, 3, 4);
        const Expr lhs = apply_vector(schouten(x, y), f);
        const Expr rhs = apply_vector(x, apply_vector(y, f)) - apply_vector(y, apply_vector(x, f));
        EXPECT_EQ(lhs, rhs);
    }
}

TEST(Power, Examples)
{
    const Chart c = line_chart(4);
    const DiffForm w = form("dx^dy + dz^dw", c);
    const DiffForm sq = power(w, 2);
    EXPECT_EQ(sq, wedge(w, w));
    EXPECT_EQ(sq, form("2 dx^dy^dz^dw", c));
    EXPECT_TRUE(power(w, 3).is_structurally_zero());
    EXPECT_TRUE(power(form("x dy + dz", c), 2).is_structurally_zero());

    const Chart p = line_chart(2);
    EXPECT_EQ(power(vec("y ∂x^∂y", p), 1), vec("y ∂x^∂y", p));
}

TEST(ExteriorDivide, Examples)
{
    const Chart c = line_chart(3);
    const DiffForm alpha = form("exp(x) dz", c);
    const MultiVector v = vec("exp(-x) ∂z", c);
    EXPECT_TRUE(exterior_divide(DiffForm(c, 2), alpha, v).is_structurally_zero());
    EXPECT_EQ(exterior_divide(ext_deriv(alpha), alpha, v), form("dx", c));
    EXPECT_TRUE(exterior_divide(ext_deriv(form("dz + y dy", c)), form("dz + y dy", c), vec("∂z", c)).is_structurally_zero());
}

TEST(ExteriorDivide, Errors)
{
    const Chart c = line_chart(3);
    try {
        exterior_divide(form("dx^dy", c), form("dz", c), vec("∂z", c));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DivisionObstructed);
    }
    try {
        exterior_divide(form("dx^dz", c), form("dz", c), vec("2 ∂z", c));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::BadTransversal);
    }
}

TEST(LeafwiseEqual, Examples)
{
    Gen g(5);
    const Chart c = line_chart(3);
    const DiffForm alpha = form("dz + x dy", c);
    const DiffForm omega = form("dx^dy", c);
    EXPECT_TRUE(leafwise_equal(omega, omega, alpha).is_true());
    for (int i = 0; i < 5; ++i) {
        const DiffForm xi = g.form(c, 1);
        EXPECT_TRUE(leafwise_equal(omega, omega + wedge(alpha, xi), alpha).holds());
    }
    EXPECT_TRUE(leafwise_equal(omega, form("2 dx^dy", c), alpha).is_false());
}

// ---------------------------------------------------------------------------
// Kernel laws on random polynomial data

class KernelLaws : public ::testing::TestWithParam<int> {
protected:
    Gen gen{static_cast<std::uint64_t>(100 + GetParam())};
    Chart chart = line_chart(static_cast<std::size_t>(2 + GetParam() % 3));
    int dim() const { return static_cast<int>(chart.dim()); }
};

TEST_P(KernelLaws, DSquaredVanishes)
{
    for (int k = 0; k < dim() - 1; ++k) {
        const DiffForm eta = gen.form(chart, k, GetParam() % 2 == 0);
        EXPECT_TRUE(is_zero(ext_deriv(ext_deriv(eta))).holds()) << eta.str();
    }
}

TEST_P(KernelLaws, CartanFormula)
{
    const MultiVector x = gen.multivector(chart, 1);
    for (int k = 1; k <= dim(); ++k) {
        const DiffForm eta = gen.form(chart, k);
        const DiffForm rhs = ext_deriv(interior(x, eta)) + interior(x, ext_deriv(eta));
        EXPECT_TRUE(is_zero(lie_derivative(x, eta) - rhs).is_true()) << eta.str();
    }
}

TEST_P(KernelLaws, WedgeIsGradedCommutative)
{
    const int p = gen.integer(0, dim());
    const int q = gen.integer(0, dim() - p);
    const DiffForm a = gen.form(chart, p);
    const DiffForm b = gen.form(chart, q);
    EXPECT_EQ(wedge(a, b), sign(p * q) * wedge(b, a));
}

TEST_P(KernelLaws, DIsAnAntiderivation)
{
    const int p = gen.integer(0, dim() - 1);
    const int q = gen.integer(0, dim() - 1 - p);
    const DiffForm a = gen.form(chart, p);
    const DiffForm b = gen.form(chart, q);
    const DiffForm rhs = wedge(ext_deriv(a), b) + Expr(sign(p)) * wedge(a, ext_deriv(b));
    EXPECT_TRUE(is_zero(ext_deriv(wedge(a, b)) - rhs).is_true());
}

TEST_P(KernelLaws, SchoutenGradedSymmetry)
{
    const int p = gen.integer(1, std::min(dim(), 3));
    const int q = gen.integer(1, std::min(dim(), 3));
    const MultiVector a = gen.multivector(chart, p);
    const MultiVector b = gen.multivector(chart, q);
    const MultiVector rhs = Expr(-sign((p - 1) * (q - 1))) * schouten(b, a);
    EXPECT_TRUE(is_zero(schouten(a, b) - rhs).is_true()) << a.str() << " ; " << b.str();
}

TEST_P(KernelLaws, SchoutenLeibniz)
{
    const int p = gen.integer(1, 2);
    const int q = gen.integer(0, 2);
    const int r = gen.integer(0, std::max(0, std::min(2, dim() - q)));
    const MultiVector a = gen.multivector(chart, p);
    const MultiVector b = gen.multivector(chart, q);
    const MultiVector c = gen.multivector(chart, r);
    const MultiVector rhs = wedge(schouten(a, b), c) + Expr(sign((p - 1) * q)) * wedge(b, schouten(a, c));
    EXPECT_TRUE(is_zero(schouten(a, wedge(b, c)) - rhs).is_true());
}

TEST_P(KernelLaws, LieOfMultivectorIsSchouten)
{
    const MultiVector x = gen.multivector(chart, 1);
    const MultiVector p = gen.multivector(chart, 2);
    EXPECT_TRUE(is_zero(lie_derivative(x, p) - schouten(x, p)).is_true());
}

TEST_P(KernelLaws, PullbackCommutesWithD)
{
    std::vector<Expr> comps;
    for (std::size_t i = 0; i < chart.dim(); ++i) comps.push_back(gen.polynomial(chart));
    const ChartMap phi{chart, chart, comps};
    for (int k = 0; k < dim(); ++k) {
        const DiffForm eta = gen.form(chart, k);
        EXPECT_TRUE(is_zero(pullback(phi, ext_deriv(eta)) - ext_deriv(pullback(phi, eta))).is_true());
    }
}

TEST_P(KernelLaws, ExteriorDivideRoundTrip)
{
    // α = dx_last + (polynomial) dx_0 with transversal ∂_last.
    const std::size_t last = chart.dim() - 1;
    DiffForm alpha = DiffForm::basis(chart, {last});
    alpha += DiffForm::basis(chart, {0}, gen.polynomial(chart));
    const MultiVector v = MultiVector::basis(chart, {last});
    for (int k = 0; k < dim() - 1; ++k) {
        const DiffForm xi = gen.form(chart, k);
        const DiffForm eta = wedge(xi, alpha);
        const DiffForm back = exterior_divide(eta, alpha, v);
        EXPECT_TRUE(is_zero(wedge(back, alpha) - eta).is_true());
        EXPECT_TRUE(leafwise_equal(back, xi, alpha).holds());
    }
}

INSTANTIATE_TEST_SUITE_P(Seeds, KernelLaws, ::testing::Range(0, 24));

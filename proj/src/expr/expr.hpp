#pragma once

// Exact scalar expressions. Every Expr is kept in a normal form: a quotient of
// two Laurent polynomials with rational coefficients over "kernels"
// (variables and applications of exp/log/sin/cos to normalized arguments).
// The denominator is a primitive integer polynomial, free of monomial factors,
// with positive leading coefficient and no common factor with the numerator.
// On the purely rational fragment that normal form is canonical, so a zero
// numerator decides zero-ness exactly; transcendental relations between
// kernels (sin^2 + cos^2 = 1) are left to the randomized tester.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace corank {

using Rational = mpq_class;

class Expr;

enum class KernelKind : std::uint8_t { Variable, Exp, Log, Sin, Cos };

const char* kernel_function_name(KernelKind kind);

class Kernel {
public:
    static Kernel variable(const std::string& name);
    // No simplification is applied here; use Expr::exp and friends.
    static Kernel function(KernelKind kind, const Expr& argument);

    KernelKind kind() const;
    bool is_variable() const { return kind() == KernelKind::Variable; }
    const std::string& name() const;
    const Expr& argument() const;
    const std::string& key() const;
    bool depends_on(std::string_view var) const;
    const std::vector<std::string>& variables() const;

    friend bool operator==(const Kernel& a, const Kernel& b) { return a.key() == b.key(); }
    friend bool operator!=(const Kernel& a, const Kernel& b) { return !(a == b); }
    // Variables (by name) precede function kernels (by canonical text).
    friend bool operator<(const Kernel& a, const Kernel& b);

private:
    struct Data;
    explicit Kernel(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
    std::shared_ptr<const Data> data_;
};

struct Monomial {
    // Sorted by kernel, exponents nonzero. At most one exp kernel, with exponent 1.
    std::vector<std::pair<Kernel, int>> factors;

    int total_degree() const;
    bool empty() const { return factors.empty(); }
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.factors == b.factors; }
};

Monomial monomial_product(const Monomial& a, const Monomial& b);
Monomial monomial_inverse(const Monomial& m);
Monomial make_monomial(std::vector<std::pair<Kernel, int>> factors);

// Higher total degree first, then lexicographic on (kernel, exponent).
struct MonomialOrder {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

using Poly = std::map<Monomial, Rational, MonomialOrder>;

using Assignment = std::map<std::string, double, std::less<>>;

class Expr {
public:
    Expr();
    Expr(int value);  // NOLINT(google-explicit-constructor): literal constants read naturally
    explicit Expr(const Rational& value);

    static Expr variable(const std::string& name);
    static Expr from_parts(Poly numerator, Poly denominator);
    static Expr from_poly(Poly numerator);

    static Expr exp(const Expr& arg);
    static Expr log(const Expr& arg);
    static Expr sin(const Expr& arg);
    static Expr cos(const Expr& arg);
    static Expr apply(KernelKind kind, const Expr& arg);

    Expr pow(int exponent) const;
    Expr derive(std::string_view var) const;
    Expr substitute(const std::map<std::string, Expr, std::less<>>& replacements) const;

    // Throws Error(Singular) on a pole, a log of a nonpositive number or an
    // overflow; Error(UnknownIdentifier) when a variable is unassigned.
    double evaluate(const Assignment& point) const;

    struct Parts {
        double numerator = 0;
        double numerator_scale = 0;  // sum of absolute values of numerator terms
        double denominator = 1;
    };
    Parts evaluate_parts(const Assignment& point) const;

    bool is_zero() const;
    bool is_one() const;
    std::optional<Rational> as_rational() const;
    bool depends_on(std::string_view var) const;
    std::set<std::string> variables() const;
    // True when no exp/log/sin/cos kernel occurs.
    bool is_rational_function() const;
    bool is_polynomial() const;
    std::size_t term_count() const;

    const Poly& numerator() const;
    const Poly& denominator() const;

    const std::string& str() const;

    friend Expr operator+(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a, const Expr& b);
    friend Expr operator*(const Expr& a, const Expr& b);
    friend Expr operator/(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a);
    Expr& operator+=(const Expr& b) { return *this = *this + b; }
    Expr& operator-=(const Expr& b) { return *this = *this - b; }
    Expr& operator*=(const Expr& b) { return *this = *this * b; }

    friend bool operator==(const Expr& a, const Expr& b);
    friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

std::string rational_to_string(const Rational& q);

}  // namespace corank

#include "expr/expr.hpp"

#include "common/error.hpp"
#include "expr/poly_gcd.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

namespace corank {

// ---------------------------------------------------------------------------
// Kernels

struct Kernel::Data {
    KernelKind kind = KernelKind::Variable;
    std::string name;
    std::optional<Expr> argument;
    std::string key;
    std::vector<std::string> variables;
};

const char* kernel_function_name(KernelKind kind)
{
    switch (kind) {
    case KernelKind::Variable: return "";
    case KernelKind::Exp: return "exp";
    case KernelKind::Log: return "log";
    case KernelKind::Sin: return "sin";
    case KernelKind::Cos: return "cos";
    }
    return "";
}

Kernel Kernel::variable(const std::string& name)
{
    auto d = std::make_shared<Data>();
    d->kind = KernelKind::Variable;
    d->name = name;
    d->key = name;
    d->variables = {name};
    return Kernel(std::move(d));
}

Kernel Kernel::function(KernelKind kind, const Expr& argument)
{
    if (kind == KernelKind::Variable) throw Error(ErrorCode::Internal, "variable kernel built as a function");
    auto d = std::make_shared<Data>();
    d->kind = kind;
    d->name = kernel_function_name(kind);
    d->argument = argument;
    d->key = d->name + "(" + argument.str() + ")";
    const auto vars = argument.variables();
    d->variables.assign(vars.begin(), vars.end());
    return Kernel(std::move(d));
}

KernelKind Kernel::kind() const { return data_->kind; }
const std::string& Kernel::name() const { return data_->name; }
const std::string& Kernel::key() const { return data_->key; }
const std::vector<std::string>& Kernel::variables() const { return data_->variables; }

const Expr& Kernel::argument() const
{
    if (!data_->argument) throw Error(ErrorCode::Internal, "variable kernel has no argument");
    return *data_->argument;
}

bool Kernel::depends_on(std::string_view var) const
{
    return std::binary_search(data_->variables.begin(), data_->variables.end(), var);
}

bool operator<(const Kernel& a, const Kernel& b)
{
    const bool fa = !a.is_variable();
    const bool fb = !b.is_variable();
    if (fa != fb) return fb;
    return a.key() < b.key();
}

// ---------------------------------------------------------------------------
// Monomials

int Monomial::total_degree() const
{
    int d = 0;
    for (const auto& f : factors) d += f.second;
    return d;
}

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const
{
    const int da = a.total_degree();
    const int db = b.total_degree();
    if (da != db) return da > db;
    const std::size_t n = std::min(a.factors.size(), b.factors.size());
    for (std::size_t i = 0; i < n; ++i) {
        const auto& [ka, ea] = a.factors[i];
        const auto& [kb, eb] = b.factors[i];
        if (ka != kb) return ka < kb;
        if (ea != eb) return ea > eb;
    }
    return a.factors.size() > b.factors.size();
}

namespace {

// Collapses every exp factor of a sorted, combined factor list into a single
// exp(sum of arguments) with exponent 1.
void merge_exponentials(std::vector<std::pair<Kernel, int>>& factors)
{
    std::size_t count = 0;
    bool plain = true;
    for (const auto& [k, e] : factors) {
        if (k.kind() == KernelKind::Exp) {
            ++count;
            plain = plain && e == 1;
        }
    }
    if (count == 0 || (count == 1 && plain)) return;

    Expr argument;
    std::vector<std::pair<Kernel, int>> rest;
    rest.reserve(factors.size());
    for (auto& f : factors) {
        if (f.first.kind() == KernelKind::Exp) {
            argument += Expr(f.second) * f.first.argument();
        } else {
            rest.push_back(std::move(f));
        }
    }
    if (!argument.is_zero()) {
        Kernel merged = Kernel::function(KernelKind::Exp, argument);
        auto pos = std::lower_bound(rest.begin(), rest.end(), merged,
                                    [](const auto& f, const Kernel& k) { return f.first < k; });
        rest.insert(pos, {std::move(merged), 1});
    }
    factors = std::move(rest);
}

}  // namespace

Monomial make_monomial(std::vector<std::pair<Kernel, int>> factors)
{
    std::sort(factors.begin(), factors.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<Kernel, int>> combined;
    combined.reserve(factors.size());
    for (auto& f : factors) {
        if (!combined.empty() && combined.back().first == f.first) {
            combined.back().second += f.second;
        } else {
            combined.push_back(std::move(f));
        }
    }
    std::erase_if(combined, [](const auto& f) { return f.second == 0; });
    merge_exponentials(combined);
    return Monomial{std::move(combined)};
}

Monomial monomial_product(const Monomial& a, const Monomial& b)
{
    if (a.empty()) return b;
    if (b.empty()) return a;
    std::vector<std::pair<Kernel, int>> out;
    out.reserve(a.factors.size() + b.factors.size());
    auto ia = a.factors.begin();
    auto ib = b.factors.begin();
    while (ia != a.factors.end() || ib != b.factors.end()) {
        if (ib == b.factors.end() || (ia != a.factors.end() && ia->first < ib->first)) {
            out.push_back(*ia++);
        } else if (ia == a.factors.end() || ib->first < ia->first) {
            out.push_back(*ib++);
        } else {
            const int e = ia->second + ib->second;
            if (e != 0) out.emplace_back(ia->first, e);
            ++ia;
            ++ib;
        }
    }
    merge_exponentials(out);
    return Monomial{std::move(out)};
}

Monomial monomial_inverse(const Monomial& m)
{
    std::vector<std::pair<Kernel, int>> out = m.factors;
    for (auto& f : out) f.second = -f.second;
    merge_exponentials(out);
    return Monomial{std::move(out)};
}

// ---------------------------------------------------------------------------
// Polynomial helpers

namespace {

void add_term(Poly& p, const Monomial& m, const Rational& c)
{
    if (c == 0) return;
    auto [it, inserted] = p.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) p.erase(it);
    }
}

Poly poly_constant(const Rational& c)
{
    Poly p;
    if (c != 0) p.emplace(Monomial{}, c);
    return p;
}

Poly poly_add(const Poly& a, const Poly& b, int sign)
{
    Poly r = a;
    for (const auto& [m, c] : b) add_term(r, m, sign > 0 ? Rational(c) : Rational(-c));
    return r;
}

Poly poly_mul(const Poly& a, const Poly& b)
{
    Poly r;
    for (const auto& [ma, ca] : a) {
        for (const auto& [mb, cb] : b) add_term(r, monomial_product(ma, mb), ca * cb);
    }
    return r;
}

Poly poly_scale(const Poly& a, const Rational& q)
{
    Poly r;
    if (q == 0) return r;
    for (const auto& [m, c] : a) r.emplace(m, c * q);
    return r;
}

Poly poly_mul_monomial(const Poly& a, const Monomial& m)
{
    if (m.empty()) return a;
    Poly r;
    for (const auto& [ma, c] : a) add_term(r, monomial_product(ma, m), c);
    return r;
}

bool poly_is_one(const Poly& p)
{
    return p.size() == 1 && p.begin()->first.empty() && p.begin()->second == 1;
}

// Per-kernel minimum exponent over all terms (absent kernels count as 0),
// restricted to the sign selected: negative part only or full content.
Monomial monomial_content(const Poly& p, bool negative_part_only)
{
    std::map<Kernel, int> lowest;
    bool first = true;
    for (const auto& [m, c] : p) {
        std::map<Kernel, int> here;
        for (const auto& [k, e] : m.factors) here[k] = e;
        if (first) {
            lowest = here;
            for (auto& [k, e] : lowest) e = std::min(e, negative_part_only ? 0 : e);
            first = false;
            continue;
        }
        for (auto& [k, e] : lowest) {
            auto it = here.find(k);
            e = std::min(e, it == here.end() ? 0 : it->second);
        }
        for (const auto& [k, e] : here) {
            if (!lowest.count(k)) lowest[k] = std::min(0, e);
        }
    }
    std::vector<std::pair<Kernel, int>> factors;
    for (const auto& [k, e] : lowest) {
        if (e != 0 && (!negative_part_only || e < 0)) factors.emplace_back(k, e);
    }
    // Exponentials may only be factored out whole.
    std::erase_if(factors, [](const auto& f) { return f.first.kind() == KernelKind::Exp && f.second != 1; });
    return Monomial{std::move(factors)};
}

Rational rational_content(const Poly& p)
{
    mpz_class num_gcd = 0;
    mpz_class den_lcm = 1;
    for (const auto& [m, c] : p) {
        mpz_class n = abs(c.get_num());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), n.get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    }
    Rational q(num_gcd, den_lcm);
    q.canonicalize();
    if (!p.empty() && p.begin()->second < 0) q = -q;
    return q;
}

}  // namespace

// ---------------------------------------------------------------------------
// Expr

struct Expr::Node {
    Poly num;
    Poly den;
    mutable std::once_flag printed;
    mutable std::string text;
};

std::string rational_to_string(const Rational& q)
{
    return q.get_str();
}

namespace {

std::string print_kernel_power(const Kernel& k, int e)
{
    std::string out = k.key();
    if (e == 1) return out;
    out += '^';
    if (e < 0) {
        out += "(" + std::to_string(e) + ")";
    } else {
        out += std::to_string(e);
    }
    return out;
}

std::string print_term(const Monomial& m, const Rational& magnitude)
{
    if (m.empty()) return rational_to_string(magnitude);
    std::string factors;
    for (const auto& [k, e] : m.factors) {
        if (!factors.empty()) factors += '*';
        factors += print_kernel_power(k, e);
    }
    if (magnitude == 1) return factors;
    return rational_to_string(magnitude) + "*" + factors;
}

std::string print_poly(const Poly& p)
{
    if (p.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : p) {
        const bool negative = c < 0;
        const Rational magnitude = negative ? Rational(-c) : c;
        if (first) {
            if (negative) out += '-';
        } else {
            out += negative ? " - " : " + ";
        }
        out += print_term(m, magnitude);
        first = false;
    }
    return out;
}

}  // namespace

Expr::Expr() : Expr(Rational(0)) {}

Expr::Expr(int value) : Expr(Rational(value)) {}

Expr::Expr(const Rational& value)
{
    Rational q = value;
    q.canonicalize();
    auto node = std::make_shared<Node>();
    node->num = poly_constant(q);
    node->den = poly_constant(Rational(1));
    node_ = std::move(node);
}

Expr Expr::variable(const std::string& name)
{
    Poly num;
    num.emplace(Monomial{{{Kernel::variable(name), 1}}}, Rational(1));
    return from_poly(std::move(num));
}

Expr Expr::from_poly(Poly numerator)
{
    auto node = std::make_shared<Node>();
    node->num = std::move(numerator);
    node->den = poly_constant(Rational(1));
    return Expr(std::shared_ptr<const Node>(std::move(node)));
}

Expr Expr::from_parts(Poly num, Poly den)
{
    if (den.empty()) throw Error(ErrorCode::Singular, "division by zero");
    if (num.empty()) return Expr();
    if (poly_is_one(den)) return from_poly(std::move(num));

    for (int pass = 0; pass < 2; ++pass) {
        if (den.size() == 1) {
            const auto& [m, c] = *den.begin();
            Poly scaled = poly_scale(poly_mul_monomial(num, monomial_inverse(m)), Rational(1) / c);
            return from_poly(std::move(scaled));
        }
        const Monomial content = monomial_content(den, false);
        if (!content.empty()) {
            const Monomial inv = monomial_inverse(content);
            den = poly_mul_monomial(den, inv);
            num = poly_mul_monomial(num, inv);
        }
        if (pass == 1) break;

        const Monomial shift = monomial_content(num, true);
        Poly shifted = poly_mul_monomial(num, monomial_inverse(shift));
        const Poly g = detail::poly_gcd(shifted, den);
        const bool trivial = g.size() == 1 && g.begin()->first.empty();
        if (trivial) break;
        auto q_num = detail::poly_divide_exact(shifted, g);
        auto q_den = detail::poly_divide_exact(den, g);
        if (!q_num || !q_den) throw Error(ErrorCode::Internal, "gcd does not divide its arguments");
        num = poly_mul_monomial(*q_num, shift);
        den = std::move(*q_den);
    }

    const Rational q = rational_content(den);
    if (q != 1) {
        den = poly_scale(den, Rational(1) / q);
        num = poly_scale(num, Rational(1) / q);
    }
    if (poly_is_one(den)) return from_poly(std::move(num));
    auto node = std::make_shared<Node>();
    node->num = std::move(num);
    node->den = std::move(den);
    return Expr(std::shared_ptr<const Node>(std::move(node)));
}

const Poly& Expr::numerator() const { return node_->num; }
const Poly& Expr::denominator() const { return node_->den; }

bool Expr::is_zero() const { return node_->num.empty(); }

bool Expr::is_one() const { return poly_is_one(node_->num) && poly_is_one(node_->den); }

std::optional<Rational> Expr::as_rational() const
{
    if (!poly_is_one(node_->den)) return std::nullopt;
    if (node_->num.empty()) return Rational(0);
    if (node_->num.size() == 1 && node_->num.begin()->first.empty()) return node_->num.begin()->second;
    return std::nullopt;
}

std::size_t Expr::term_count() const { return node_->num.size(); }

bool Expr::depends_on(std::string_view var) const
{
    for (const Poly* p : {&node_->num, &node_->den}) {
        for (const auto& [m, c] : *p) {
            for (const auto& f : m.factors) {
                if (f.first.depends_on(var)) return true;
            }
        }
    }
    return false;
}

std::set<std::string> Expr::variables() const
{
    std::set<std::string> out;
    for (const Poly* p : {&node_->num, &node_->den}) {
        for (const auto& [m, c] : *p) {
            for (const auto& f : m.factors) out.insert(f.first.variables().begin(), f.first.variables().end());
        }
    }
    return out;
}

bool Expr::is_rational_function() const
{
    for (const Poly* p : {&node_->num, &node_->den}) {
        for (const auto& [m, c] : *p) {
            for (const auto& f : m.factors) {
                if (!f.first.is_variable()) return false;
            }
        }
    }
    return true;
}

bool Expr::is_polynomial() const
{
    if (!poly_is_one(node_->den)) return false;
    for (const auto& [m, c] : node_->num) {
        for (const auto& [k, e] : m.factors) {
            if (!k.is_variable() || e < 0) return false;
        }
    }
    return true;
}

const std::string& Expr::str() const
{
    std::call_once(node_->printed, [node = node_.get()] {
        if (poly_is_one(node->den)) {
            node->text = print_poly(node->num);
            return;
        }
        std::string num = print_poly(node->num);
        if (node->num.size() > 1) num = "(" + num + ")";
        node->text = num + "/(" + print_poly(node->den) + ")";
    });
    return node_->text;
}

bool operator==(const Expr& a, const Expr& b)
{
    if (a.node_ == b.node_) return true;
    return a.node_->num == b.node_->num && a.node_->den == b.node_->den;
}

Expr operator+(const Expr& a, const Expr& b)
{
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const Poly& da = a.denominator();
    const Poly& db = b.denominator();
    if (da == db) return Expr::from_parts(poly_add(a.numerator(), b.numerator(), 1), da);
    return Expr::from_parts(poly_add(poly_mul(a.numerator(), db), poly_mul(b.numerator(), da), 1), poly_mul(da, db));
}

Expr operator-(const Expr& a)
{
    if (a.is_zero()) return a;
    return Expr::from_parts(poly_scale(a.numerator(), Rational(-1)), a.denominator());
}

Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr operator*(const Expr& a, const Expr& b)
{
    if (a.is_zero() || b.is_zero()) return Expr();
    if (a.is_one()) return b;
    if (b.is_one()) return a;
    return Expr::from_parts(poly_mul(a.numerator(), b.numerator()), poly_mul(a.denominator(), b.denominator()));
}

Expr operator/(const Expr& a, const Expr& b)
{
    if (b.is_zero()) throw Error(ErrorCode::Singular, "division by zero");
    if (a.is_zero()) return a;
    return Expr::from_parts(poly_mul(a.numerator(), b.denominator()), poly_mul(a.denominator(), b.numerator()));
}

Expr Expr::pow(int exponent) const
{
    if (exponent < 0) return Expr(1) / pow(-exponent);
    Expr result(1);
    Expr base = *this;
    unsigned n = static_cast<unsigned>(exponent);
    while (n != 0) {
        if (n & 1u) result = result * base;
        n >>= 1u;
        if (n != 0) base = base * base;
    }
    return result;
}

namespace {

Expr kernel_expr(const Kernel& k)
{
    Poly num;
    num.emplace(Monomial{{{k, 1}}}, Rational(1));
    return Expr::from_poly(std::move(num));
}

bool leading_negative(const Expr& e)
{
    return !e.numerator().empty() && e.numerator().begin()->second < 0;
}

}  // namespace

Expr Expr::exp(const Expr& arg)
{
    if (arg.is_zero()) return Expr(1);
    if (poly_is_one(arg.denominator())) {
        // exp(n*log(u) + rest) = u^n * exp(rest) for integer n
        Poly rest;
        Expr factor(1);
        bool extracted = false;
        for (const auto& [m, c] : arg.numerator()) {
            const bool single_log = m.factors.size() == 1 && m.factors[0].second == 1 &&
                                    m.factors[0].first.kind() == KernelKind::Log;
            if (single_log && c.get_den() == 1 && c.get_num().fits_sint_p()) {
                factor = factor * m.factors[0].first.argument().pow(static_cast<int>(c.get_num().get_si()));
                extracted = true;
            } else {
                rest.emplace(m, c);
            }
        }
        if (extracted) return factor * exp(from_poly(std::move(rest)));
    }
    return kernel_expr(Kernel::function(KernelKind::Exp, arg));
}

Expr Expr::log(const Expr& arg)
{
    if (arg.is_zero()) throw Error(ErrorCode::Singular, "log of zero");
    if (arg.is_one()) return Expr();
    const Poly& num = arg.numerator();
    if (poly_is_one(arg.denominator()) && num.size() == 1 && num.begin()->second == 1) {
        const Monomial& m = num.begin()->first;
        if (m.factors.size() == 1 && m.factors[0].second == 1 && m.factors[0].first.kind() == KernelKind::Exp) {
            return m.factors[0].first.argument();
        }
    }
    return kernel_expr(Kernel::function(KernelKind::Log, arg));
}

Expr Expr::sin(const Expr& arg)
{
    if (arg.is_zero()) return Expr();
    if (leading_negative(arg)) return -sin(-arg);
    return kernel_expr(Kernel::function(KernelKind::Sin, arg));
}

Expr Expr::cos(const Expr& arg)
{
    if (arg.is_zero()) return Expr(1);
    if (leading_negative(arg)) return cos(-arg);
    return kernel_expr(Kernel::function(KernelKind::Cos, arg));
}

Expr Expr::apply(KernelKind kind, const Expr& arg)
{
    switch (kind) {
    case KernelKind::Exp: return exp(arg);
    case KernelKind::Log: return log(arg);
    case KernelKind::Sin: return sin(arg);
    case KernelKind::Cos: return cos(arg);
    case KernelKind::Variable: break;
    }
    throw Error(ErrorCode::Internal, "cannot apply a variable kernel");
}

namespace {

Expr kernel_derivative(const Kernel& k, std::string_view var)
{
    switch (k.kind()) {
    case KernelKind::Variable: return k.name() == var ? Expr(1) : Expr();
    case KernelKind::Exp: return kernel_expr(k) * k.argument().derive(var);
    case KernelKind::Log: return k.argument().derive(var) / k.argument();
    case KernelKind::Sin: return Expr::cos(k.argument()) * k.argument().derive(var);
    case KernelKind::Cos: return -Expr::sin(k.argument()) * k.argument().derive(var);
    }
    return Expr();
}

Expr poly_derivative(const Poly& p, std::string_view var)
{
    Poly polynomial_part;
    Expr other;
    for (const auto& [m, c] : p) {
        for (std::size_t i = 0; i < m.factors.size(); ++i) {
            const auto& [k, e] = m.factors[i];
            if (!k.depends_on(var)) continue;
            const Expr dk = kernel_derivative(k, var);
            if (dk.is_zero()) continue;
            std::vector<std::pair<Kernel, int>> reduced = m.factors;
            reduced[i].second -= 1;
            const Monomial rm = make_monomial(std::move(reduced));
            const Rational coeff = c * e;
            if (poly_is_one(dk.denominator())) {
                for (const auto& [dm, dc] : dk.numerator()) add_term(polynomial_part, monomial_product(rm, dm), coeff * dc);
            } else {
                Poly single;
                single.emplace(rm, coeff);
                other += Expr::from_poly(std::move(single)) * dk;
            }
        }
    }
    return Expr::from_poly(std::move(polynomial_part)) + other;
}

}  // namespace

Expr Expr::derive(std::string_view var) const
{
    if (!depends_on(var)) return Expr();
    const Expr dnum = poly_derivative(node_->num, var);
    if (poly_is_one(node_->den)) return dnum;
    const Expr num = from_poly(node_->num);
    const Expr den = from_poly(node_->den);
    const Expr dden = poly_derivative(node_->den, var);
    return (dnum * den - num * dden) / (den * den);
}

namespace {

Expr substitute_poly(const Poly& p, const std::map<std::string, Expr, std::less<>>& replacements)
{
    Expr total;
    for (const auto& [m, c] : p) {
        Expr term(c);
        for (const auto& [k, e] : m.factors) {
            Expr base;
            if (k.is_variable()) {
                auto it = replacements.find(k.name());
                base = it == replacements.end() ? kernel_expr(k) : it->second;
            } else {
                base = Expr::apply(k.kind(), k.argument().substitute(replacements));
            }
            term = term * base.pow(e);
        }
        total += term;
    }
    return total;
}

}  // namespace

Expr Expr::substitute(const std::map<std::string, Expr, std::less<>>& replacements) const
{
    bool touched = false;
    for (const auto& [name, value] : replacements) {
        if (depends_on(name)) {
            touched = true;
            break;
        }
    }
    if (!touched) return *this;
    const Expr num = substitute_poly(node_->num, replacements);
    if (poly_is_one(node_->den)) return num;
    const Expr den = substitute_poly(node_->den, replacements);
    if (den.is_zero()) throw Error(ErrorCode::Singular, "substitution makes the denominator vanish");
    return num / den;
}

namespace {

double evaluate_kernel(const Kernel& k, const Assignment& point)
{
    if (k.is_variable()) {
        auto it = point.find(k.name());
        if (it == point.end()) throw Error(ErrorCode::UnknownIdentifier, "no value for variable '" + k.name() + "'");
        return it->second;
    }
    const double a = k.argument().evaluate(point);
    double v = 0;
    switch (k.kind()) {
    case KernelKind::Exp: v = std::exp(a); break;
    case KernelKind::Log:
        if (!(a > 0)) throw Error(ErrorCode::Singular, "log of a nonpositive value");
        v = std::log(a);
        break;
    case KernelKind::Sin: v = std::sin(a); break;
    case KernelKind::Cos: v = std::cos(a); break;
    case KernelKind::Variable: break;
    }
    if (!std::isfinite(v)) throw Error(ErrorCode::Singular, "non-finite value of " + k.key());
    return v;
}

std::pair<double, double> evaluate_poly(const Poly& p, const Assignment& point)
{
    double sum = 0;
    double scale = 0;
    for (const auto& [m, c] : p) {
        double term = c.get_d();
        double magnitude = std::fabs(term);
        for (const auto& [k, e] : m.factors) {
            const double base = evaluate_kernel(k, point);
            if (base == 0 && e < 0) throw Error(ErrorCode::Singular, "pole of " + k.key());
            term *= std::pow(base, e);
            // A transcendental value carries absolute rounding error, so sin(π)
            // must not set the scale to 1e-16.
            const bool floor = !k.is_variable() && e > 0;
            magnitude *= std::pow(floor ? std::max(std::fabs(base), 1.0) : std::fabs(base), e);
        }
        if (!std::isfinite(term) || !std::isfinite(magnitude)) throw Error(ErrorCode::Singular, "non-finite term");
        sum += term;
        scale += magnitude;
    }
    return {sum, scale};
}

}  // namespace

Expr::Parts Expr::evaluate_parts(const Assignment& point) const
{
    Parts parts;
    std::tie(parts.numerator, parts.numerator_scale) = evaluate_poly(node_->num, point);
    if (!poly_is_one(node_->den)) {
        const auto [d, d_scale] = evaluate_poly(node_->den, point);
        if (d == 0 || std::fabs(d) <= 1e-12 * d_scale) throw Error(ErrorCode::Singular, "denominator vanishes");
        parts.denominator = d;
    }
    return parts;
}

double Expr::evaluate(const Assignment& point) const
{
    const Parts parts = evaluate_parts(point);
    const double v = parts.numerator / parts.denominator;
    if (!std::isfinite(v)) throw Error(ErrorCode::Singular, "non-finite value");
    return v;
}

}  // namespace corank

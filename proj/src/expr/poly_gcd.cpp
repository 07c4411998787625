#include "expr/poly_gcd.hpp"

#include "common/error.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace corank::detail {

namespace {

using Exps = std::vector<int>;

// Dense-exponent polynomial over Q; lexicographic key order, so the last
// entry is the leading term.
struct FPoly {
    std::map<Exps, Rational> terms;

    bool zero() const { return terms.empty(); }
    bool constant() const { return terms.size() == 1 && std::all_of(terms.begin()->first.begin(), terms.begin()->first.end(), [](int e) { return e == 0; }); }
};

void accumulate(FPoly& p, const Exps& e, const Rational& c)
{
    if (c == 0) return;
    auto [it, inserted] = p.terms.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) p.terms.erase(it);
    }
}

FPoly add(const FPoly& a, const FPoly& b, int sign = 1)
{
    FPoly r = a;
    for (const auto& [e, c] : b.terms) accumulate(r, e, sign > 0 ? Rational(c) : Rational(-c));
    return r;
}

FPoly mul(const FPoly& a, const FPoly& b)
{
    FPoly r;
    for (const auto& [ea, ca] : a.terms) {
        for (const auto& [eb, cb] : b.terms) {
            Exps e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            accumulate(r, e, ca * cb);
        }
    }
    return r;
}

FPoly scale(const FPoly& a, const Rational& q)
{
    FPoly r;
    if (q == 0) return r;
    for (const auto& [e, c] : a.terms) r.terms.emplace(e, c * q);
    return r;
}

int degree(const FPoly& p, std::size_t var)
{
    int d = -1;
    for (const auto& [e, c] : p.terms) d = std::max(d, e[var]);
    return d;
}

// Coefficients of p viewed as a polynomial in `var`; entry k multiplies var^k.
std::vector<FPoly> coefficients(const FPoly& p, std::size_t var)
{
    std::vector<FPoly> out(static_cast<std::size_t>(std::max(degree(p, var), 0)) + 1);
    for (const auto& [e, c] : p.terms) {
        Exps reduced = e;
        const int k = reduced[var];
        reduced[var] = 0;
        out[static_cast<std::size_t>(k)].terms.emplace(std::move(reduced), c);
    }
    return out;
}

FPoly shift(const FPoly& p, std::size_t var, int power)
{
    FPoly r;
    for (const auto& [e, c] : p.terms) {
        Exps moved = e;
        moved[var] += power;
        r.terms.emplace(std::move(moved), c);
    }
    return r;
}

std::optional<FPoly> divide_exact(const FPoly& a, const FPoly& b)
{
    if (b.zero()) throw Error(ErrorCode::Internal, "polynomial division by zero");
    FPoly quotient;
    FPoly rest = a;
    const auto& [lead_e, lead_c] = *b.terms.rbegin();
    while (!rest.zero()) {
        const auto& [re, rc] = *rest.terms.rbegin();
        Exps qe(re.size());
        for (std::size_t i = 0; i < re.size(); ++i) {
            qe[i] = re[i] - lead_e[i];
            if (qe[i] < 0) return std::nullopt;
        }
        FPoly step;
        step.terms.emplace(qe, rc / lead_c);
        quotient = add(quotient, step);
        rest = add(rest, mul(step, b), -1);
    }
    return quotient;
}

FPoly monic(const FPoly& p)
{
    if (p.zero()) return p;
    return scale(p, Rational(1) / p.terms.rbegin()->second);
}

FPoly one(std::size_t nvars)
{
    FPoly r;
    r.terms.emplace(Exps(nvars, 0), Rational(1));
    return r;
}

FPoly gcd(const FPoly& a, const FPoly& b, std::size_t nvars);

// Univariate image of p in `var`, every other variable set to point[i].
std::vector<Rational> image(const FPoly& p, std::size_t var, const std::vector<Rational>& point)
{
    std::vector<Rational> out(static_cast<std::size_t>(std::max(degree(p, var), 0)) + 1);
    for (const auto& [e, c] : p.terms) {
        Rational t = c;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (i == var) continue;
            for (int k = 0; k < e[i]; ++k) t *= point[i];
        }
        out[static_cast<std::size_t>(e[var])] += t;
    }
    while (out.size() > 1 && out.back() == 0) out.pop_back();
    return out;
}

int univariate_gcd_degree(std::vector<Rational> a, std::vector<Rational> b)
{
    auto trim = [](std::vector<Rational>& p) {
        while (!p.empty() && p.back() == 0) p.pop_back();
    };
    trim(a);
    trim(b);
    while (!b.empty()) {
        while (a.size() >= b.size() && !a.empty()) {
            const Rational q = a.back() / b.back();
            const std::size_t shift = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= q * b[i];
            a.pop_back();
            trim(a);
        }
        std::swap(a, b);
    }
    return static_cast<int>(a.size()) - 1;
}

// True when gcd(a, b) certainly has degree 0 in `var`: at a point where both
// leading coefficients survive, the image gcd bounds the true degree.
bool coprime_in(const FPoly& a, const FPoly& b, std::size_t var, std::size_t nvars)
{
    const int da = degree(a, var);
    const int db = degree(b, var);
    for (int attempt = 0; attempt < 3; ++attempt) {
        std::vector<Rational> point(nvars);
        for (std::size_t i = 0; i < nvars; ++i) point[i] = Rational(static_cast<long>(2 + 3 * i + 7 * attempt), static_cast<long>(1 + i % 3 + attempt));
        const auto ia = image(a, var, point);
        const auto ib = image(b, var, point);
        if (static_cast<int>(ia.size()) - 1 != da || static_cast<int>(ib.size()) - 1 != db) continue;
        return univariate_gcd_degree(ia, ib) == 0;
    }
    return false;
}

FPoly content(const FPoly& p, std::size_t var, std::size_t nvars)
{
    FPoly g;
    for (const auto& c : coefficients(p, var)) {
        if (c.zero()) continue;
        g = g.zero() ? monic(c) : gcd(g, c, nvars);
        if (g.constant()) break;
    }
    return g;
}

FPoly primitive_part(const FPoly& p, std::size_t var, std::size_t nvars)
{
    const FPoly c = content(p, var, nvars);
    auto q = divide_exact(p, c);
    if (!q) throw Error(ErrorCode::Internal, "content does not divide polynomial");
    return *q;
}

FPoly pseudo_remainder(const FPoly& a, const FPoly& b, std::size_t var)
{
    const int db = degree(b, var);
    const FPoly lead_b = coefficients(b, var)[static_cast<std::size_t>(db)];
    FPoly r = a;
    while (!r.zero()) {
        const int dr = degree(r, var);
        if (dr < db) break;
        const FPoly lead_r = coefficients(r, var)[static_cast<std::size_t>(dr)];
        r = add(mul(lead_b, r), mul(shift(lead_r, var, dr - db), b), -1);
    }
    return r;
}

FPoly gcd(const FPoly& a, const FPoly& b, std::size_t nvars)
{
    if (a.zero()) return monic(b);
    if (b.zero()) return monic(a);
    if (a.constant() || b.constant()) return one(nvars);
    if (a.terms == b.terms) return monic(a);

    std::size_t var = nvars;
    for (std::size_t i = 0; i < nvars && var == nvars; ++i) {
        if (degree(a, i) > 0 || degree(b, i) > 0) var = i;
    }
    if (var == nvars) return one(nvars);

    if (degree(a, var) == 0) return gcd(a, content(b, var, nvars), nvars);
    if (degree(b, var) == 0) return gcd(content(a, var, nvars), b, nvars);

    const FPoly ca = content(a, var, nvars);
    const FPoly cb = content(b, var, nvars);
    FPoly pa = *divide_exact(a, ca);
    FPoly pb = *divide_exact(b, cb);
    const FPoly c = gcd(ca, cb, nvars);
    if (coprime_in(pa, pb, var, nvars)) {
        // Primitive parts with no common factor in var: the gcd lies in the contents.
        return c;
    }
    if (degree(pa, var) < degree(pb, var)) std::swap(pa, pb);

    FPoly g;
    for (;;) {
        const FPoly r = pseudo_remainder(pa, pb, var);
        if (r.zero()) {
            g = pb;
            break;
        }
        if (degree(r, var) == 0) {
            g = one(nvars);
            break;
        }
        pa = std::move(pb);
        pb = primitive_part(r, var, nvars);
    }
    return monic(mul(c, primitive_part(g, var, nvars)));
}

struct Encoding {
    std::vector<Kernel> kernels;

    std::size_t index_of(const Kernel& k) const
    {
        auto it = std::lower_bound(kernels.begin(), kernels.end(), k);
        return static_cast<std::size_t>(it - kernels.begin());
    }

    FPoly encode(const Poly& p) const
    {
        FPoly r;
        for (const auto& [m, c] : p) {
            Exps e(kernels.size(), 0);
            for (const auto& [k, power] : m.factors) {
                if (power < 0) throw Error(ErrorCode::Internal, "negative exponent in free-ring polynomial");
                e[index_of(k)] = power;
            }
            r.terms.emplace(std::move(e), c);
        }
        return r;
    }

    Poly decode(const FPoly& p) const
    {
        Poly r;
        for (const auto& [e, c] : p.terms) {
            std::vector<std::pair<Kernel, int>> factors;
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] != 0) factors.emplace_back(kernels[i], e[i]);
            }
            Monomial m = make_monomial(std::move(factors));
            auto [it, inserted] = r.emplace(std::move(m), c);
            if (!inserted) {
                it->second += c;
                if (it->second == 0) r.erase(it);
            }
        }
        return r;
    }
};

Encoding encoding_for(const Poly& a, const Poly& b)
{
    Encoding enc;
    for (const Poly* p : {&a, &b}) {
        for (const auto& [m, c] : *p) {
            for (const auto& f : m.factors) enc.kernels.push_back(f.first);
        }
    }
    std::sort(enc.kernels.begin(), enc.kernels.end());
    enc.kernels.erase(std::unique(enc.kernels.begin(), enc.kernels.end()), enc.kernels.end());
    return enc;
}

}  // namespace

Poly poly_gcd(const Poly& a, const Poly& b)
{
    const Encoding enc = encoding_for(a, b);
    return enc.decode(gcd(enc.encode(a), enc.encode(b), enc.kernels.size()));
}

std::optional<Poly> poly_divide_exact(const Poly& a, const Poly& b)
{
    const Encoding enc = encoding_for(a, b);
    auto q = divide_exact(enc.encode(a), enc.encode(b));
    if (!q) return std::nullopt;
    return enc.decode(*q);
}

}  // namespace corank::detail

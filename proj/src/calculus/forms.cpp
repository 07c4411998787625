#include "calculus/forms.hpp"

#include "common/error.hpp"
#include "expr/parser.hpp"

#include <bit>

namespace corank {

int blade_degree(Blade b)
{
    return std::popcount(b);
}

std::vector<std::size_t> blade_indices(Blade b)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; b != 0; ++i, b >>= 1u) {
        if (b & 1u) out.push_back(i);
    }
    return out;
}

int sort_sign(std::vector<std::size_t>& indices)
{
    int sign = 1;
    for (std::size_t i = 1; i < indices.size(); ++i) {
        for (std::size_t j = i; j > 0 && indices[j - 1] >= indices[j]; --j) {
            if (indices[j - 1] == indices[j]) return 0;
            std::swap(indices[j - 1], indices[j]);
            sign = -sign;
        }
    }
    return sign;
}

Blade blade_of(const std::vector<std::size_t>& sorted_indices)
{
    Blade b = 0;
    for (auto i : sorted_indices) b |= Blade{1} << i;
    return b;
}

int wedge_sign(Blade a, Blade b)
{
    if (a & b) return 0;
    int inversions = 0;
    for (Blade rest = b; rest != 0; rest &= rest - 1) {
        const Blade bit = rest & (~rest + 1);
        inversions += std::popcount(a & ~(bit | (bit - 1)));
    }
    return inversions % 2 == 0 ? 1 : -1;
}

namespace {

// Bits of b strictly below / above index i.
int below(Blade b, std::size_t i)
{
    return std::popcount(b & ((Blade{1} << i) - 1));
}

int above(Blade b, std::size_t i)
{
    return std::popcount(b & ~((Blade{2} << i) - 1));
}

int parity(int n)
{
    return n % 2 == 0 ? 1 : -1;
}

template <Variance V>
constexpr const char* basis_prefix()
{
    return V == Variance::Covariant ? "d" : "\xE2\x88\x82";
}

std::string coefficient_text(const Expr& c, bool& negative)
{
    negative = false;
    if (c.is_one()) return "";
    const Expr minus = -c;
    if (minus.is_one()) {
        negative = true;
        return "";
    }
    const bool single = c.term_count() == 1 && c.denominator().size() == 1 && c.denominator().begin()->first.empty();
    if (single) {
        if (c.numerator().begin()->second < 0) {
            negative = true;
            return minus.str();
        }
        return c.str();
    }
    return "(" + c.str() + ")";
}

}  // namespace

template <Variance V>
Alternating<V>::Alternating(Chart chart, int degree) : chart_(std::move(chart)), degree_(degree)
{
    if (degree < 0) throw Error(ErrorCode::DegreeUnderflow, "negative degree");
}

template <Variance V>
Alternating<V> Alternating<V>::scalar(Chart chart, Expr value)
{
    Alternating a(std::move(chart), 0);
    a.add(0, value);
    return a;
}

template <Variance V>
Alternating<V> Alternating<V>::basis(Chart chart, const std::vector<std::size_t>& indices, Expr coefficient)
{
    for (auto i : indices) {
        if (i >= chart.dim()) throw Error(ErrorCode::UnknownCoordinate, "basis index out of range");
    }
    Alternating a(std::move(chart), static_cast<int>(indices.size()));
    auto sorted = indices;
    const int sign = sort_sign(sorted);
    if (sign != 0) a.add(blade_of(sorted), sign > 0 ? coefficient : -coefficient);
    return a;
}

template <Variance V>
Alternating<V> Alternating<V>::parse(std::string_view text, const Chart& chart, std::optional<int> expected)
{
    const auto kind = V == Variance::Covariant ? BasisKind::Differential : BasisKind::Partial;
    const auto terms = parse_graded(text, chart, kind);
    std::optional<int> degree;
    for (const auto& t : terms) {
        if (t.coefficient.is_zero()) continue;
        const int k = static_cast<int>(t.basis.size());
        if (degree && *degree != k) {
            throw Error(ErrorCode::DegreeMismatch, "terms of different degrees in '" + std::string(text) + "'");
        }
        degree = k;
    }
    if (!degree) degree = expected.value_or(0);
    if (expected && *expected != *degree) {
        throw Error(ErrorCode::DegreeMismatch, "expected degree " + std::to_string(*expected) + ", got " +
                                                   std::to_string(*degree) + " in '" + std::string(text) + "'");
    }
    Alternating a(chart, *degree);
    for (const auto& t : terms) {
        if (t.coefficient.is_zero()) continue;
        a += basis(chart, t.basis, t.coefficient);
    }
    return a;
}

template <Variance V>
Alternating<V> Alternating<V>::from_components(Chart chart, const std::vector<Expr>& components)
{
    if (components.size() != chart.dim()) throw Error(ErrorCode::DegreeMismatch, "component count differs from chart dimension");
    Alternating a(std::move(chart), 1);
    for (std::size_t i = 0; i < components.size(); ++i) a.add(Blade{1} << i, components[i]);
    return a;
}

template <Variance V>
Expr Alternating<V>::coefficient(Blade b) const
{
    auto it = terms_.find(b);
    return it == terms_.end() ? Expr() : it->second;
}

template <Variance V>
Expr Alternating<V>::component(std::vector<std::size_t> indices) const
{
    const int sign = sort_sign(indices);
    if (sign == 0) return Expr();
    const Expr c = coefficient(blade_of(indices));
    return sign > 0 ? c : -c;
}

template <Variance V>
std::vector<Expr> Alternating<V>::components() const
{
    if (degree_ != 1) throw Error(ErrorCode::DegreeMismatch, "components() needs degree 1");
    std::vector<Expr> out(chart_.dim());
    for (const auto& [b, c] : terms_) out[static_cast<std::size_t>(std::countr_zero(b))] = c;
    return out;
}

template <Variance V>
Expr Alternating<V>::scalar_value() const
{
    if (degree_ != 0) throw Error(ErrorCode::DegreeMismatch, "scalar_value() needs degree 0");
    return coefficient(0);
}

template <Variance V>
void Alternating<V>::add(Blade b, const Expr& c)
{
    if (c.is_zero()) return;
    if (blade_degree(b) != degree_) throw Error(ErrorCode::DegreeMismatch, "blade degree differs from element degree");
    auto [it, inserted] = terms_.emplace(b, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

template <Variance V>
Alternating<V> Alternating<V>::map(const std::function<Expr(const Expr&)>& f) const
{
    Alternating out(chart_, degree_);
    for (const auto& [b, c] : terms_) out.add(b, f(c));
    return out;
}

template <Variance V>
Alternating<V> Alternating<V>::substitute(const std::map<std::string, Expr, std::less<>>& replacements) const
{
    return map([&](const Expr& c) { return c.substitute(replacements); });
}

template <Variance V>
std::string Alternating<V>::str() const
{
    if (terms_.empty()) return "0";
    if (degree_ == 0) return terms_.begin()->second.str();
    std::string out;
    bool first = true;
    for (const auto& [b, c] : terms_) {
        bool negative = false;
        const std::string coef = coefficient_text(c, negative);
        if (first) {
            if (negative) out += '-';
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;
        if (!coef.empty()) out += coef + " ";
        bool first_basis = true;
        for (auto i : blade_indices(b)) {
            if (!first_basis) out += '^';
            out += basis_prefix<V>();
            out += chart_.name(i);
            first_basis = false;
        }
    }
    return out;
}

template <Variance V>
Alternating<V> Alternating<V>::operator-() const
{
    return map([](const Expr& c) { return -c; });
}

template <Variance V>
Alternating<V>& Alternating<V>::operator+=(const Alternating& b)
{
    require_same_frame(chart_, b.chart_);
    if (b.terms_.empty()) return *this;
    if (terms_.empty()) {
        degree_ = b.degree_;
    } else if (degree_ != b.degree_) {
        throw Error(ErrorCode::DegreeMismatch, "adding elements of degrees " + std::to_string(degree_) + " and " +
                                                   std::to_string(b.degree_));
    }
    for (const auto& [blade, c] : b.terms_) add(blade, c);
    return *this;
}

template class Alternating<Variance::Covariant>;
template class Alternating<Variance::Contravariant>;

bool same_frame(const Chart& a, const Chart& b)
{
    if (a.dim() != b.dim() || a.parameters().size() != b.parameters().size()) return false;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        if (a.name(i) != b.name(i)) return false;
    }
    for (std::size_t i = 0; i < a.parameters().size(); ++i) {
        if (a.parameters()[i].name != b.parameters()[i].name) return false;
    }
    return true;
}

void require_same_frame(const Chart& a, const Chart& b)
{
    if (!same_frame(a, b)) throw Error(ErrorCode::ChartMismatch, "operands live on different charts");
}

namespace {

template <Variance V>
Alternating<V> wedge_impl(const Alternating<V>& a, const Alternating<V>& b)
{
    require_same_frame(a.chart(), b.chart());
    Alternating<V> out(a.chart(), a.degree() + b.degree());
    for (const auto& [ba, ca] : a.terms()) {
        for (const auto& [bb, cb] : b.terms()) {
            const int s = wedge_sign(ba, bb);
            if (s == 0) continue;
            const Expr c = ca * cb;
            out.add(ba | bb, s > 0 ? c : -c);
        }
    }
    return out;
}

template <Variance V>
Alternating<V> power_impl(const Alternating<V>& a, int m)
{
    if (m < 0) throw Error(ErrorCode::DegreeUnderflow, "negative power");
    Alternating<V> out = Alternating<V>::scalar(a.chart(), Expr(1));
    for (int i = 0; i < m; ++i) {
        out = wedge_impl(out, a);
        if (out.is_structurally_zero()) return Alternating<V>(a.chart(), a.degree() * m);
    }
    return out;
}

// Contract `x` (degree p) into `eta` (degree k), lowest index of each blade of
// x first. Shared by both variances.
template <Variance In, Variance Out>
Alternating<Out> contract(const Alternating<In>& x, const Alternating<Out>& eta)
{
    require_same_frame(x.chart(), eta.chart());
    if (x.degree() > eta.degree()) throw Error(ErrorCode::DegreeUnderflow, "contraction degree exceeds element degree");
    Alternating<Out> out(eta.chart(), eta.degree() - x.degree());
    for (const auto& [bx, cx] : x.terms()) {
        for (const auto& [be, ce] : eta.terms()) {
            if ((be & bx) != bx) continue;
            int sign = 1;
            Blade rest = be;
            for (auto i : blade_indices(bx)) {
                sign *= parity(below(rest, i));
                rest &= ~(Blade{1} << i);
            }
            const Expr c = cx * ce;
            out.add(rest, sign > 0 ? c : -c);
        }
    }
    return out;
}

}  // namespace

DiffForm wedge(const DiffForm& a, const DiffForm& b) { return wedge_impl(a, b); }
MultiVector wedge(const MultiVector& a, const MultiVector& b) { return wedge_impl(a, b); }
DiffForm power(const DiffForm& a, int m) { return power_impl(a, m); }
MultiVector power(const MultiVector& a, int m) { return power_impl(a, m); }

DiffForm ext_deriv(const DiffForm& eta)
{
    const Chart& chart = eta.chart();
    DiffForm out(chart, eta.degree() + 1);
    for (const auto& [b, c] : eta.terms()) {
        for (std::size_t j = 0; j < chart.dim(); ++j) {
            const Blade bit = Blade{1} << j;
            if (b & bit) continue;
            const Expr dc = c.derive(chart.name(j));
            if (dc.is_zero()) continue;
            out.add(b | bit, below(b, j) % 2 == 0 ? dc : -dc);
        }
    }
    return out;
}

DiffForm differential(const Chart& chart, const Expr& f)
{
    return ext_deriv(DiffForm::scalar(chart, f));
}

DiffForm interior(const MultiVector& x, const DiffForm& eta) { return contract(x, eta); }
MultiVector interior(const DiffForm& eta, const MultiVector& x) { return contract(eta, x); }

Expr evaluate_on(const DiffForm& eta, const std::vector<MultiVector>& vectors)
{
    if (vectors.size() != static_cast<std::size_t>(eta.degree())) {
        throw Error(ErrorCode::DegreeMismatch, "form evaluated on the wrong number of vectors");
    }
    DiffForm rest = eta;
    for (const auto& v : vectors) {
        if (v.degree() != 1) throw Error(ErrorCode::DegreeMismatch, "form arguments must be vector fields");
        rest = interior(v, rest);
    }
    return rest.scalar_value();
}

Expr apply_vector(const MultiVector& v, const Expr& f)
{
    if (v.degree() != 1) throw Error(ErrorCode::DegreeMismatch, "expected a vector field");
    Expr out;
    for (const auto& [b, c] : v.terms()) out += c * f.derive(v.chart().name(static_cast<std::size_t>(std::countr_zero(b))));
    return out;
}

// [P, Q] = Σ_i (P ∂⃖/∂ξ_i)(∂_i Q) − (∂_i P)(∂⃗/∂ξ_i Q), with ξ_i standing for ∂_i.
MultiVector schouten(const MultiVector& p, const MultiVector& q)
{
    require_same_frame(p.chart(), q.chart());
    const Chart& chart = p.chart();
    const int degree = p.degree() + q.degree() - 1;
    if (degree < 0) return MultiVector(chart, 0);
    MultiVector out(chart, degree);
    for (const auto& [bp, a] : p.terms()) {
        for (const auto& [bq, b] : q.terms()) {
            for (std::size_t i = 0; i < chart.dim(); ++i) {
                const Blade bit = Blade{1} << i;
                const std::string& name = chart.name(i);
                if (bp & bit) {
                    const Expr db = b.derive(name);
                    const Blade rest = bp & ~bit;
                    const int s = wedge_sign(rest, bq);
                    if (!db.is_zero() && s != 0) {
                        const Expr c = a * db;
                        out.add(rest | bq, s * parity(above(bp, i)) > 0 ? c : -c);
                    }
                }
                if (bq & bit) {
                    const Expr da = a.derive(name);
                    const Blade rest = bq & ~bit;
                    const int s = wedge_sign(bp, rest);
                    if (!da.is_zero() && s != 0) {
                        const Expr c = da * b;
                        out.add(bp | rest, s * parity(below(bq, i)) > 0 ? -c : c);
                    }
                }
            }
        }
    }
    return out;
}

DiffForm lie_derivative(const MultiVector& v, const DiffForm& eta)
{
    if (v.degree() != 1) throw Error(ErrorCode::DegreeMismatch, "Lie derivative needs a vector field");
    DiffForm out(eta.chart(), eta.degree());
    out += interior(v, ext_deriv(eta));
    if (eta.degree() > 0) out += ext_deriv(interior(v, eta));
    return out;
}

MultiVector lie_derivative(const MultiVector& v, const MultiVector& p)
{
    if (v.degree() != 1) throw Error(ErrorCode::DegreeMismatch, "Lie derivative needs a vector field");
    return schouten(v, p);
}

ChartMap identity_map(const Chart& chart)
{
    ChartMap phi{chart, chart, {}};
    for (const auto& c : chart.coordinates()) phi.components.push_back(Expr::variable(c.name));
    return phi;
}

DiffForm pullback(const ChartMap& phi, const DiffForm& eta)
{
    require_same_frame(phi.target, eta.chart());
    if (phi.components.size() != phi.target.dim()) throw Error(ErrorCode::DegreeMismatch, "map component count differs from target dimension");
    std::map<std::string, Expr, std::less<>> substitution;
    for (std::size_t j = 0; j < phi.target.dim(); ++j) substitution.emplace(phi.target.name(j), phi.components[j]);
    std::vector<DiffForm> dphi;
    for (const auto& comp : phi.components) dphi.push_back(differential(phi.source, comp));

    DiffForm out(phi.source, eta.degree());
    for (const auto& [b, c] : eta.terms()) {
        DiffForm term = DiffForm::scalar(phi.source, c.substitute(substitution));
        for (auto j : blade_indices(b)) term = wedge(term, dphi[j]);
        if (!term.is_structurally_zero()) out += term;
    }
    return out;
}

namespace {

template <Variance V>
Verdict is_zero_impl(const Alternating<V>& a, const ZeroTestOptions& options)
{
    Verdict total = Verdict::symbolic();
    for (const auto& [b, c] : a.terms()) {
        Verdict v = is_zero(c, a.chart(), options);
        if (v.witness) v.witness->label = Alternating<V>::basis(a.chart(), blade_indices(b)).str();
        total = all_of(total, v);
        if (total.is_false()) return total;
    }
    return total;
}

}  // namespace

Verdict is_zero(const DiffForm& eta, const ZeroTestOptions& options) { return is_zero_impl(eta, options); }
Verdict is_zero(const MultiVector& p, const ZeroTestOptions& options) { return is_zero_impl(p, options); }

DiffForm exterior_divide(const DiffForm& eta, const DiffForm& alpha, const MultiVector& v, const ZeroTestOptions& options)
{
    if (alpha.degree() != 1) throw Error(ErrorCode::DegreeMismatch, "divisor must be a 1-form");
    if (v.degree() != 1) throw Error(ErrorCode::DegreeMismatch, "transversal must be a vector field");
    if (eta.degree() == 0) throw Error(ErrorCode::DegreeUnderflow, "cannot divide a function by a 1-form");
    if (eta.is_structurally_zero()) return DiffForm(eta.chart(), eta.degree() - 1);

    const Verdict normalized = is_zero(interior(v, alpha).scalar_value() - Expr(1), alpha.chart(), options);
    if (normalized.is_false()) throw Error(ErrorCode::BadTransversal, "alpha(v) is not 1", normalized.witness);
    if (!normalized.holds()) throw Error(ErrorCode::Undecided, "could not decide whether alpha(v) = 1");

    const Verdict divisible = is_zero(wedge(eta, alpha), options);
    if (divisible.is_false()) throw Error(ErrorCode::DivisionObstructed, "eta ^ alpha is not zero", divisible.witness);
    if (!divisible.holds()) throw Error(ErrorCode::Undecided, "could not decide whether eta ^ alpha = 0");

    DiffForm xi = interior(v, eta);
    if (eta.degree() % 2 == 0) xi = -xi;
    const Verdict check = is_zero(eta - wedge(xi, alpha), options);
    if (check.is_false()) throw Error(ErrorCode::Internal, "exterior division failed its own check", check.witness);
    return xi;
}

MultiVector default_transversal(const DiffForm& alpha, const ZeroTestOptions& options)
{
    if (alpha.degree() != 1) throw Error(ErrorCode::DegreeMismatch, "expected a 1-form");
    const auto comps = alpha.components();
    for (std::size_t j = 0; j < comps.size(); ++j) {
        if (comps[j].is_zero()) continue;
        if (is_zero(comps[j], alpha.chart(), options).is_false()) {
            return MultiVector::basis(alpha.chart(), {j}, Expr(1) / comps[j]);
        }
    }
    throw Error(ErrorCode::BadTransversal, "no coefficient of alpha is certainly nonzero");
}

DiffForm exterior_divide(const DiffForm& eta, const DiffForm& alpha, const ZeroTestOptions& options)
{
    return exterior_divide(eta, alpha, default_transversal(alpha, options), options);
}

Verdict leafwise_equal(const DiffForm& a, const DiffForm& b, const DiffForm& alpha, const ZeroTestOptions& options)
{
    if (a.degree() != b.degree() && !a.is_structurally_zero() && !b.is_structurally_zero()) {
        throw Error(ErrorCode::DegreeMismatch, "leafwise comparison of different degrees");
    }
    return is_zero(wedge(a - b, alpha), options);
}

}  // namespace corank

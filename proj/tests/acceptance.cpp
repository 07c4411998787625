// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include "bgeom/bgeom.hpp"
#include "expr/parser.hpp"
#include "generators.hpp"
#include "problem/problem.hpp"

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

using namespace corank;
using corank::testing::Gen;
using corank::testing::line_chart;

namespace fs = std::filesystem;

namespace {

const std::string kCorpus = CORANK_CORPUS_DIR;
const std::string kCli = CORANK_CLI_PATH;

// Collects the reasons a criterion failed.
struct Check {
    std::vector<std::string> problems;
    std::string detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) problems.push_back(what);
    }
};

// ---------------------------------------------------------------------------
// Corpus access

struct Entry {
    std::string file;
    Problem problem;
    std::optional<MultiVector> pi;
    std::optional<AdaptedForms> adapted;
    bool poisson = false;
};

std::vector<Entry> load_corpus()
{
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(kCorpus)) {
        if (e.path().extension() == ".problem") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<Entry> out;
    for (const auto& f : files) {
        Entry e{f.filename().string(), {}, {}, {}, false};
        try {
            e.problem = load_problem(f.string());
        } catch (const Error&) {
            continue;  // the deliberately invalid file
        }
        const Problem& p = e.problem;
        if (p.bivector) {
            e.pi = *p.bivector;
        } else if (p.alpha && p.omega && p.transversal) {
            e.pi = bivector_from_forms(*p.alpha, *p.omega, *p.transversal);
        } else if (p.product) {
            e.pi = build_product_bpoisson(p.chart, p.product->angle, p.product->f, p.product->field, p.product->leaf).pi;
        }
        if (e.pi) e.poisson = jacobi_check(*e.pi).verdict.holds();
        if (e.pi && e.poisson && p.chart.dim() % 2 == 1 && (p.transversal || p.alpha)) {
            const MultiVector v = p.transversal ? *p.transversal : default_transversal(*p.alpha);
            e.adapted = adapted_forms(*e.pi, v);
        }
        out.push_back(std::move(e));
    }
    return out;
}

DiffForm coordinate_volume(const Chart& c)
{
    std::vector<std::size_t> all(c.dim());
    for (std::size_t i = 0; i < c.dim(); ++i) all[i] = i;
    return DiffForm::basis(c, all);
}

DiffForm volume_for(const Entry& e)
{
    if (e.problem.volume) return *e.problem.volume;
    if (e.adapted) return wedge(e.adapted->alpha, power(e.adapted->omega, static_cast<int>(e.pi->chart().dim() - 1) / 2));
    return coordinate_volume(e.pi->chart());
}

// Random polynomial that stays a function on the chart: angles enter via sin.
Expr chart_function(Gen& g, const Chart& c)
{
    Expr h = g.polynomial(c, 2, 3);
    std::map<std::string, Expr, std::less<>> subs;
    for (const Coordinate& k : c.coordinates()) {
        if (k.periodic) subs[k.name] = Expr::sin(Expr::variable(k.name));
    }
    return subs.empty() ? h : h.substitute(subs);
}

// ---------------------------------------------------------------------------
// 1. Kernel laws

int sign(int p) { return p % 2 == 0 ? 1 : -1; }

Check kernel_laws()
{
    Check c;
    int instances = 0;
    for (int seed = 0; seed < 120; ++seed) {
        Gen g(static_cast<std::uint64_t>(10000 + seed));
        const Chart chart = line_chart(static_cast<std::size_t>(2 + seed % 3));
        const int n = static_cast<int>(chart.dim());
        const std::string tag = "seed " + std::to_string(seed) + ": ";

        const int k = g.integer(0, n - 2);
        const DiffForm eta = g.form(chart, k);
        c.require(is_zero(ext_deriv(ext_deriv(eta))).is_true(), tag + "d∘d");

        const MultiVector x = g.multivector(chart, 1);
        const DiffForm theta = g.form(chart, g.integer(1, n));
        const DiffForm cartan = lie_derivative(x, theta) - ext_deriv(interior(x, theta)) - interior(x, ext_deriv(theta));
        c.require(is_zero(cartan).is_true(), tag + "Cartan");

        const int p = g.integer(0, n);
        const int q = g.integer(0, n - p);
        const DiffForm a = g.form(chart, p);
        const DiffForm b = g.form(chart, q);
        c.require(wedge(a, b) == Expr(sign(p * q)) * wedge(b, a), tag + "graded commutativity");

        const int r = g.integer(1, std::min(n, 3));
        const int s = g.integer(1, std::min(n, 3));
        const MultiVector P = g.multivector(chart, r);
        const MultiVector Q = g.multivector(chart, s);
        c.require(is_zero(schouten(P, Q) + Expr(sign((r - 1) * (s - 1))) * schouten(Q, P)).is_true(),
                  tag + "Schouten symmetry");

        const MultiVector A = g.multivector(chart, g.integer(1, 2));
        const MultiVector B = g.multivector(chart, g.integer(0, 2));
        const MultiVector C = g.multivector(chart, g.integer(0, std::max(0, std::min(2, n - B.degree()))));
        const MultiVector leibniz = schouten(A, wedge(B, C)) - wedge(schouten(A, B), C) -
                                    Expr(sign((A.degree() - 1) * B.degree())) * wedge(B, schouten(A, C));
        c.require(is_zero(leibniz).is_true(), tag + "Schouten Leibniz");
        ++instances;
    }
    c.detail = std::to_string(instances) + " random instances, dim 2..4, 5 laws each";
    return c;
}

// ---------------------------------------------------------------------------
// 2. Jacobi dual path

Check jacobi_dual_path(const std::vector<Entry>& corpus)
{
    Check c;
    int random = 0;
    int poisson = 0;
    for (int seed = 0; seed < 60; ++seed) {
        Gen g(static_cast<std::uint64_t>(20000 + seed));
        const Chart chart = line_chart(static_cast<std::size_t>(3 + seed % 2));
        // Odd seeds give f ∂x∧∂y, Poisson by construction.
        const MultiVector pi = seed % 2 ? MultiVector::basis(chart, {0, 1}, g.polynomial(chart)) : g.multivector(chart, 2);
        const JacobiReport r = jacobi_check(pi);
        c.require(r.paths_agree, "random seed " + std::to_string(seed) + ": " + pi.str());
        c.require(r.verdict.truth != Truth::Unknown, "random seed " + std::to_string(seed) + " undecided");
        if (seed % 2) c.require(r.verdict.holds(), "f ∂x∧∂y judged non-Poisson: " + pi.str());
        if (r.verdict.holds()) ++poisson;
        ++random;
    }
    int entries = 0;
    for (const Entry& e : corpus) {
        if (!e.pi) continue;
        c.require(jacobi_check(*e.pi).paths_agree, e.file);
        ++entries;
    }
    c.detail = std::to_string(random) + " random bivectors (" + std::to_string(poisson) + " Poisson) + " +
               std::to_string(entries) + " corpus structures";
    return c;
}

// ---------------------------------------------------------------------------
// 3. Affine example

Check affine_example()
{
    Check c;
    const Problem p = load_problem(kCorpus + "/affine.problem");
    const MultiVector& pi = *p.bivector;
    c.require(jacobi_check(pi).verdict.is_true(), "jacobi not symbolically true");

    const BTransversality bt = b_transversality_check(pi, 1);
    c.require(bt.verdict.is_true(), "b-transversality not symbolically true");
    c.require(bt.critical_locus == "y = 0", "critical locus '" + bt.critical_locus + "'");
    c.require(bt.h == Expr::variable("y"), "top power " + bt.h.str());

    const DiffForm theta = DiffForm::parse("dx^dy", p.chart);
    const MultiVector vmod = modular_field(pi, theta).field;
    c.require(vmod == MultiVector::parse("∂x", p.chart), "modular field " + vmod.str());
    c.require(vmod == hamiltonian_vf(standard_structure(theta), Expr::variable("y")), "modular field is not u_y");
    c.require(apply_vector(vmod, Expr::variable("y")).is_zero(), "modular field not tangent to y = 0");
    c.detail = "critical locus '" + bt.critical_locus + "', v_mod = " + vmod.str() + " = u_y";
    return c;
}

// ---------------------------------------------------------------------------
// 4. Torus example

Check torus_example(const std::vector<Entry>& corpus)
{
    Check c;
    const Entry* t3 = nullptr;
    for (const Entry& e : corpus) {
        if (e.file == "t3.problem") t3 = &e;
    }
    if (!t3 || !t3->adapted) {
        c.require(false, "t3.problem missing or without adapted forms");
        return c;
    }
    const Problem& p = t3->problem;
    c.require(is_zero(ext_deriv(*p.alpha)).is_true(), "dα ≠ 0");
    c.require(is_zero(ext_deriv(*p.omega)).is_true(), "dω ≠ 0");

    const UnimodularityResult u = unimodularity_check(*t3->pi, *t3->adapted);
    c.require(u.verdict.is_true(), std::string("unimodularity ") + truth_name(u.verdict.truth));

    const WeinsteinResult w = check_weinstein_identity(*t3->pi, *t3->adapted);
    c.require(w.verdict.holds() && w.tangent.holds(), "Weinstein identity");

    const BExtension ext = extend_to_b(*t3->pi, *t3->adapted);
    c.require(ext.omega_closed.is_true(), "dω̃ ≠ 0");
    c.require(ext.divisible.holds(), "Π̃² not divisible by t");
    const MultiVector sq = power(ext.pi_tilde, 2);
    const std::string t = ext.bivector_chart.name(ext.bivector_chart.dim() - 1);
    bool divisible = sq.terms().size() == 1;
    for (const auto& [blade, coeff] : sq.terms()) divisible = divisible && coeff.substitute({{t, Expr(0)}}).is_zero();
    c.require(divisible, "Π̃² does not vanish at t = 0");
    int nonzero = 0;
    for (const Witness& s : ext.quotient_samples) nonzero += std::abs(s.value) > 1e-9;
    c.require(ext.quotient_samples.size() == 10 && nonzero == 10, "quotient vanishes at a sample");
    c.detail = "unimodular, Weinstein leafwise, Π̃²/t = " + ext.quotient.str() + " nonzero at " + std::to_string(nonzero) + "/10";
    return c;
}

// ---------------------------------------------------------------------------
// 5. Modular-field laws

Check modular_laws(const std::vector<Entry>& corpus)
{
    Check c;
    int entries = 0;
    Gen g(555);
    for (const Entry& e : corpus) {
        if (!e.pi || !e.poisson) continue;
        const MultiVector& pi = *e.pi;
        const DiffForm theta = volume_for(e);
        const ModularField m = modular_field(pi, theta);
        c.require(is_zero(lie_derivative(m.field, theta)).holds(), e.file + ": L_v Θ");
        c.require(is_zero(lie_derivative(m.field, pi)).holds(), e.file + ": L_v Π");
        if (e.adapted) c.require(is_zero(interior(m.field, e.adapted->alpha)).holds(), e.file + ": α(v_mod)");
        // Θ' = e^h Θ gives v' = v − u_h.
        for (int i = 0; i < 10; ++i) {
            const Expr h = chart_function(g, pi.chart());
            const MultiVector changed = modular_field(pi, Expr::exp(h) * theta).field;
            c.require(is_zero(changed - m.field + hamiltonian_vf(pi, h)).holds(), e.file + ": volume change " + h.str());
        }
        ++entries;
    }
    c.require(entries >= 6, "fewer than 6 Poisson corpus entries");
    c.detail = std::to_string(entries) + " Poisson corpus entries, 10 volume changes each";
    return c;
}

// ---------------------------------------------------------------------------
// 6. Unimodular ⟺ first class vanishes

// ∮ ι_v ω along the coordinate loop through `base`, by the trapezoid rule
// (exact up to rounding for trigonometric polynomials).
double loop_integral(const MultiVector& v, const DiffForm& omega, const std::string& coordinate, const Witness& base)
{
    const Chart& chart = omega.chart();
    const std::size_t k = chart.require(coordinate);
    const Expr integrand = interior(MultiVector::basis(chart, {k}), interior(v, omega)).scalar_value();
    Assignment p;
    for (const auto& [n, x] : base.point) p[n] = x;
    const int steps = 256;
    double sum = 0;
    for (int i = 0; i < steps; ++i) {
        p[coordinate] = 2 * M_PI * i / steps;
        sum += integrand.evaluate(p);
    }
    return sum * 2 * M_PI / steps;
}

Check unimodular_equivalence(const std::vector<Entry>& corpus)
{
    Check c;
    int decided = 0;
    int vanishing = 0;
    for (const Entry& e : corpus) {
        if (!e.adapted) continue;
        const MultiVector& pi = *e.pi;
        const AdaptedForms& a = *e.adapted;
        const int n = static_cast<int>(pi.chart().dim() - 1) / 2;
        const UnimodularityResult u = unimodularity_check(pi, a, e.problem.certificate_f);
        for (const CertificateTrial& t : u.trials) c.require(t.agree, e.file + ": certificate tests disagree");
        if (u.verdict.is_true()) {
            // c_F = 0 via β = df mod α; unimodular via the rescaled volume.
            const Expr& f = u.certificate->f;
            c.require(is_zero(wedge(u.beta - differential(pi.chart(), f), a.alpha)).holds(), e.file + ": β − df ∉ α∧Ω");
            const DiffForm theta = Expr::exp(-f) * wedge(a.alpha, power(a.omega, n));
            c.require(is_zero(modular_field(pi, theta).field).holds(), e.file + ": rescaled volume not invariant");
            ++decided;
            ++vanishing;
        } else if (u.verdict.is_false()) {
            // The loop integral of ι_{v_mod} ω is unchanged by v ↦ v − u_h, so a
            // nonzero value rules out every invariant volume.
            const PeriodObstruction& o = *u.obstruction;
            const MultiVector vmod = modular_field(pi, wedge(a.alpha, power(a.omega, n))).field;
            const double integral = loop_integral(vmod, a.omega, o.coordinate, o.base_point);
            c.require(std::abs(integral) > 1e-6, e.file + ": modular loop integral vanishes");
            c.require(std::abs(std::abs(integral) - std::abs(o.period)) < 1e-6,
                      e.file + ": loop integral " + std::to_string(integral) + " vs period " + std::to_string(o.period));
            ++decided;
        }
    }
    c.require(decided >= 6, "only " + std::to_string(decided) + " corpus entries decided");
    c.detail = std::to_string(decided) + " corpus entries decided (" + std::to_string(vanishing) + " unimodular, " +
               std::to_string(decided - vanishing) + " obstructed), both sides computed independently";
    return c;
}

// ---------------------------------------------------------------------------
// 7. Transverse Poisson fields

Check transverse_poisson(const std::vector<Entry>& corpus)
{
    Check c;
    std::vector<std::pair<std::string, std::pair<MultiVector, AdaptedForms>>> cases;
    for (const Entry& e : corpus) {
        if (e.adapted) cases.push_back({e.file, {*e.pi, *e.adapted}});
    }
    const Chart xyz = line_chart(3);
    const MultiVector flat = MultiVector::parse("∂x^∂y", xyz);
    cases.push_back({"shifted field", {flat, adapted_forms(flat, MultiVector::parse("∂z + x ∂y", xyz))}});
    cases.push_back({"rescaled field", {flat, adapted_forms(flat, MultiVector::parse("(1 + x^2) ∂z", xyz))}});

    int poisson = 0;
    int witnessed = 0;
    for (const auto& [name, s] : cases) {
        const auto& [pi, a] = s;
        const TransversePoissonResult r = check_transverse_poisson(pi, a);
        const bool lie_zero = r.poisson_field.holds();
        const bool closed = r.alpha_closed.holds() && r.omega_closed.holds();
        c.require(r.poisson_field.truth != Truth::Unknown, name + ": L_vΠ undecided");
        c.require(lie_zero == closed, name + ": L_vΠ = 0 but forms not closed, or conversely");
        c.require(r.verdict.holds(), name + ": equivalence verdict");
        if (lie_zero) ++poisson;
        if (r.alpha_closed.is_false()) {
            c.require(r.alpha_witness.has_value(), name + ": no coordinate witness for dα ≠ 0");
            if (r.alpha_witness) {
                // dα(v, u_f) at the witness point, recomputed here.
                const Expr f = Expr::variable(r.alpha_witness->f);
                const Expr value = evaluate_on(ext_deriv(a.alpha), {a.transversal, hamiltonian_vf(pi, f)});
                Assignment p;
                for (const auto& [n, x] : r.alpha_witness->at.point) p[n] = x;
                c.require(std::abs(value.evaluate(p)) > 1e-9, name + ": witness f = " + r.alpha_witness->f + " is not one");
                ++witnessed;
            }
        }
    }
    c.require(poisson > 0 && witnessed > 0, "both directions need an instance");
    c.detail = std::to_string(cases.size()) + " structures: " + std::to_string(poisson) + " Poisson transversals, " +
               std::to_string(witnessed) + " with coordinate witness for dα ≠ 0";
    return c;
}

// ---------------------------------------------------------------------------
// 8. Representative independence

Check representative_independence(const std::vector<Entry>& corpus)
{
    Check c;
    Gen g(888);
    int rounds = 0;
    for (const Entry& e : corpus) {
        if (e.file != "t3.problem" && e.file != "exp_defining.problem" && e.file != "flat.problem") continue;
        const AdaptedForms& a = *e.adapted;
        const Chart& chart = a.alpha.chart();
        const DiffForm beta = compute_beta(a.alpha, a.transversal).beta;
        const bool alpha_closed = is_zero(ext_deriv(a.alpha)).is_true();
        const DiffForm mu = compute_mu(a.omega, a.alpha, a.transversal).mu;
        for (int i = 0; i < 10; ++i) {
            const Expr h = chart_function(g, chart);
            // α' = e^{-h} α with v' = e^h v: β' = β − dh mod α.
            const DiffForm beta2 = compute_beta(Expr::exp(-h) * a.alpha, Expr::exp(h) * a.transversal).beta;
            c.require(is_zero(wedge(beta2 - beta + differential(chart, h), a.alpha)).holds(), e.file + ": β' for h = " + h.str());
            if (!alpha_closed) continue;
            DiffForm xi(chart, 1);
            for (std::size_t k = 0; k < chart.dim(); ++k) xi.add(Blade{1} << k, chart_function(g, chart));
            const DiffForm dxi = ext_deriv(xi);
            const DiffForm right = compute_mu(a.omega + wedge(xi, a.alpha), a.alpha, a.transversal).mu;
            c.require(is_zero(wedge(right - mu - dxi, a.alpha)).holds(), e.file + ": μ' for ω + ξ∧α");
            const DiffForm left = compute_mu(a.omega + wedge(a.alpha, xi), a.alpha, a.transversal).mu;
            c.require(is_zero(wedge(left - mu + dxi, a.alpha)).holds(), e.file + ": μ' for ω + α∧ξ");
        }
        ++rounds;
    }
    c.require(rounds == 3, "expected corpus entries missing");
    c.detail = "10 random h and ξ on " + std::to_string(rounds) + " structures; ω+ξ∧α gives μ+dξ, ω+α∧ξ gives μ−dξ";
    return c;
}

// ---------------------------------------------------------------------------
// 9. Product family

Check product_family()
{
    Check c;
    const Chart chart({angle_coordinate("theta"), line_coordinate("x"), line_coordinate("y"), line_coordinate("z")});
    const MultiVector x = MultiVector::parse("∂z", chart);
    const MultiVector leaf = MultiVector::parse("∂x^∂y", chart);
    const ProductBPoisson s = build_product_bpoisson(chart, "theta", parse_scalar("sin(theta)", chart), x, leaf);
    c.require(s.zeros.size() == 2 && std::abs(s.zeros[0]) < 1e-9 && std::abs(s.zeros[1] - M_PI) < 1e-9, "critical copies");
    c.require(s.jacobi.verdict.is_true(), "jacobi for sin θ");
    c.require(s.linear_vanishing.holds(), "linear vanishing for sin θ");

    const ProductBPoisson one = build_product_bpoisson(chart, "theta", Expr(1), x, leaf);
    c.require(one.zeros.empty() && one.regular.holds(), "f ≡ 1 not regular");
    c.require(one.jacobi.verdict.is_true(), "jacobi for f ≡ 1");
    c.require(one.n_first_vanishes.is_true() && one.n_second_vanishes.is_true(), "invariants of N");
    c.require(one.n_transverse && one.n_transverse->verdict.holds(), "transverse Poisson criterion on N");
    std::ostringstream d;
    d << "critical copies at θ = " << s.zeros.at(0) << ", " << s.zeros.at(1) << "; f ≡ 1 regular, dα_N = dω_N = 0";
    c.detail = d.str();
    return c;
}

// ---------------------------------------------------------------------------
// 10. CLI

struct Run {
    int exit = -1;
    std::string out;
};

Run run_cli(const std::string& args)
{
    const fs::path out = fs::temp_directory_path() / ("corank-acceptance-" + std::to_string(::getpid()) + ".out");
    const std::string command = "'" + kCli + "' " + args + " > '" + out.string() + "' 2>/dev/null";
    const int status = std::system(command.c_str());
    Run r;
    r.exit = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out, std::ios::binary);
    r.out.assign(std::istreambuf_iterator<char>(in), {});
    fs::remove(out);
    return r;
}

Check cli_behaviour()
{
    Check c;
    std::map<std::string, int> expected;
    {
        std::ifstream m(kCorpus + "/manifest");
        std::string line;
        while (std::getline(m, line)) {
            std::istringstream fields(line);
            std::string name;
            int code = 0;
            if (line.empty() || line[0] == '#' || !(fields >> name >> code)) continue;
            expected[name] = code;
        }
    }
    int files = 0;
    for (const auto& [name, code] : expected) {
        const std::string path = "'" + kCorpus + "/" + name + "'";
        const Run a = run_cli("check " + path);
        const Run b = run_cli("check " + path);
        c.require(a.exit == code, name + ": exit " + std::to_string(a.exit) + ", expected " + std::to_string(code));
        c.require(a.out == b.out && a.exit == b.exit, name + ": reruns differ");
        ++files;
    }
    const Run s1 = run_cli("check --seed 7 '" + kCorpus + "/t3.problem'");
    const Run s2 = run_cli("check --seed 7 '" + kCorpus + "/t3.problem'");
    c.require(s1.exit == 0 && s1.out == s2.out && s1.out.find("\"seed\": 7") != std::string::npos, "seeded reruns");
    c.require(run_cli("").exit == 2, "no verb should exit 2");
    c.require(run_cli("check --bogus x").exit == 2, "unknown flag should exit 2");
    c.require(run_cli("check /nonexistent.problem").exit == 2, "missing file should exit 2");
    c.require(run_cli("check '" + kCorpus + "/invalid_expression.problem'").exit == 2, "invalid file should exit 2");
    const Run corpus = run_cli("corpus '" + kCorpus + "'");
    c.require(corpus.exit == 0 && corpus.out.find("\"mismatches\": 0") != std::string::npos, "corpus verb");
    const Run render1 = run_cli("render '" + kCorpus + "/affine.problem'");
    c.require(render1.exit == 0 && render1.out == run_cli("render '" + kCorpus + "/affine.problem'").out, "render");
    c.detail = std::to_string(files) + " corpus files run twice byte-identical with expected exits; usage/IO errors exit 2";
    return c;
}

}  // namespace

int main()
{
    const auto start = std::chrono::steady_clock::now();
    const std::vector<Entry> corpus = load_corpus();

    const std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
        {"kernel laws", kernel_laws},
        {"jacobi dual path", [&] { return jacobi_dual_path(corpus); }},
        {"affine example", affine_example},
        {"torus example", [&] { return torus_example(corpus); }},
        {"modular-field laws", [&] { return modular_laws(corpus); }},
        {"unimodular iff first class vanishes", [&] { return unimodular_equivalence(corpus); }},
        {"transverse Poisson field criterion", [&] { return transverse_poisson(corpus); }},
        {"representative independence", [&] { return representative_independence(corpus); }},
        {"product family", product_family},
        {"cli determinism and exit codes", cli_behaviour},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Check c;
        try {
            c = criteria[i].second();
        } catch (const std::exception& e) {
            c.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool ok = c.problems.empty();
        failed += !ok;
        std::printf("%s %2zu  %-38s %6.2fs  %s\n", ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs,
                    ok ? c.detail.c_str() : c.problems.front().c_str());
        for (std::size_t k = 1; k < c.problems.size() && k < 6; ++k) std::printf("          %s\n", c.problems[k].c_str());
    }
    const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%zu/%zu criteria passed in %.2fs\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size(), total);
    return failed == 0 ? 0 : 1;
}

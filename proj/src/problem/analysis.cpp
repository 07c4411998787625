#include "problem/analysis.hpp"

#include "bgeom/bgeom.hpp"
#include "invariants/invariants.hpp"

#include <json.hpp>

#include <chrono>
#include <exception>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace corank {

namespace {

using Json = nlohmann::ordered_json;

Json witness_json(const Witness& w)
{
    Json point = Json::object();
    for (const auto& [name, value] : w.point) point[name] = value;
    Json out = {{"point", point}, {"value", w.value}};
    if (!w.label.empty()) out["label"] = w.label;
    return out;
}

Json verdict_json(const Verdict& v)
{
    Json out = {{"verdict", truth_name(v.truth)}};
    if (!v.note.empty()) out["note"] = v.note;
    if (v.witness) out["witness"] = witness_json(*v.witness);
    return out;
}

const char* class_word(const Verdict& v)
{
    if (v.holds()) return "vanishes";
    if (v.is_false()) return "does-not-vanish";
    return "undecided";
}

enum class Status { Done, Error, Skipped };

struct Outcome {
    Status status = Status::Done;
    Truth truth = Truth::Unknown;
    bool failed() const { return status != Status::Done || truth == Truth::False; }
};

// Lazily computed shared state; errors are cached and rethrown to every
// analysis that needs the failed piece.
class Session {
public:
    Session(const Problem& p, ZeroTestOptions o) : problem(p), options(o) {}

    const Problem& problem;
    ZeroTestOptions options;

    const MultiVector& pi()
    {
        return cached(pi_, pi_error_, [&] {
            if (problem.bivector) return *problem.bivector;
            return bivector_from_forms(*problem.alpha, *problem.omega, *problem.transversal, options);
        });
    }

    const MultiVector& transversal()
    {
        return cached(v_, v_error_, [&] {
            if (problem.transversal) return *problem.transversal;
            return default_transversal(*problem.alpha, options);
        });
    }

    const AdaptedForms& adapted()
    {
        return cached(adapted_, adapted_error_, [&] { return adapted_forms(pi(), transversal(), options); });
    }

    const UnimodularityResult& unimodularity()
    {
        return cached(unimodularity_, unimodularity_error_,
                      [&] { return unimodularity_check(pi(), adapted(), problem.certificate_f, options); });
    }

    bool odd_with_transversal() const
    {
        return problem.chart.dim() % 2 == 1 && (problem.transversal || problem.alpha);
    }

private:
    template <typename T, typename F>
    const T& cached(std::optional<T>& slot, std::exception_ptr& error, F&& make)
    {
        if (error) std::rethrow_exception(error);
        if (!slot) {
            try {
                slot = make();
            } catch (...) {
                error = std::current_exception();
                throw;
            }
        }
        return *slot;
    }

    std::optional<MultiVector> pi_;
    std::exception_ptr pi_error_;
    std::optional<MultiVector> v_;
    std::exception_ptr v_error_;
    std::optional<AdaptedForms> adapted_;
    std::exception_ptr adapted_error_;
    std::optional<UnimodularityResult> unimodularity_;
    std::exception_ptr unimodularity_error_;
};

std::vector<std::string> prerequisites(const std::string& name, const Session& s)
{
    if (name == "adapted_forms") return {"jacobi"};
    if (name == "first_obstruction" || name == "second_obstruction" || name == "weinstein" ||
        name == "unimodularity" || name == "transverse_poisson" || name == "b_extension") {
        return {"adapted_forms"};
    }
    if (name == "modular") {
        if (s.problem.volume) return {"jacobi"};
        return {"jacobi", "adapted_forms"};
    }
    return {};
}

Json run_jacobi(Session& s)
{
    const JacobiReport r = jacobi_check(s.pi(), s.options);
    Json out = verdict_json(r.verdict);
    out["schouten_square"] = r.schouten_square.str();
    out["schouten"] = verdict_json(r.schouten);
    out["jacobiator"] = verdict_json(r.jacobiator);
    out["paths_agree"] = r.paths_agree;
    return out;
}

Json run_corank(Session& s)
{
    const MultiVector& pi = s.pi();
    const int n = static_cast<int>(pi.chart().dim() / 2);
    const CorankEvidence ev = corank_evidence(pi, n, s.options);
    Verdict v;
    if (ev.top_power_zero.holds()) {
        v = Verdict::refuted(make_witness(pi.chart(), midpoint(pi.chart()), 0.0, "Pi^n"), "Pi^n vanishes identically");
    } else if (ev.degenerate_point) {
        v = Verdict::refuted(*ev.degenerate_point, "Pi^n vanishes at a sample point");
    } else {
        bool constant = false;
        for (const auto& [b, c] : ev.top_power.terms()) {
            auto q = c.as_rational();
            constant = constant || (q && *q != 0);
        }
        v = constant ? Verdict::symbolic()
                     : Verdict{Truth::ProbablyTrue, std::nullopt,
                               "Pi^n nonzero at " + std::to_string(ev.nonvanishing) + " sample points"};
    }
    Json out = verdict_json(v);
    out["n"] = n;
    out["top_power"] = ev.top_power.str();
    out["samples"] = ev.samples;
    out["nonvanishing"] = ev.nonvanishing;
    return out;
}

Json run_b_transversality(Session& s)
{
    const MultiVector& pi = s.pi();
    const BTransversality r = b_transversality_check(pi, static_cast<int>(pi.chart().dim() / 2), s.options);
    Json out = verdict_json(r.verdict);
    out["h"] = r.h.str();
    out["critical_locus"] = r.critical_locus;
    out["sampled_zeros"] = r.zero_samples.size();
    return out;
}

Json run_adapted(Session& s)
{
    const AdaptedForms& a = s.adapted();
    Verdict v = a.postcondition;
    Json out = Json::object();
    out["alpha"] = a.alpha.str();
    out["omega"] = a.omega.str();
    out["transversal"] = a.transversal.str();
    out["postcondition"] = verdict_json(a.postcondition);
    if (s.problem.bivector && s.problem.alpha) {
        const Verdict same = is_zero(a.alpha - *s.problem.alpha, s.options);
        out["matches_supplied_alpha"] = verdict_json(same);
        v = all_of(v, same);
    }
    if (s.problem.bivector && s.problem.omega) {
        const Verdict same = is_zero(a.omega - *s.problem.omega, s.options);
        out["matches_supplied_omega"] = verdict_json(same);
        v = all_of(v, same);
    }
    Json head = verdict_json(v);
    head.update(out);
    return head;
}

Json run_first_obstruction(Session& s)
{
    const AdaptedForms& a = s.adapted();
    const BetaResult b = compute_beta(a.alpha, a.transversal, s.options);
    const UnimodularityResult& u = s.unimodularity();
    Json out = verdict_json(u.verdict);
    out["c"] = class_word(u.verdict);
    out["beta"] = b.beta.str();
    out["postcondition"] = verdict_json(b.postcondition);
    out["closed_mod_alpha"] = verdict_json(b.closed_mod_alpha);
    out["godbillon_vey"] = godbillon_vey(b.beta).str();
    return out;
}

Json run_second_obstruction(Session& s)
{
    const SecondObstructionResult r = second_obstruction_check(s.adapted(), s.problem.certificate_nu, s.options);
    Json out = verdict_json(r.verdict);
    out["sigma"] = class_word(r.verdict);
    out["mu"] = r.mu.mu.str();
    out["postcondition"] = verdict_json(r.mu.postcondition);
    out["alpha_closed"] = verdict_json(r.mu.alpha_closed);
    if (!r.mu.warning.empty()) out["warning"] = r.mu.warning;
    if (r.certificate && r.certificate->nu) {
        out["certificate"] = {{"nu", r.certificate->nu->str()}, {"origin", r.certificate->origin}};
    }
    return out;
}

Json run_modular(Session& s)
{
    const MultiVector& pi = s.pi();
    DiffForm theta;
    if (s.problem.volume) {
        theta = *s.problem.volume;
    } else {
        const AdaptedForms& a = s.adapted();
        theta = wedge(a.alpha, power(a.omega, static_cast<int>(pi.chart().dim() - 1) / 2));
    }
    const ModularField m = modular_field(pi, theta, s.options);
    Verdict v = all_of(m.preserves_volume, m.preserves_pi);
    Json out = Json::object();
    out["volume"] = theta.str();
    out["field"] = m.field.str();
    out["preserves_volume"] = verdict_json(m.preserves_volume);
    out["preserves_pi"] = verdict_json(m.preserves_pi);
    if (s.odd_with_transversal()) {
        const Verdict tangent = is_zero(interior(m.field, s.adapted().alpha).scalar_value(), pi.chart(), s.options);
        out["tangent"] = verdict_json(tangent);
        v = all_of(v, tangent);
    }
    Json head = verdict_json(v);
    head.update(out);
    return head;
}

Json run_weinstein(Session& s)
{
    const WeinsteinResult w = check_weinstein_identity(s.pi(), s.adapted(), s.options);
    Json out = verdict_json(all_of(w.verdict, w.tangent));
    out["modular_field"] = w.modular.str();
    out["contracted"] = w.contracted.str();
    out["beta"] = w.beta.str();
    out["tangent"] = verdict_json(w.tangent);
    out["leafwise"] = verdict_json(w.verdict);
    return out;
}

Json run_unimodularity(Session& s)
{
    const UnimodularityResult& u = s.unimodularity();
    Json out = verdict_json(u.verdict);
    out["beta"] = u.beta.str();
    if (u.certificate) out["certificate"] = {{"f", u.certificate->f.str()}, {"origin", u.certificate->origin}};
    if (u.obstruction) {
        out["obstruction"] = {{"loop", u.obstruction->coordinate},
                              {"period", u.obstruction->period},
                              {"base_point", witness_json(u.obstruction->base_point)}};
    }
    Json trials = Json::array();
    for (const auto& t : u.trials) {
        trials.push_back({{"f", t.certificate.f.str()},
                          {"origin", t.certificate.origin},
                          {"beta_test", verdict_json(t.beta_test)},
                          {"certificate_test", verdict_json(t.certificate_test)},
                          {"modular_test", verdict_json(t.modular_test)},
                          {"agree", t.agree}});
    }
    out["trials"] = trials;
    out["godbillon_vey"] = u.godbillon_vey.str();
    return out;
}

Json bracket_witness_json(const BracketWitness& w)
{
    Json out = {{"f", w.f}};
    if (!w.g.empty()) out["g"] = w.g;
    out["at"] = witness_json(w.at);
    return out;
}

Json run_transverse_poisson(Session& s)
{
    const TransversePoissonResult r = check_transverse_poisson(s.pi(), s.adapted(), s.options);
    Json out = verdict_json(r.verdict);
    out["lie_pi"] = r.lie_pi.str();
    out["poisson_field"] = verdict_json(r.poisson_field);
    out["alpha_closed"] = verdict_json(r.alpha_closed);
    out["omega_closed"] = verdict_json(r.omega_closed);
    out["forward"] = verdict_json(r.forward);
    out["alpha_identity"] = verdict_json(r.alpha_identity);
    out["omega_identity"] = verdict_json(r.omega_identity);
    out["omega_bracket_form"] = verdict_json(r.omega_bracket_form);
    if (r.alpha_witness) out["alpha_witness"] = bracket_witness_json(*r.alpha_witness);
    if (r.omega_witness) out["omega_witness"] = bracket_witness_json(*r.omega_witness);
    return out;
}

Json run_b_extension(Session& s)
{
    const BExtension e = extend_to_b(s.pi(), s.adapted(), s.options);
    Verdict v = e.omega_closed;
    for (const Verdict* part : {&e.restriction, &e.divisible, &e.quotient_nonzero, &e.round_trip, &e.projection}) {
        v = all_of(v, *part);
    }
    Json out = verdict_json(v);
    out["constructed"] = v.holds();
    out["coordinate"] = e.form_chart.name(e.form_chart.dim() - 1);
    out["omega_tilde"] = e.omega_tilde.str();
    out["pi_tilde"] = e.pi_tilde.str();
    out["quotient"] = e.quotient.str();
    out["omega_closed"] = verdict_json(e.omega_closed);
    out["restriction"] = verdict_json(e.restriction);
    out["divisible"] = verdict_json(e.divisible);
    out["quotient_nonzero"] = verdict_json(e.quotient_nonzero);
    out["round_trip"] = verdict_json(e.round_trip);
    out["projection"] = verdict_json(e.projection);
    return out;
}

Json run_product(Session& s)
{
    const ProductSpec& spec = *s.problem.product;
    const ProductBPoisson p = build_product_bpoisson(s.problem.chart, spec.angle, spec.f, spec.field, spec.leaf, s.options);
    Verdict v = all_of(p.jacobi.verdict, p.transversality.verdict);
    v = all_of(v, p.linear_vanishing);
    v = all_of(v, p.transverse);
    Json out = verdict_json(v);
    out["pi"] = p.pi.str();
    out["jacobi"] = verdict_json(p.jacobi.verdict);
    out["zeros"] = p.zeros;
    out["slopes"] = p.zero_slopes;
    out["linear_vanishing"] = verdict_json(p.linear_vanishing);
    out["regular"] = verdict_json(p.regular);
    out["b_transversality"] = verdict_json(p.transversality.verdict);
    out["critical_locus"] = p.transversality.critical_locus;
    out["transverse"] = verdict_json(p.transverse);
    Json n = Json::object();
    if (p.n_forms) {
        n["alpha"] = p.n_forms->alpha.str();
        n["omega"] = p.n_forms->omega.str();
    }
    n["alpha_closed"] = verdict_json(p.n_first_vanishes);
    n["omega_closed"] = verdict_json(p.n_second_vanishes);
    if (p.n_transverse) n["transverse_poisson"] = verdict_json(p.n_transverse->verdict);
    out["n"] = n;
    return out;
}

Json run_mapping_torus(Session& s)
{
    const MappingTorusSpec& spec = *s.problem.mapping_torus;
    const Verdict v = mapping_torus_check(spec.map, spec.form, s.options);
    Json out = verdict_json(v);
    out["pullback"] = pullback(spec.map, spec.form).str();
    out["form"] = spec.form.str();
    return out;
}

Json error_json(const Error& e)
{
    Json err = {{"code", error_code_name(e.code())}, {"message", e.what()}};
    if (e.witness()) err["witness"] = witness_json(*e.witness());
    return {{"verdict", "error"}, {"error", err}};
}

const std::map<std::string, std::function<Json(Session&)>>& runners()
{
    static const std::map<std::string, std::function<Json(Session&)>> table = {
        {"jacobi", run_jacobi},
        {"corank", run_corank},
        {"b_transversality", run_b_transversality},
        {"adapted_forms", run_adapted},
        {"first_obstruction", run_first_obstruction},
        {"second_obstruction", run_second_obstruction},
        {"modular", run_modular},
        {"weinstein", run_weinstein},
        {"unimodularity", run_unimodularity},
        {"transverse_poisson", run_transverse_poisson},
        {"b_extension", run_b_extension},
        {"product", run_product},
        {"mapping_torus", run_mapping_torus},
    };
    return table;
}

Truth parse_truth(const std::string& name)
{
    for (Truth t : {Truth::True, Truth::ProbablyTrue, Truth::False, Truth::Unknown}) {
        if (name == truth_name(t)) return t;
    }
    return Truth::Unknown;
}

}  // namespace

const char* tool_version() { return "0.1.0"; }

RunResult analyze(const Problem& problem, const RunOptions& options)
{
    ZeroTestOptions zo;
    zo.seed = options.seed.value_or(problem.seed.value_or(zo.seed));
    zo.trials = options.trials.value_or(problem.trials.value_or(zo.trials));
    zo.tolerance = options.tolerance.value_or(problem.tolerance.value_or(zo.tolerance));
    Session session(problem, zo);

    // Close the requested set under prerequisites.
    std::set<std::string> wanted;
    std::function<void(const std::string&)> want = [&](const std::string& name) {
        if (!wanted.insert(name).second) return;
        for (const auto& dep : prerequisites(name, session)) want(dep);
    };
    for (const auto& r : problem.analyses) want(r.name);

    Json analyses = Json::object();
    std::map<std::string, Outcome> outcomes;
    bool failed = false;
    for (const auto& name : analysis_vocabulary()) {
        if (!wanted.count(name)) continue;
        Outcome outcome;
        Json entry;
        std::string blocker;
        for (const auto& dep : prerequisites(name, session)) {
            if (outcomes.at(dep).failed()) {
                blocker = dep;
                break;
            }
        }
        const auto start = std::chrono::steady_clock::now();
        if (!blocker.empty()) {
            outcome.status = Status::Skipped;
            entry = {{"verdict", "skipped"}, {"reason", "prerequisite '" + blocker + "' did not hold"}};
        } else {
            try {
                entry = runners().at(name)(session);
                outcome.truth = parse_truth(entry["verdict"].get<std::string>());
            } catch (const Error& e) {
                outcome.status = Status::Error;
                entry = error_json(e);
            } catch (const std::exception& e) {
                outcome.status = Status::Error;
                entry = error_json(Error(ErrorCode::Internal, e.what()));
            }
        }
        if (options.timing) {
            const auto elapsed = std::chrono::steady_clock::now() - start;
            entry["elapsed_ms"] = std::chrono::duration<double, std::milli>(elapsed).count();
        }
        failed = failed || outcome.failed();
        outcomes[name] = outcome;
        analyses[name] = std::move(entry);
    }

    Json summary = Json::object();
    auto verdict_of = [&](const char* name) { return analyses[name]["verdict"].get<std::string>(); };
    if (analyses.contains("jacobi")) summary["jacobi"] = verdict_of("jacobi");
    if (analyses.contains("b_transversality")) {
        summary["b_transversality"] = verdict_of("b_transversality");
        if (analyses["b_transversality"].contains("critical_locus")) {
            summary["critical_locus"] = analyses["b_transversality"]["critical_locus"];
        }
    }
    if (analyses.contains("modular") && analyses["modular"].contains("field")) {
        summary["modular_field"] = analyses["modular"]["field"];
    }
    if (analyses.contains("unimodularity")) summary["unimodular"] = verdict_of("unimodularity");
    if (analyses.contains("first_obstruction")) {
        const Json& e = analyses["first_obstruction"];
        summary["c"] = e.contains("c") ? e["c"].get<std::string>() : e["verdict"].get<std::string>();
    }
    if (analyses.contains("second_obstruction")) {
        const Json& e = analyses["second_obstruction"];
        summary["sigma"] = e.contains("sigma") ? e["sigma"].get<std::string>() : e["verdict"].get<std::string>();
    }
    if (analyses.contains("b_extension")) {
        const Json& e = analyses["b_extension"];
        summary["b_extension"] = e.contains("constructed") ? (e["constructed"].get<bool>() ? "constructed" : "failed")
                                                           : e["verdict"].get<std::string>();
    }
    summary["failed"] = failed;

    Json report;
    report["schema"] = kReportSchema;
    report["tool"] = {{"name", "corank"}, {"version", tool_version()}};
    report["problem"] = std::filesystem::path(problem.name).filename().string();
    report["seed"] = zo.seed;
    report["trials"] = zo.trials;
    report["tolerance"] = zo.tolerance;
    Json requested = Json::array();
    for (const auto& r : problem.analyses) requested.push_back(r.name);
    report["requested"] = requested;
    report["analyses"] = analyses;
    report["summary"] = summary;
    return {report.dump(2) + "\n", failed};
}

std::string render(const Problem& problem)
{
    std::ostringstream out;
    const Chart& chart = problem.chart;
    out << "chart:";
    for (const auto& c : chart.coordinates()) {
        out << " " << c.name << (c.periodic ? " (angle)" : "");
    }
    for (const auto& p : chart.parameters()) out << " " << p.name << " (parameter)";
    out << "\n";
    if (problem.bivector) out << "bivector: " << problem.bivector->str() << "\n";
    if (problem.alpha) out << "alpha: " << problem.alpha->str() << "\n";
    if (problem.omega) out << "omega: " << problem.omega->str() << "\n";
    if (problem.transversal) out << "transversal: " << problem.transversal->str() << "\n";
    if (problem.volume) out << "volume: " << problem.volume->str() << "\n";
    if (!problem.bivector && problem.alpha && problem.omega && problem.transversal) {
        out << "bivector (from forms): "
            << bivector_from_forms(*problem.alpha, *problem.omega, *problem.transversal).str() << "\n";
    }
    if (problem.certificate_f) out << "certificate f: " << problem.certificate_f->str() << "\n";
    if (problem.certificate_nu) out << "certificate nu: " << problem.certificate_nu->str() << "\n";
    if (problem.product) {
        const ProductSpec& p = *problem.product;
        out << "product: " << p.f.str() << " ∂" << p.angle << "^(" << p.field.str() << ") + " << p.leaf.str() << "\n";
    }
    if (problem.mapping_torus) {
        const MappingTorusSpec& m = *problem.mapping_torus;
        out << "mapping torus:";
        for (std::size_t i = 0; i < chart.dim(); ++i) out << " " << chart.name(i) << " -> " << m.map.components[i].str() << ";";
        out << " form " << m.form.str() << "\n";
    }
    return out.str();
}

}  // namespace corank

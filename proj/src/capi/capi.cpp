#include "corank/corank.h"

#include "problem/analysis.hpp"
#include "problem/problem.hpp"
#include "poisson/poisson.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

struct crk_chart {
    std::vector<corank::Coordinate> coordinates;
    std::vector<corank::Parameter> parameters;
    bool strict = false;
    corank::Chart chart;
};

struct crk_form {
    corank::DiffForm value;
    std::string text;
};

struct crk_multivector {
    corank::MultiVector value;
    std::string text;
};

struct crk_problem {
    corank::Problem value;
};

struct crk_report {
    std::string json;
    bool failed = false;
};

namespace {

thread_local std::string last_error;

crk_status status_of(corank::ErrorCode code)
{
    using corank::ErrorCode;
    switch (code) {
    case ErrorCode::Syntax: return CRK_ERR_SYNTAX;
    case ErrorCode::UnknownIdentifier: return CRK_ERR_UNKNOWN_IDENTIFIER;
    case ErrorCode::UnknownCoordinate: return CRK_ERR_UNKNOWN_COORDINATE;
    case ErrorCode::InvalidChart: return CRK_ERR_INVALID_CHART;
    case ErrorCode::ChartMismatch: return CRK_ERR_CHART_MISMATCH;
    case ErrorCode::DegreeMismatch: return CRK_ERR_DEGREE_MISMATCH;
    case ErrorCode::DegreeUnderflow: return CRK_ERR_DEGREE_UNDERFLOW;
    case ErrorCode::Singular: return CRK_ERR_SINGULAR;
    case ErrorCode::DivisionObstructed: return CRK_ERR_DIVISION_OBSTRUCTED;
    case ErrorCode::BadTransversal: return CRK_ERR_BAD_TRANSVERSAL;
    case ErrorCode::NotIntegrable: return CRK_ERR_NOT_INTEGRABLE;
    case ErrorCode::NotTransversal: return CRK_ERR_NOT_TRANSVERSE;
    case ErrorCode::NotCorankOne: return CRK_ERR_NOT_CORANK_ONE;
    case ErrorCode::Degenerate: return CRK_ERR_DEGENERATE;
    case ErrorCode::DegenerateVolume: return CRK_ERR_DEGENERATE_VOLUME;
    case ErrorCode::InvariantsNotVanishing: return CRK_ERR_INVARIANTS_NOT_VANISHING;
    case ErrorCode::NotPoissonField: return CRK_ERR_NOT_POISSON_FIELD;
    case ErrorCode::Undecided: return CRK_ERR_UNDECIDED;
    case ErrorCode::Validation: return CRK_ERR_VALIDATION;
    case ErrorCode::Io: return CRK_ERR_IO;
    case ErrorCode::Internal: return CRK_ERR_INTERNAL;
    }
    return CRK_ERR_INTERNAL;
}

// Runs f, translating exceptions into a status and the thread's last error.
template <typename F>
crk_status guard(F&& f)
{
    try {
        f();
        last_error.clear();
        return CRK_OK;
    } catch (const corank::Error& e) {
        last_error = e.what();
        return status_of(e.code());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return CRK_ERR_INTERNAL;
    } catch (const std::exception& e) {
        last_error = e.what();
        return CRK_ERR_INTERNAL;
    }
}

crk_status missing(const char* what)
{
    last_error = std::string("null argument: ") + what;
    return CRK_ERR_ARGUMENT;
}

corank::ZeroTestOptions zero_options(const crk_options* o)
{
    corank::ZeroTestOptions z;
    if (!o) return z;
    if (o->has_seed) z.seed = o->seed;
    if (o->has_trials) z.trials = o->trials;
    if (o->has_tolerance) z.tolerance = o->tolerance;
    return z;
}

crk_truth truth_of(corank::Truth t)
{
    switch (t) {
    case corank::Truth::True: return CRK_TRUE;
    case corank::Truth::ProbablyTrue: return CRK_PROBABLY_TRUE;
    case corank::Truth::False: return CRK_FALSE;
    case corank::Truth::Unknown: return CRK_UNKNOWN;
    }
    return CRK_UNKNOWN;
}

crk_form* wrap(corank::DiffForm f)
{
    auto* out = new crk_form{std::move(f), {}};
    out->text = out->value.str();
    return out;
}

crk_multivector* wrap(corank::MultiVector p)
{
    auto* out = new crk_multivector{std::move(p), {}};
    out->text = out->value.str();
    return out;
}

std::optional<int> degree_arg(int degree)
{
    if (degree < 0) return std::nullopt;
    return degree;
}

}  // namespace

extern "C" {

const char* crk_version(void) { return corank::tool_version(); }

const char* crk_status_name(crk_status status)
{
    switch (status) {
    case CRK_OK: return "ok";
    case CRK_ERR_ARGUMENT: return "Argument";
    case CRK_ERR_SYNTAX: return "Syntax";
    case CRK_ERR_UNKNOWN_IDENTIFIER: return "UnknownIdentifier";
    case CRK_ERR_UNKNOWN_COORDINATE: return "UnknownCoordinate";
    case CRK_ERR_INVALID_CHART: return "InvalidChart";
    case CRK_ERR_CHART_MISMATCH: return "ChartMismatch";
    case CRK_ERR_DEGREE_MISMATCH: return "DegreeMismatch";
    case CRK_ERR_DEGREE_UNDERFLOW: return "DegreeUnderflow";
    case CRK_ERR_SINGULAR: return "Singular";
    case CRK_ERR_DIVISION_OBSTRUCTED: return "DivisionObstructed";
    case CRK_ERR_BAD_TRANSVERSAL: return "BadTransversal";
    case CRK_ERR_NOT_INTEGRABLE: return "NotIntegrable";
    case CRK_ERR_NOT_TRANSVERSE: return "NotTransversal";
    case CRK_ERR_NOT_CORANK_ONE: return "NotCorankOne";
    case CRK_ERR_DEGENERATE: return "Degenerate";
    case CRK_ERR_DEGENERATE_VOLUME: return "DegenerateVolume";
    case CRK_ERR_INVARIANTS_NOT_VANISHING: return "InvariantsNotVanishing";
    case CRK_ERR_NOT_POISSON_FIELD: return "NotPoissonField";
    case CRK_ERR_UNDECIDED: return "Undecided";
    case CRK_ERR_VALIDATION: return "Validation";
    case CRK_ERR_IO: return "Io";
    case CRK_ERR_INTERNAL: return "Internal";
    }
    return "unknown";
}

const char* crk_truth_name(crk_truth truth)
{
    switch (truth) {
    case CRK_TRUE: return corank::truth_name(corank::Truth::True);
    case CRK_PROBABLY_TRUE: return corank::truth_name(corank::Truth::ProbablyTrue);
    case CRK_FALSE: return corank::truth_name(corank::Truth::False);
    case CRK_UNKNOWN: return corank::truth_name(corank::Truth::Unknown);
    }
    return "unknown";
}

const char* crk_last_error(void) { return last_error.c_str(); }

void crk_options_init(crk_options* options)
{
    if (!options) return;
    const corank::ZeroTestOptions z;
    *options = crk_options{z.seed, z.trials, z.tolerance, 0, 0, 0, 0};
}

crk_status crk_chart_new(crk_chart** out)
{
    if (!out) return missing("out");
    return guard([&] { *out = new crk_chart; });
}

crk_status crk_chart_add_coordinate(crk_chart* chart, const char* name, const char* kind, double lo, double hi)
{
    if (!chart || !name || !kind) return missing("chart, name or kind");
    return guard([&] {
        auto coords = chart->coordinates;
        if (std::strcmp(kind, "angle") == 0) {
            coords.push_back(corank::angle_coordinate(name));
        } else if (std::strcmp(kind, "line") == 0) {
            coords.push_back(corank::line_coordinate(name, lo, hi));
        } else {
            throw corank::Error(corank::ErrorCode::InvalidChart, std::string("unknown coordinate kind '") + kind + "'");
        }
        chart->chart = corank::Chart(coords, chart->parameters, chart->strict);
        chart->coordinates = std::move(coords);
    });
}

crk_status crk_chart_add_parameter(crk_chart* chart, const char* name, double lo, double hi)
{
    if (!chart || !name) return missing("chart or name");
    return guard([&] {
        auto params = chart->parameters;
        params.push_back({name, lo, hi});
        chart->chart = corank::Chart(chart->coordinates, params, chart->strict);
        chart->parameters = std::move(params);
    });
}

crk_status crk_chart_set_torus_strict(crk_chart* chart, int strict)
{
    if (!chart) return missing("chart");
    return guard([&] {
        chart->chart = corank::Chart(chart->coordinates, chart->parameters, strict != 0);
        chart->strict = strict != 0;
    });
}

size_t crk_chart_dim(const crk_chart* chart) { return chart ? chart->chart.dim() : 0; }
void crk_chart_free(crk_chart* chart) { delete chart; }

crk_status crk_form_parse(const crk_chart* chart, const char* text, int degree, crk_form** out)
{
    if (!chart || !text || !out) return missing("chart, text or out");
    return guard([&] { *out = wrap(corank::DiffForm::parse(text, chart->chart, degree_arg(degree))); });
}

crk_status crk_multivector_parse(const crk_chart* chart, const char* text, int degree, crk_multivector** out)
{
    if (!chart || !text || !out) return missing("chart, text or out");
    return guard([&] { *out = wrap(corank::MultiVector::parse(text, chart->chart, degree_arg(degree))); });
}

int crk_form_degree(const crk_form* form) { return form ? form->value.degree() : -1; }
int crk_multivector_degree(const crk_multivector* field) { return field ? field->value.degree() : -1; }
const char* crk_form_str(const crk_form* form) { return form ? form->text.c_str() : ""; }
const char* crk_multivector_str(const crk_multivector* field) { return field ? field->text.c_str() : ""; }
void crk_form_free(crk_form* form) { delete form; }
void crk_multivector_free(crk_multivector* field) { delete field; }

crk_status crk_form_d(const crk_form* form, crk_form** out)
{
    if (!form || !out) return missing("form or out");
    return guard([&] { *out = wrap(corank::ext_deriv(form->value)); });
}

crk_status crk_form_wedge(const crk_form* a, const crk_form* b, crk_form** out)
{
    if (!a || !b || !out) return missing("a, b or out");
    return guard([&] { *out = wrap(corank::wedge(a->value, b->value)); });
}

crk_status crk_form_interior(const crk_multivector* field, const crk_form* form, crk_form** out)
{
    if (!field || !form || !out) return missing("field, form or out");
    return guard([&] { *out = wrap(corank::interior(field->value, form->value)); });
}

crk_status crk_form_lie(const crk_multivector* field, const crk_form* form, crk_form** out)
{
    if (!field || !form || !out) return missing("field, form or out");
    return guard([&] { *out = wrap(corank::lie_derivative(field->value, form->value)); });
}

crk_status crk_multivector_schouten(const crk_multivector* a, const crk_multivector* b, crk_multivector** out)
{
    if (!a || !b || !out) return missing("a, b or out");
    return guard([&] { *out = wrap(corank::schouten(a->value, b->value)); });
}

crk_status crk_form_is_zero(const crk_form* form, const crk_options* options, crk_truth* out)
{
    if (!form || !out) return missing("form or out");
    return guard([&] { *out = truth_of(corank::is_zero(form->value, zero_options(options)).truth); });
}

crk_status crk_multivector_is_zero(const crk_multivector* field, const crk_options* options, crk_truth* out)
{
    if (!field || !out) return missing("field or out");
    return guard([&] { *out = truth_of(corank::is_zero(field->value, zero_options(options)).truth); });
}

crk_status crk_jacobi(const crk_multivector* bivector, const crk_options* options, crk_truth* out)
{
    if (!bivector || !out) return missing("bivector or out");
    return guard([&] {
        if (bivector->value.degree() != 2) {
            throw corank::Error(corank::ErrorCode::DegreeMismatch, "expected a bivector");
        }
        *out = truth_of(corank::jacobi_check(bivector->value, zero_options(options)).verdict.truth);
    });
}

crk_status crk_problem_load(const char* path, crk_problem** out)
{
    if (!path || !out) return missing("path or out");
    return guard([&] { *out = new crk_problem{corank::load_problem(path)}; });
}

crk_status crk_problem_parse(const char* text, const char* name, crk_problem** out)
{
    if (!text || !out) return missing("text or out");
    return guard([&] { *out = new crk_problem{corank::parse_problem(text, name ? name : "<input>")}; });
}

void crk_problem_free(crk_problem* problem) { delete problem; }

crk_status crk_problem_render(const crk_problem* problem, char** out)
{
    if (!problem || !out) return missing("problem or out");
    return guard([&] {
        const std::string text = corank::render(problem->value);
        char* buffer = static_cast<char*>(std::malloc(text.size() + 1));
        if (!buffer) throw std::bad_alloc();
        std::memcpy(buffer, text.c_str(), text.size() + 1);
        *out = buffer;
    });
}

crk_status crk_problem_analyze(const crk_problem* problem, const crk_options* options, crk_report** out)
{
    if (!problem || !out) return missing("problem or out");
    return guard([&] {
        corank::RunOptions run;
        if (options) {
            if (options->has_seed) run.seed = options->seed;
            if (options->has_trials) run.trials = options->trials;
            if (options->has_tolerance) run.tolerance = options->tolerance;
            run.timing = options->timing != 0;
        }
        corank::RunResult r = corank::analyze(problem->value, run);
        *out = new crk_report{std::move(r.report), r.failed};
    });
}

const char* crk_report_json(const crk_report* report) { return report ? report->json.c_str() : ""; }
int crk_report_failed(const crk_report* report) { return report && report->failed ? 1 : 0; }
void crk_report_free(crk_report* report) { delete report; }
void crk_string_free(char* s) { std::free(s); }

}  // extern "C"

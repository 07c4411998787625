#include "expr/zero_test.hpp"

#include <cmath>

namespace corank {

const char* truth_name(Truth t)
{
    switch (t) {
    case Truth::True: return "true";
    case Truth::ProbablyTrue: return "probably-true";
    case Truth::False: return "false";
    case Truth::Unknown: return "unknown";
    }
    return "unknown";
}

Verdict all_of(const Verdict& a, const Verdict& b)
{
    auto rank = [](Truth t) {
        switch (t) {
        case Truth::False: return 3;
        case Truth::Unknown: return 2;
        case Truth::ProbablyTrue: return 1;
        case Truth::True: return 0;
        }
        return 2;
    };
    return rank(b.truth) > rank(a.truth) ? b : a;
}

Assignment midpoint(const Chart& chart)
{
    Assignment p;
    for (const auto& c : chart.coordinates()) p[c.name] = 0.5 * (c.lo + c.hi);
    for (const auto& q : chart.parameters()) p[q.name] = 0.5 * (q.lo + q.hi);
    return p;
}

Assignment sample_point(const Chart& chart, std::mt19937_64& rng)
{
    Assignment p;
    for (const auto& c : chart.coordinates()) p[c.name] = std::uniform_real_distribution<double>(c.lo, c.hi)(rng);
    for (const auto& q : chart.parameters()) p[q.name] = std::uniform_real_distribution<double>(q.lo, q.hi)(rng);
    return p;
}

Witness make_witness(const Chart& chart, const Assignment& point, double value, std::string label)
{
    Witness w;
    for (const auto& c : chart.coordinates()) w.point.emplace_back(c.name, point.at(c.name));
    for (const auto& q : chart.parameters()) w.point.emplace_back(q.name, point.at(q.name));
    w.value = value;
    w.label = std::move(label);
    return w;
}

Verdict is_zero(const Expr& e, const Chart& chart, const ZeroTestOptions& options)
{
    if (e.is_zero()) return Verdict::symbolic();
    for (const auto& v : e.variables()) {
        if (!chart.knows(v)) throw Error(ErrorCode::UnknownIdentifier, "expression uses '" + v + "', which the chart does not declare");
    }

    std::mt19937_64 rng(options.seed);
    int passed = 0;
    int singular = 0;
    bool first = true;
    while (passed < options.trials) {
        const Assignment point = first ? midpoint(chart) : sample_point(chart, rng);
        first = false;
        try {
            const Expr::Parts parts = e.evaluate_parts(point);
            if (!std::isfinite(parts.numerator) || !std::isfinite(parts.numerator_scale)) throw Error(ErrorCode::Singular, "overflow");
            if (std::fabs(parts.numerator) > options.tolerance * parts.numerator_scale) {
                return Verdict::refuted(make_witness(chart, point, parts.numerator / parts.denominator));
            }
            ++passed;
        } catch (const Error& err) {
            if (err.code() != ErrorCode::Singular) throw;
            if (++singular > options.retry_budget) {
                return Verdict::unknown("too many singular sample points");
            }
        }
    }
    if (e.is_rational_function()) {
        return Verdict::unknown("nonzero rational normal form passed every numeric sample");
    }
    return {Truth::ProbablyTrue, std::nullopt, "passed " + std::to_string(passed) + " random samples"};
}

}  // namespace corank

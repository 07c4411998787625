#pragma once

#include "common/error.hpp"
#include "expr/chart.hpp"
#include "expr/expr.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>

namespace corank {

enum class Truth { True, ProbablyTrue, False, Unknown };

// "true", "probably-true", "false", "unknown"
const char* truth_name(Truth t);

struct Verdict {
    Truth truth = Truth::Unknown;
    std::optional<Witness> witness;
    std::string note;

    static Verdict symbolic() { return {Truth::True, std::nullopt, {}}; }
    static Verdict refuted(Witness w, std::string note = {}) { return {Truth::False, std::move(w), std::move(note)}; }
    static Verdict unknown(std::string note) { return {Truth::Unknown, std::nullopt, std::move(note)}; }

    bool is_true() const { return truth == Truth::True; }
    bool is_false() const { return truth == Truth::False; }
    // True or probably true.
    bool holds() const { return truth == Truth::True || truth == Truth::ProbablyTrue; }
};

// Conjunction: any False wins, then Unknown, then ProbablyTrue.
Verdict all_of(const Verdict& a, const Verdict& b);

struct ZeroTestOptions {
    std::uint64_t seed = 1;
    int trials = 32;
    double tolerance = 1e-9;  // relative to the sum of absolute term values
    int retry_budget = 64;     // singular sample points tolerated before giving up
};

// A symbolic zero numerator gives True. Otherwise the expression is sampled:
// the first point is the midpoint of every interval, the rest are uniform in
// the chart's sampling box. A sample exceeding the tolerance gives False with
// that point as witness; all samples passing gives ProbablyTrue, except for
// rational functions, whose normal form is canonical, where it gives Unknown.
Verdict is_zero(const Expr& e, const Chart& chart, const ZeroTestOptions& options = {});

// Sample point drawn from the chart's box (coordinates and parameters).
Assignment sample_point(const Chart& chart, std::mt19937_64& rng);
Assignment midpoint(const Chart& chart);
Witness make_witness(const Chart& chart, const Assignment& point, double value, std::string label = {});

}  // namespace corank

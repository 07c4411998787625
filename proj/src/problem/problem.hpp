#pragma once

// Problem files. Line oriented; '#' starts a comment outside quotes.
//
//   [chart]
//   coordinate x line -1 1        sampling interval optional, default [-1, 1]
//   coordinate th angle           periodic, sampled on [0, 2π]
//   parameter a 0.5 2
//   torus-strict                  angles may only occur inside sin/cos
//
//   [structure]                   bivector, alpha, omega, transversal, volume
//   bivector = "y ∂x^∂y"
//
//   [certificates]                f (first kind), nu (second kind)
//   [product]                     angle, f, field, leaf
//   [mapping_torus]               map <coordinate> = "...", form = "..."
//   [analyses]                    names from analysis_vocabulary()
//   [options]                     seed, trials, tolerance

#include "calculus/forms.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace corank {

class ValidationError : public Error {
public:
    ValidationError(const std::string& file, int line, const std::string& message)
        : Error(ErrorCode::Validation, file + ":" + std::to_string(line) + ": " + message), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

struct ProductSpec {
    std::string angle;
    Expr f;
    MultiVector field;
    MultiVector leaf;
    int line = 0;
};

struct MappingTorusSpec {
    ChartMap map;
    DiffForm form;
    int line = 0;
};

struct Requested {
    std::string name;
    int line = 0;
};

struct Problem {
    std::string name;
    Chart chart;
    std::optional<MultiVector> bivector;
    std::optional<DiffForm> alpha;
    std::optional<DiffForm> omega;
    std::optional<MultiVector> transversal;
    std::optional<DiffForm> volume;
    std::optional<Expr> certificate_f;
    std::optional<DiffForm> certificate_nu;
    std::optional<ProductSpec> product;
    std::optional<MappingTorusSpec> mapping_torus;
    std::vector<Requested> analyses;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    std::optional<double> tolerance;
};

// In dependency order.
const std::vector<std::string>& analysis_vocabulary();

// Throws ValidationError naming `name` and the offending line.
Problem parse_problem(std::string_view text, const std::string& name);
// Throws Error(Io) when the file cannot be read.
Problem load_problem(const std::string& path);

}  // namespace corank

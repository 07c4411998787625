#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace corank {

/// A sample point at which some quantity was evaluated. Used as evidence for
/// FALSE verdicts and for errors that carry a counterexample.
struct Witness {
    std::vector<std::pair<std::string, double>> point;
    double value = 0.0;
    std::string label;
};

enum class ErrorCode {
    Syntax,
    UnknownIdentifier,
    UnknownCoordinate,
    InvalidChart,
    ChartMismatch,
    DegreeMismatch,
    DegreeUnderflow,
    Singular,
    DivisionObstructed,
    BadTransversal,
    NotIntegrable,
    NotTransversal,
    NotCorankOne,
    Degenerate,
    DegenerateVolume,
    InvariantsNotVanishing,
    NotPoissonField,
    Undecided,
    Validation,
    Io,
    Internal,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, std::optional<Witness> witness = std::nullopt)
        : std::runtime_error(message), code_(code), witness_(std::move(witness)) {}

    ErrorCode code() const noexcept { return code_; }
    const std::optional<Witness>& witness() const noexcept { return witness_; }

private:
    ErrorCode code_;
    std::optional<Witness> witness_;
};

/// Syntax errors carry the byte offset into the parsed text.
class ParseError : public Error {
public:
    ParseError(std::size_t position, const std::string& message)
        : Error(ErrorCode::Syntax, message + " at position " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

}  // namespace corank

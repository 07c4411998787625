#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace corank {

struct Coordinate {
    std::string name;
    bool periodic = false;
    // Sampling interval for randomized zero tests. Periodic coordinates
    // default to one full period.
    double lo = -1.0;
    double hi = 1.0;
};

struct Parameter {
    std::string name;
    double lo = -1.0;
    double hi = 1.0;
};

Coordinate line_coordinate(std::string name, double lo = -1.0, double hi = 1.0);
Coordinate angle_coordinate(std::string name);

class Chart {
public:
    Chart() = default;
    // Throws Error(InvalidChart) on duplicate or malformed names, empty
    // intervals, or more than 32 coordinates.
    explicit Chart(std::vector<Coordinate> coordinates, std::vector<Parameter> parameters = {},
                   bool torus_strict = false);

    std::size_t dim() const { return coordinates_.size(); }
    const std::vector<Coordinate>& coordinates() const { return coordinates_; }
    const std::vector<Parameter>& parameters() const { return parameters_; }
    const std::string& name(std::size_t i) const { return coordinates_.at(i).name; }
    bool torus_strict() const { return torus_strict_; }

    std::optional<std::size_t> index_of(std::string_view name) const;
    // Throws Error(UnknownCoordinate).
    std::size_t require(std::string_view name) const;
    bool has_parameter(std::string_view name) const;
    bool knows(std::string_view name) const { return index_of(name) || has_parameter(name); }

    // A copy with one more coordinate appended (or inserted at `position`).
    Chart extended(const Coordinate& c, std::optional<std::size_t> position = std::nullopt) const;
    Chart with_interval(std::string_view name, double lo, double hi) const;

    friend bool operator==(const Chart& a, const Chart& b);

private:
    std::vector<Coordinate> coordinates_;
    std::vector<Parameter> parameters_;
    bool torus_strict_ = false;
};

bool operator==(const Coordinate& a, const Coordinate& b);
bool operator==(const Parameter& a, const Parameter& b);

bool is_identifier(std::string_view s);

}  // namespace corank

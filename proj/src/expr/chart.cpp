#include "expr/chart.hpp"

#include "common/error.hpp"

#include <cctype>
#include <numbers>
#include <set>

namespace corank {

Coordinate line_coordinate(std::string name, double lo, double hi)
{
    return Coordinate{std::move(name), false, lo, hi};
}

Coordinate angle_coordinate(std::string name)
{
    return Coordinate{std::move(name), true, 0.0, 2.0 * std::numbers::pi};
}

namespace {

bool reserved(std::string_view s)
{
    return s == "exp" || s == "log" || s == "sin" || s == "cos";
}

}  // namespace

// ASCII letters, digits and underscores, plus any non-ASCII byte so that
// names like θ1 work; ∂ and ∧ are excluded because the form syntax uses them.
bool is_identifier(std::string_view s)
{
    if (s.empty()) return false;
    if (s.find("\xE2\x88\x82") != std::string_view::npos || s.find("\xE2\x88\xA7") != std::string_view::npos) return false;
    const auto c0 = static_cast<unsigned char>(s[0]);
    if (!(std::isalpha(c0) || c0 == '_' || c0 >= 0x80)) return false;
    for (char ch : s) {
        const auto c = static_cast<unsigned char>(ch);
        if (!(std::isalnum(c) || c == '_' || c >= 0x80)) return false;
    }
    return true;
}

Chart::Chart(std::vector<Coordinate> coordinates, std::vector<Parameter> parameters, bool torus_strict)
    : coordinates_(std::move(coordinates)), parameters_(std::move(parameters)), torus_strict_(torus_strict)
{
    if (coordinates_.size() > 32) throw Error(ErrorCode::InvalidChart, "at most 32 coordinates are supported");
    std::set<std::string, std::less<>> names;
    auto check = [&](const std::string& name, double lo, double hi) {
        if (!is_identifier(name)) throw Error(ErrorCode::InvalidChart, "'" + name + "' is not a valid name");
        if (reserved(name)) throw Error(ErrorCode::InvalidChart, "'" + name + "' is a reserved function name");
        if (!names.insert(name).second) throw Error(ErrorCode::InvalidChart, "duplicate name '" + name + "'");
        if (!(lo < hi)) throw Error(ErrorCode::InvalidChart, "empty sampling interval for '" + name + "'");
    };
    for (const auto& c : coordinates_) check(c.name, c.lo, c.hi);
    for (const auto& p : parameters_) check(p.name, p.lo, p.hi);
    // Basis tokens dX must not be mistaken for a name.
    for (const auto& c : coordinates_) {
        if (names.count("d" + c.name)) {
            throw Error(ErrorCode::InvalidChart, "name 'd" + c.name + "' collides with the basis form of '" + c.name + "'");
        }
    }
}

std::optional<std::size_t> Chart::index_of(std::string_view name) const
{
    for (std::size_t i = 0; i < coordinates_.size(); ++i) {
        if (coordinates_[i].name == name) return i;
    }
    return std::nullopt;
}

std::size_t Chart::require(std::string_view name) const
{
    if (auto i = index_of(name)) return *i;
    throw Error(ErrorCode::UnknownCoordinate, "unknown coordinate '" + std::string(name) + "'");
}

bool Chart::has_parameter(std::string_view name) const
{
    for (const auto& p : parameters_) {
        if (p.name == name) return true;
    }
    return false;
}

Chart Chart::extended(const Coordinate& c, std::optional<std::size_t> position) const
{
    auto coords = coordinates_;
    const std::size_t at = std::min(position.value_or(coords.size()), coords.size());
    coords.insert(coords.begin() + static_cast<std::ptrdiff_t>(at), c);
    return Chart(std::move(coords), parameters_, torus_strict_);
}

Chart Chart::with_interval(std::string_view name, double lo, double hi) const
{
    auto coords = coordinates_;
    auto params = parameters_;
    bool found = false;
    for (auto& c : coords) {
        if (c.name == name) {
            c.lo = lo;
            c.hi = hi;
            found = true;
        }
    }
    for (auto& p : params) {
        if (p.name == name) {
            p.lo = lo;
            p.hi = hi;
            found = true;
        }
    }
    if (!found) throw Error(ErrorCode::UnknownIdentifier, "no coordinate or parameter '" + std::string(name) + "'");
    return Chart(std::move(coords), std::move(params), torus_strict_);
}

bool operator==(const Coordinate& a, const Coordinate& b)
{
    return a.name == b.name && a.periodic == b.periodic && a.lo == b.lo && a.hi == b.hi;
}

bool operator==(const Parameter& a, const Parameter& b)
{
    return a.name == b.name && a.lo == b.lo && a.hi == b.hi;
}

bool operator==(const Chart& a, const Chart& b)
{
    return a.coordinates_ == b.coordinates_ && a.parameters_ == b.parameters_ && a.torus_strict_ == b.torus_strict_;
}

}  // namespace corank

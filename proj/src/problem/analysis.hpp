#pragma once

#include "problem/problem.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace corank {

inline constexpr const char* kReportSchema = "corank-report/1";
const char* tool_version();

// Command-line overrides; unset fields fall back to the file's [options],
// then to the defaults of ZeroTestOptions.
struct RunOptions {
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    std::optional<double> tolerance;
    bool timing = false;  // adds elapsed_ms to each entry, which breaks byte-identical reruns
};

struct RunResult {
    std::string report;   // JSON, two-space indent, trailing newline
    bool failed = false;  // some analysis returned false, errored or was skipped
};

// Runs the requested analyses and their prerequisites in dependency order.
RunResult analyze(const Problem& problem, const RunOptions& options = {});

// Canonical text of the chart and every structure in the file.
std::string render(const Problem& problem);

}  // namespace corank

#include "common/roots.hpp"

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>

namespace corank {

std::vector<double> find_roots(const std::function<double(double)>& g, double lo, double hi, int grid, double touch_tolerance)
{
    std::vector<double> xs(static_cast<std::size_t>(grid) + 1);
    std::vector<double> ys(xs.size());
    double largest = 0;
    for (std::size_t m = 0; m < xs.size(); ++m) {
        xs[m] = lo + (hi - lo) * static_cast<double>(m) / grid;
        ys[m] = g(xs[m]);
        largest = std::max(largest, std::fabs(ys[m]));
    }

    std::vector<double> roots;
    for (std::size_t m = 0; m < xs.size(); ++m) {
        if (ys[m] == 0) roots.push_back(xs[m]);
        if (m == 0) continue;
        if (ys[m - 1] != 0 && ys[m] != 0 && std::signbit(ys[m - 1]) != std::signbit(ys[m])) {
            boost::uintmax_t iterations = 200;
            const auto [a, b] = boost::math::tools::toms748_solve(g, xs[m - 1], xs[m], ys[m - 1], ys[m],
                                                                  boost::math::tools::eps_tolerance<double>(52), iterations);
            roots.push_back(0.5 * (a + b));
        }
    }
    auto magnitude = [&](double x) { return std::fabs(g(x)); };
    for (std::size_t m = 1; m + 1 < xs.size(); ++m) {
        const double here = std::fabs(ys[m]);
        if (here == 0 || here > std::fabs(ys[m - 1]) || here > std::fabs(ys[m + 1])) continue;
        if (std::signbit(ys[m - 1]) != std::signbit(ys[m + 1])) continue;
        boost::uintmax_t iterations = 200;
        const auto [x, fx] = boost::math::tools::brent_find_minima(magnitude, xs[m - 1], xs[m + 1], 52, iterations);
        if (fx <= touch_tolerance * std::max(largest, 1e-300)) roots.push_back(x);
    }
    std::sort(roots.begin(), roots.end());
    std::vector<double> unique;
    for (double r : roots) {
        if (unique.empty() || std::fabs(r - unique.back()) > 1e-7 * std::max(1.0, std::fabs(r))) unique.push_back(r);
    }
    return unique;
}

}  // namespace corank

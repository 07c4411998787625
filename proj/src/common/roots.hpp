#pragma once

#include <functional>
#include <vector>

namespace corank {

// Zeros of g on [lo, hi] located from a uniform grid: sign changes refined by
// TOMS 748, exact zeros at grid nodes, and touching zeros (local minima of |g|
// that reach zero within `touch_tolerance` relative to the grid maximum,
// refined by Brent minimization). Sorted, duplicates within 1e-9 removed.
// Exceptions thrown by g propagate.
std::vector<double> find_roots(const std::function<double(double)>& g, double lo, double hi, int grid = 64,
                               double touch_tolerance = 1e-10);

}  // namespace corank

#include "qwell/variational.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qwell/numerics.hpp"

namespace qwell {

double expectation_h(double b, double v0, double alpha) {
    if (!(b > 0.0) || !(v0 > 0.0) || !(alpha > 0.0))
        throw std::invalid_argument("expectation_h: b, v0 and alpha must be > 0");
    return 0.5 * b - v0 * std::sqrt(2.0 * b / (2.0 * b + alpha));
}

VariationalResult solve_optimal_b(double v0, double alpha) {
    if (!(v0 > 0.0) || !(alpha > 0.0))
        throw std::invalid_argument("solve_optimal_b: v0 and alpha must be > 0");
    const double rhs = 2.0 * v0 * v0 * alpha * alpha;
    auto stationarity = [&](double b) {
        const double w = 2.0 * b + alpha;
        return b * w * w * w - rhs;
    };
    double hi = 1.0;
    while (stationarity(hi) <= 0.0) hi *= 2.0;
    // b resolved to 1e-14 keeps the stationarity residual under 1e-12
    const double b_star =
        bisect_root(stationarity, std::numeric_limits<double>::min(), hi, 1e-14);
    return {b_star, expectation_h(b_star, v0, alpha), stationarity(b_star)};
}

}  // namespace qwell

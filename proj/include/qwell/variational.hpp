#pragma once

namespace qwell {

/// Outcome of minimizing the Gaussian-trial expectation value over the width
/// parameter b. The energy bound is a true upper bound on the ground energy.
struct VariationalResult {
    double b_star;        // optimal width parameter, > 0
    double energy_bound;  // <H> at b_star, < 0 for any Gaussian well
    double residual;      // stationarity function at b_star
};

/// <H> for the normalized Gaussian trial state of width parameter b:
/// b/2 - v0 sqrt(2b / (2b + alpha)).
double expectation_h(double b, double v0, double alpha);

/// Minimizes expectation_h over b by solving the stationarity condition
/// b (2b + alpha)^3 = 2 v0^2 alpha^2, whose left side is strictly increasing,
/// with bisection on [eps, b_hi] (b_hi doubled from 1 until the sign flips).
VariationalResult solve_optimal_b(double v0, double alpha);

}  // namespace qwell

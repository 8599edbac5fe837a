#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace qwell {

struct QuadratureSettings {
    double abs_tol = 1e-10;
    int max_depth = 50;
};

/// Thrown when adaptive refinement runs out of depth; carries the best estimate
/// accumulated so far together with its error bound.
class QuadratureDepthError : public std::runtime_error {
public:
    QuadratureDepthError(double estimate, double error_bound);
    double estimate() const { return estimate_; }
    double error_bound() const { return error_bound_; }

private:
    double estimate_;
    double error_bound_;
};

class NoBracketError : public std::invalid_argument {
public:
    explicit NoBracketError(const std::string& what) : std::invalid_argument(what) {}
};

/// Plain midpoint bisection on [lo, hi]. Requires f(lo) and f(hi) to differ in
/// sign; narrows the bracket to width <= tol and returns its midpoint.
double bisect_root(const std::function<double(double)>& f, double lo, double hi, double tol);

/// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance
/// settings.abs_tol. Square-root integrable endpoint behavior (classical
/// turning points) is handled by refinement alone.
double adaptive_quadrature(const std::function<double(double)>& f, double a, double b,
                           QuadratureSettings settings = {});

/// Error function, absolute error <= 1e-12. Odd in x and saturating one ulp
/// below +-1 so that |erf(x)| < 1 holds for every finite x.
double erf(double x);

}  // namespace qwell

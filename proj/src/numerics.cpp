#include "qwell/numerics.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace qwell {

QuadratureDepthError::QuadratureDepthError(double estimate, double error_bound)
    : std::runtime_error("adaptive_quadrature: max refinement depth reached"),
      estimate_(estimate),
      error_bound_(error_bound) {}

namespace {

double checked(double v, const char* who) {
    if (!std::isfinite(v)) throw std::domain_error(std::string(who) + ": non-finite function value");
    return v;
}

struct QuadAccum {
    double value = 0.0;
    double err = 0.0;
    bool depth_hit = false;
};

// A few refinement levels are forced before the error estimate may accept, so
// integrands that vanish at the first sample points are not mistaken for zero.
constexpr int kForcedDepth = 5;

void refine(const std::function<double(double)>& f, double a, double b, double fa, double fm,
            double fb, double whole, double eps, int depth, int force, QuadAccum& acc) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    if (!(a < lm && lm < m && m < rm && rm < b)) {
        // interval has collapsed to rounding resolution
        acc.value += whole;
        return;
    }
    const double flm = checked(f(lm), "adaptive_quadrature");
    const double frm = checked(f(rm), "adaptive_quadrature");
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = (left + right) - whole;
    if (force <= 0 && std::abs(delta) <= 15.0 * eps) {
        acc.value += left + right + delta / 15.0;
        acc.err += std::abs(delta) / 15.0;
        return;
    }
    if (depth <= 0) {
        acc.value += left + right + delta / 15.0;
        acc.err += std::abs(delta);
        acc.depth_hit = true;
        return;
    }
    refine(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1, force - 1, acc);
    refine(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1, force - 1, acc);
}

}  // namespace

double adaptive_quadrature(const std::function<double(double)>& f, double a, double b,
                           QuadratureSettings settings) {
    if (!(a < b)) throw std::invalid_argument("adaptive_quadrature: need a < b");
    if (!(settings.abs_tol > 0.0) || settings.max_depth < 1)
        throw std::invalid_argument("adaptive_quadrature: invalid settings");
    const double fa = checked(f(a), "adaptive_quadrature");
    const double fb = checked(f(b), "adaptive_quadrature");
    const double fm = checked(f(0.5 * (a + b)), "adaptive_quadrature");
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    QuadAccum acc;
    refine(f, a, b, fa, fm, fb, whole, settings.abs_tol, settings.max_depth,
           std::min(kForcedDepth, settings.max_depth - 1), acc);
    if (acc.depth_hit) throw QuadratureDepthError(acc.value, acc.err);
    return acc.value;
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("bisect_root: tol must be > 0");
    if (!(lo < hi)) throw std::invalid_argument("bisect_root: need lo < hi");
    double flo = checked(f(lo), "bisect_root");
    double fhi = checked(f(hi), "bisect_root");
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw NoBracketError("bisect_root: no sign change over [lo, hi]");
    while (hi - lo > tol) {
        const double mid = lo + 0.5 * (hi - lo);
        if (!(mid > lo && mid < hi)) break;  // bracket at rounding resolution
        const double fmid = checked(f(mid), "bisect_root");
        // an exact zero is kept as the upper end, resolving ties toward lo
        if (fmid != 0.0 && (fmid > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return lo + 0.5 * (hi - lo);
}

namespace {

constexpr double kTwoOverSqrtPi = 2.0 * std::numbers::inv_sqrtpi;
constexpr double kInvSqrtPi = std::numbers::inv_sqrtpi;

// Maclaurin series, used for |x| <= 2 where cancellation stays mild.
double erf_series(double x) {
    const double x2 = x * x;
    double term = x;
    double sum = x;
    for (int n = 1; n < 200; ++n) {
        term *= -x2 / n;
        const double contrib = term / (2 * n + 1);
        sum += contrib;
        if (std::abs(contrib) <= 1e-18 * std::abs(sum)) break;
    }
    return kTwoOverSqrtPi * sum;
}

// Lentz evaluation of sqrt(pi) e^{x^2} erfc(x) = 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))).
double erfc_continued_fraction(double x) {
    constexpr double tiny = 1e-300;
    double value = x;
    double c = x;
    double d = 0.0;
    for (int k = 1; k <= 400; ++k) {
        const double a = 0.5 * k;
        d = x + a * d;
        if (d == 0.0) d = tiny;
        c = x + a / c;
        if (c == 0.0) c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        value *= delta;
        if (std::abs(delta - 1.0) < 1e-17) return std::exp(-x * x) * kInvSqrtPi / value;
    }
    throw std::runtime_error("erf: continued fraction failed to converge");
}

}  // namespace

double erf(double x) {
    if (!std::isfinite(x)) throw std::domain_error("erf: argument must be finite");
    const double ax = std::abs(x);
    double r = (ax <= 2.0) ? erf_series(ax) : 1.0 - erfc_continued_fraction(ax);
    if (r >= 1.0) r = std::nextafter(1.0, 0.0);
    return std::signbit(x) ? -r : r;
}

}  // namespace qwell

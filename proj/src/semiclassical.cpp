#include "qwell/semiclassical.hpp"

#include <cmath>
#include <numbers>

#include "qwell/numerics.hpp"

namespace qwell {

namespace {

using std::numbers::pi;

// The action integrands vanish as sqrt at the turning points; a little more
// refinement depth than the default absorbs that.
constexpr QuadratureSettings kActionQuadrature{1e-10, 60};
constexpr QuadratureSettings kPhaseQuadrature{1e-9, 60};

// integral of sqrt(2(E - V)) between the classical turning points of the
// Gaussian well; increasing in E.
double quantization_phase(double v0, double alpha, double energy) {
    const double turning = std::sqrt(std::log(v0 / -energy) / alpha);
    auto momentum = [&](double x) {
        return std::sqrt(std::max(0.0, 2.0 * (energy + v0 * std::exp(-alpha * x * x))));
    };
    return adaptive_quadrature(momentum, -turning, turning, kPhaseQuadrature);
}

}  // namespace

WkbCount wkb_count(double v0, double alpha) {
    if (!(v0 > 0.0) || !(alpha > 0.0))
        throw std::invalid_argument("wkb_count: v0 and alpha must be > 0");
    const double n_real = 2.0 * std::numbers::inv_sqrtpi * std::sqrt(v0 / alpha) + 0.5;
    return {n_real, static_cast<int>(std::floor(n_real))};
}

std::vector<double> wkb_levels(const PotentialSpec& spec, int max_n) {
    if (spec.kind != PotentialKind::GaussianWell)
        throw std::invalid_argument("wkb_levels: only the Gaussian well is supported");
    validate(spec);
    if (max_n < 1) throw std::invalid_argument("wkb_levels: max_n must be >= 1");
    const double v0 = spec.v0;
    const double alpha = spec.alpha;

    // Scan the energy window for brackets of each quantization residual, then
    // bisect. The phase is monotone, so one scan serves every level.
    constexpr int kScanPoints = 200;
    const double e_lo = -v0 * (1.0 - 1e-9);
    const double e_hi = -v0 * 1e-9;
    std::vector<double> energies(kScanPoints);
    std::vector<double> phases(kScanPoints);
    for (int i = 0; i < kScanPoints; ++i) {
        energies[i] = e_lo + (e_hi - e_lo) * i / (kScanPoints - 1);
        phases[i] = quantization_phase(v0, alpha, energies[i]);
    }

    std::vector<double> levels;
    const double tol = 1e-10 * std::max(1.0, v0);
    for (int n = 1; n <= max_n; ++n) {
        const double target = (n - 0.5) * pi;
        for (int i = 0; i + 1 < kScanPoints; ++i) {
            const double lo_res = phases[i] - target;
            const double hi_res = phases[i + 1] - target;
            if (lo_res == 0.0) {
                levels.push_back(energies[i]);
                break;
            }
            if (lo_res * hi_res < 0.0 || hi_res == 0.0) {
                auto residual = [&](double e) {
                    return quantization_phase(v0, alpha, e) - target;
                };
                levels.push_back(bisect_root(residual, energies[i], energies[i + 1], tol));
                break;
            }
        }
    }
    return levels;
}

TransmissionResult transmission(double v0, double alpha, double e) {
    if (!(v0 > 0.0) || !(alpha > 0.0))
        throw std::invalid_argument("transmission: v0 and alpha must be > 0");
    if (!(e > 0.0) || !(e < v0))
        throw std::invalid_argument("transmission: need 0 < e < v0 for a forbidden region");
    const double beta = v0 / e;
    const double log_beta = std::log(beta);
    const double inv_beta = 1.0 / beta;
    const double turning = std::sqrt(log_beta / alpha);

    // Opacity with the turning points scaled onto [-1, 1]; the integrand is
    // exactly zero at the endpoints.
    auto integrand = [&](double y) {
        return std::sqrt(std::max(0.0, std::exp(-y * y * log_beta) - inv_beta));
    };
    const double reduced = adaptive_quadrature(integrand, -1.0, 1.0, kActionQuadrature);
    const double theta_exact = std::exp(std::sqrt(2.0 * v0 * log_beta / alpha) * reduced);

    const double root_log = std::sqrt(log_beta);
    const double bracket =
        root_log + 0.5 * std::sqrt(pi) * qwell::erf(root_log) - root_log * inv_beta;
    const double theta_approx = std::exp(std::sqrt(2.0 * v0 / alpha) * bracket);

    return {beta,
            theta_exact,
            1.0 / (theta_exact * theta_exact),
            theta_approx,
            1.0 / (theta_approx * theta_approx),
            -turning,
            turning};
}

double stm_paper_formula(double v0_over_alpha) {
    if (!(v0_over_alpha > 0.0))
        throw std::invalid_argument("stm_paper_formula: v0/alpha must be > 0");
    return std::exp(-2.2 * std::sqrt(v0_over_alpha));
}

bool uncertainty_tunneling_condition(double v0, double alpha, double e) {
    if (!(v0 > 0.0) || !(alpha > 0.0))
        throw std::invalid_argument("uncertainty_tunneling_condition: v0 and alpha must be > 0");
    if (!(e < v0))
        throw std::invalid_argument("uncertainty_tunneling_condition: need e < v0");
    return alpha / 8.0 > v0 - e;
}

}  // namespace qwell

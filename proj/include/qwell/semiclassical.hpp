#pragma once

#include <vector>

#include "qwell/potential.hpp"

namespace qwell {

/// Semiclassical estimate of the number of bound levels of a Gaussian well.
struct WkbCount {
    double n_real;  // (2/sqrt(pi)) sqrt(v0/alpha) + 1/2
    int n_levels;   // floor(n_real)
};

/// Barrier transmission for a particle of energy e < v0, both the opacity
/// quadrature and its closed-form (erf) approximation. T = theta^-2.
struct TransmissionResult {
    double beta;          // v0 / e, > 1
    double theta_exact;   // opacity from the action quadrature
    double t_exact;
    double theta_approx;  // opacity from the binomial-expansion closed form
    double t_approx;
    double turning_point_left;   // -sqrt(ln(beta)/alpha)
    double turning_point_right;  // +sqrt(ln(beta)/alpha)
};

WkbCount wkb_count(double v0, double alpha);

/// Energies solving the semiclassical quantization rule
/// integral sqrt(2(E - V)) dx = (n - 1/2) pi for n = 1..max_n, Gaussian well
/// only. Quantum numbers with no solution below the continuum are omitted.
std::vector<double> wkb_levels(const PotentialSpec& spec, int max_n);

TransmissionResult transmission(double v0, double alpha, double e);

/// exp(-2.2 sqrt(v0/alpha)): rule-of-thumb transmission used for the scanning
/// tunneling microscope estimate, kept verbatim for the documented example.
double stm_paper_formula(double v0_over_alpha);

/// Uncertainty-principle tunneling condition alpha/8 > v0 - e (strict).
bool uncertainty_tunneling_condition(double v0, double alpha, double e);

}  // namespace qwell

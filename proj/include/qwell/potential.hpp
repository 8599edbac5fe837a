#pragma once

#include <stdexcept>
#include <string>

namespace qwell {

enum class PotentialKind {
    GaussianWell,        // V(x) = -v0 exp(-alpha x^2)
    GaussianBarrier,     // V(x) = +v0 exp(-alpha x^2)
    DoubleGaussianWell,  // U(x) = -v0 x^2 exp(-alpha x^2)
    HalfGaussianRadial,  // V(r) = -v0 exp(-alpha r^2) + l(l+1)/(2 r^2), r > 0
};

/// Parameters of one of the supported potentials, natural units (hbar = m = 1).
/// v0 and alpha are strictly positive; l is used by HalfGaussianRadial only.
struct PotentialSpec {
    PotentialKind kind = PotentialKind::GaussianWell;
    double v0 = 1.0;
    double alpha = 1.0;
    int l = 0;
};

const char* kind_name(PotentialKind kind);

/// Throws std::invalid_argument on nonpositive v0/alpha or negative l.
void validate(const PotentialSpec& spec);

double evaluate(const PotentialSpec& spec, double x);

/// Closed-form integral of V over the whole line (full-line kinds only).
double integral_over_line(const PotentialSpec& spec);

/// Sufficient (not necessary) condition for at least one bound state:
/// the potential integrates to a negative value.
bool bound_state_sufficient(const PotentialSpec& spec);

}  // namespace qwell

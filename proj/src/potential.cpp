#include "qwell/potential.hpp"

#include <cmath>
#include <numbers>

namespace qwell {

const char* kind_name(PotentialKind kind) {
    switch (kind) {
        case PotentialKind::GaussianWell: return "gaussian-well";
        case PotentialKind::GaussianBarrier: return "gaussian-barrier";
        case PotentialKind::DoubleGaussianWell: return "double-gaussian-well";
        case PotentialKind::HalfGaussianRadial: return "half-gaussian";
    }
    return "unknown";
}

void validate(const PotentialSpec& spec) {
    if (!(spec.v0 > 0.0)) throw std::invalid_argument("potential: v0 must be > 0");
    if (!(spec.alpha > 0.0)) throw std::invalid_argument("potential: alpha must be > 0");
    if (spec.l < 0) throw std::invalid_argument("potential: l must be >= 0");
}

double evaluate(const PotentialSpec& spec, double x) {
    validate(spec);
    if (!std::isfinite(x)) throw std::domain_error("potential: position must be finite");
    const double gauss = spec.v0 * std::exp(-spec.alpha * x * x);
    switch (spec.kind) {
        case PotentialKind::GaussianWell: return -gauss;
        case PotentialKind::GaussianBarrier: return gauss;
        case PotentialKind::DoubleGaussianWell: return -x * x * gauss;
        case PotentialKind::HalfGaussianRadial: {
            if (!(x > 0.0))
                throw std::domain_error("potential: radial coordinate must be > 0");
            return -gauss + 0.5 * spec.l * (spec.l + 1) / (x * x);
        }
    }
    throw std::logic_error("potential: unhandled kind");
}

double integral_over_line(const PotentialSpec& spec) {
    validate(spec);
    using std::numbers::pi;
    switch (spec.kind) {
        case PotentialKind::GaussianWell: return -spec.v0 * std::sqrt(pi / spec.alpha);
        case PotentialKind::GaussianBarrier: return spec.v0 * std::sqrt(pi / spec.alpha);
        case PotentialKind::DoubleGaussianWell:
            return -spec.v0 * std::sqrt(pi) / (2.0 * spec.alpha * std::sqrt(spec.alpha));
        case PotentialKind::HalfGaussianRadial:
            throw std::invalid_argument(
                "integral_over_line: half-gaussian is not a full-line potential");
    }
    throw std::logic_error("potential: unhandled kind");
}

bool bound_state_sufficient(const PotentialSpec& spec) {
    return integral_over_line(spec) < 0.0;
}

}  // namespace qwell

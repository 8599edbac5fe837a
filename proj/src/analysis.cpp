#include "qwell/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace qwell {

const char* parity_name(Parity p) {
    switch (p) {
        case Parity::Even: return "even";
        case Parity::Odd: return "odd";
        case Parity::None: return "none";
    }
    return "unknown";
}

InsufficientBoundStatesError::InsufficientBoundStatesError(int found)
    : std::runtime_error("double_well_report: found only " + std::to_string(found) +
                         " bound states, need at least 2"),
      found_(found) {}

int count_nodes(const std::vector<double>& state) {
    double peak = 0.0;
    for (double x : state) peak = std::max(peak, std::abs(x));
    const double noise = 1e-6 * peak;
    int nodes = 0;
    int last_sign = 0;
    for (double x : state) {
        if (std::abs(x) <= noise) continue;
        const int sign = x > 0.0 ? 1 : -1;
        if (last_sign != 0 && sign != last_sign) ++nodes;
        last_sign = sign;
    }
    return nodes;
}

Parity classify_parity(const std::vector<double>& state, const Grid& grid) {
    const double span = std::abs(grid.x_min) + std::abs(grid.x_max);
    if (std::abs(grid.x_min + grid.x_max) > 1e-12 * std::max(span, 1.0))
        throw AsymmetricGridError("classify_parity: grid is not symmetric about x = 0");
    if (state.size() != grid.points.size())
        throw std::invalid_argument("classify_parity: state does not match the grid");
    double peak = 0.0;
    for (double x : state) peak = std::max(peak, std::abs(x));
    const std::size_t n = state.size();
    double even_dev = 0.0;
    double odd_dev = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double mirrored = state[n - 1 - i];
        even_dev = std::max(even_dev, std::abs(state[i] - mirrored));
        odd_dev = std::max(odd_dev, std::abs(state[i] + mirrored));
    }
    const double tol = 1e-6 * peak;
    if (even_dev <= tol) return Parity::Even;
    if (odd_dev <= tol) return Parity::Odd;
    return Parity::None;
}

double oscillation_period(double delta_e) {
    if (!(delta_e > 0.0))
        throw std::invalid_argument("oscillation_period: level splitting must be > 0");
    return 2.0 * std::numbers::pi / delta_e;
}

std::vector<StateDescriptor> describe_states(const Spectrum& spectrum) {
    const double span = std::abs(spectrum.grid.x_min) + std::abs(spectrum.grid.x_max);
    const bool symmetric =
        std::abs(spectrum.grid.x_min + spectrum.grid.x_max) <= 1e-12 * std::max(span, 1.0);
    std::vector<StateDescriptor> out;
    out.reserve(spectrum.states.size());
    for (std::size_t i = 0; i < spectrum.states.size(); ++i) {
        StateDescriptor d;
        d.index = static_cast<int>(i);
        d.energy = spectrum.energies[i];
        d.nodes = count_nodes(spectrum.states[i]);
        d.parity = symmetric ? classify_parity(spectrum.states[i], spectrum.grid) : Parity::None;
        d.bound = spectrum.bound[i];
        out.push_back(d);
    }
    return out;
}

DoubleWellReport summarize_double_well(const Spectrum& s) {
    if (s.bound_count < 2) throw InsufficientBoundStatesError(s.bound_count);
    DoubleWellReport report;
    report.e1 = s.energies[0];
    report.e2 = s.energies[1];
    report.delta_e = report.e2 - report.e1;
    report.period = oscillation_period(report.delta_e);
    if (s.bound_count >= 3 && s.energies.size() >= 3) {
        report.e3 = s.energies[2];
        report.decoupling_ratio = report.delta_e / (s.energies[2] - report.e2);
    }
    return report;
}

DoubleWellReport double_well_report(double v0, double alpha,
                                    const std::optional<Grid>& grid_override) {
    PotentialSpec spec{PotentialKind::DoubleGaussianWell, v0, alpha, 0};
    validate(spec);
    const Grid grid = grid_override ? *grid_override : default_grid(spec);
    const int n_states = static_cast<int>(std::min<std::size_t>(grid.points.size(), 4));
    return summarize_double_well(solve_schrodinger(spec, grid, n_states));
}

}  // namespace qwell

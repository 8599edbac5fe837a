#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "qwell/eigensolve.hpp"

namespace qwell {

enum class Parity { Even, Odd, None };

const char* parity_name(Parity p);

struct StateDescriptor {
    int index;
    double energy;
    int nodes;
    Parity parity;  // None for asymmetric grids (radial problems)
    bool bound;
};

/// Lowest levels of the double Gaussian well. The splitting of the lowest
/// pair sets the inter-well oscillation period 2 pi / delta_e; e3 and the
/// decoupling ratio are present only when a third bound state exists.
struct DoubleWellReport {
    double e1;
    double e2;
    std::optional<double> e3;
    double delta_e;  // e2 - e1
    double period;   // 2 pi / delta_e
    std::optional<double> decoupling_ratio;  // (e2 - e1) / (e3 - e2)
};

class AsymmetricGridError : public std::invalid_argument {
public:
    explicit AsymmetricGridError(const std::string& what) : std::invalid_argument(what) {}
};

class InsufficientBoundStatesError : public std::runtime_error {
public:
    explicit InsufficientBoundStatesError(int found);
    int found() const { return found_; }

private:
    int found_;
};

/// Sign changes along the sampled state, ignoring samples below 1e-6 of the
/// peak amplitude so that noise in the exponential tails is not counted.
int count_nodes(const std::vector<double>& state);

/// Even/Odd from the mirror pairs of a grid symmetric about x = 0, within
/// 1e-6 of the peak amplitude; None when neither symmetry holds.
Parity classify_parity(const std::vector<double>& state, const Grid& grid);

double oscillation_period(double delta_e);

std::vector<StateDescriptor> describe_states(const Spectrum& spectrum);

/// Builds the report from an already-solved double-well spectrum; throws
/// InsufficientBoundStatesError when fewer than two bound states exist.
DoubleWellReport summarize_double_well(const Spectrum& spectrum);

DoubleWellReport double_well_report(double v0, double alpha,
                                    const std::optional<Grid>& grid_override = {});

}  // namespace qwell

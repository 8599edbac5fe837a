#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "qwell/discretize.hpp"

namespace qwell {

class EigenConvergenceError : public std::runtime_error {
public:
    explicit EigenConvergenceError(std::size_t index);
    std::size_t index() const { return index_; }

private:
    std::size_t index_;
};

/// Number of eigenvalues of op strictly below sigma, from the sign count of
/// the LDL^T pivot sequence of op - sigma I (Sturm sequence).
int sturm_count_below(const TridiagonalOperator& op, double sigma);

struct EigenSolution {
    std::vector<double> values;                // ascending
    std::vector<std::vector<double>> vectors;  // unit Euclidean norm, same order
};

/// Lowest how_many eigenpairs of a symmetric tridiagonal operator.
///
/// Eigenvalues are isolated one by one with bisection on the Sturm count to
/// an absolute tolerance of 1e-12 * max(1, spectral bound); eigenvectors come
/// from inverse iteration on the shifted operator (partial-pivoting LU, at
/// most ten iterations, deterministic random start vectors seeded with 1).
/// Vectors belonging to eigenvalues closer than 1e-6 * |op| are
/// re-orthogonalized against the cluster as they are found.
EigenSolution eigen_range(const TridiagonalOperator& op, std::size_t how_many);

/// Bound-state spectrum of a discretized Schroedinger problem.
struct Spectrum {
    std::vector<double> energies;              // ascending
    std::vector<std::vector<double>> states;   // grid measure: delta * sum psi^2 = 1
    Grid grid;
    int bound_count = 0;
    std::vector<bool> bound;                   // per state: clearly below the continuum edge
    std::vector<bool> boundary_contaminated;   // per state: visible amplitude at the box edge
};

/// Solves the potential on the given grid for the lowest n_states levels.
/// Each state is normalized with the grid measure and sign-fixed so that its
/// first component above 1e-6 of the peak amplitude is positive. A state
/// counts as bound when its energy is below -max(1e-8, 10 * estimated
/// discretization error); edge amplitude above 1e-6 of the peak raises the
/// boundary_contaminated warning flag.
Spectrum solve_schrodinger(const PotentialSpec& spec, const Grid& grid, int n_states);

}  // namespace qwell

#pragma once

#include <cstddef>
#include <vector>

#include "qwell/potential.hpp"

namespace qwell {

/// Uniform mesh over [x_min, x_max] with r steps of size delta; stores the
/// r-1 interior points x_k = x_min + k delta. The boundary values carry the
/// implied Dirichlet condition psi(x_min) = psi(x_max) = 0.
struct Grid {
    double x_min = 0.0;
    double x_max = 0.0;
    int r = 0;
    double delta = 0.0;
    std::vector<double> points;
};

struct DomainChoice {
    double x_min;
    double x_max;
    int r;
};

/// Real symmetric tridiagonal operator stored as two arrays: the diagonal
/// (length n) and the shared sub/super-diagonal (length n-1).
struct TridiagonalOperator {
    std::vector<double> diag;
    std::vector<double> offdiag;
    std::size_t dim() const { return diag.size(); }
};

Grid build_grid(double x_min, double x_max, int r);

/// Box half-width max(12, 12/sqrt(alpha)) with r = 4000: wide enough that the
/// reference energies below reproduce to four digits. Radial grids run from
/// the origin outward over twice the half-width.
DomainChoice default_domain(const PotentialSpec& spec);

Grid default_grid(const PotentialSpec& spec);

/// Hamiltonian of the discretized Schroedinger equation on the interior
/// points: diag[k] = 1/delta^2 + V(x_{k+1}), all off-diagonal entries equal
/// to -1/(2 delta^2).
TridiagonalOperator build_hamiltonian(const PotentialSpec& spec, const Grid& grid);

}  // namespace qwell

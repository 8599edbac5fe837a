#include "qwell/discretize.hpp"

#include <algorithm>
#include <cmath>

namespace qwell {

Grid build_grid(double x_min, double x_max, int r) {
    if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_min < x_max))
        throw std::invalid_argument("build_grid: need finite x_min < x_max");
    if (r < 3) throw std::invalid_argument("build_grid: need at least r = 3 mesh steps");
    Grid g;
    g.x_min = x_min;
    g.x_max = x_max;
    g.r = r;
    g.delta = (x_max - x_min) / r;
    g.points.resize(static_cast<std::size_t>(r) - 1);
    for (int k = 1; k < r; ++k) g.points[k - 1] = x_min + k * g.delta;
    return g;
}

DomainChoice default_domain(const PotentialSpec& spec) {
    validate(spec);
    const double half_width = std::max(12.0, 12.0 / std::sqrt(spec.alpha));
    if (spec.kind == PotentialKind::HalfGaussianRadial)
        return {0.0, 2.0 * half_width, 4000};
    return {-half_width, half_width, 4000};
}

Grid default_grid(const PotentialSpec& spec) {
    const DomainChoice d = default_domain(spec);
    return build_grid(d.x_min, d.x_max, d.r);
}

TridiagonalOperator build_hamiltonian(const PotentialSpec& spec, const Grid& grid) {
    if (grid.r < 3 || grid.points.size() != static_cast<std::size_t>(grid.r) - 1)
        throw std::invalid_argument("build_hamiltonian: malformed grid");
    if (spec.kind == PotentialKind::HalfGaussianRadial && grid.x_min != 0.0)
        throw std::invalid_argument("build_hamiltonian: radial grids must start at x_min = 0");
    const double inv_d2 = 1.0 / (grid.delta * grid.delta);
    TridiagonalOperator op;
    op.diag.resize(grid.points.size());
    for (std::size_t k = 0; k < grid.points.size(); ++k)
        op.diag[k] = inv_d2 + evaluate(spec, grid.points[k]);
    op.offdiag.assign(grid.points.size() - 1, -0.5 * inv_d2);
    return op;
}

}  // namespace qwell

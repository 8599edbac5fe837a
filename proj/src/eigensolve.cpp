#include "qwell/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace qwell {

EigenConvergenceError::EigenConvergenceError(std::size_t index)
    : std::runtime_error("eigen_range: inverse iteration failed to converge for eigenvalue " +
                         std::to_string(index)),
      index_(index) {}

namespace {

void check_shape(const TridiagonalOperator& op) {
    if (op.dim() == 0) throw std::invalid_argument("eigensolve: empty operator");
    if (op.dim() >= 2 && op.offdiag.size() != op.dim() - 1)
        throw std::invalid_argument("eigensolve: off-diagonal length must be dim - 1");
    if (op.dim() == 1 && !op.offdiag.empty())
        throw std::invalid_argument("eigensolve: off-diagonal length must be dim - 1");
}

struct Interval {
    double lo;
    double hi;
};

Interval gershgorin(const TridiagonalOperator& op) {
    const std::size_t n = op.dim();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < n; ++i) {
        double radius = 0.0;
        if (i > 0) radius += std::abs(op.offdiag[i - 1]);
        if (i + 1 < n) radius += std::abs(op.offdiag[i]);
        lo = std::min(lo, op.diag[i] - radius);
        hi = std::max(hi, op.diag[i] + radius);
    }
    return {lo, hi};
}

double infinity_norm(const TridiagonalOperator& op) {
    const std::size_t n = op.dim();
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = std::abs(op.diag[i]);
        if (i > 0) row += std::abs(op.offdiag[i - 1]);
        if (i + 1 < n) row += std::abs(op.offdiag[i]);
        norm = std::max(norm, row);
    }
    return norm;
}

// Smallest pivot magnitude the Sturm recurrence is allowed to divide by.
double pivot_floor(const TridiagonalOperator& op) {
    double e2max = 1.0;
    for (double e : op.offdiag) e2max = std::max(e2max, e * e);
    return std::numeric_limits<double>::min() * e2max;
}

// LU factorization with partial pivoting of (op - sigma I). Row swaps add a
// second super-diagonal, so the factors are kept in three upper bands plus
// the multipliers and the swap pattern.
class ShiftedTridiagonalLU {
public:
    ShiftedTridiagonalLU(const TridiagonalOperator& op, double sigma, double floor)
        : n_(op.dim()), lower_(n_ > 0 ? n_ - 1 : 0), swapped_(n_ > 0 ? n_ - 1 : 0),
          u0_(n_), u1_(n_), u2_(n_) {
        double d_cur = op.diag[0] - sigma;
        double s1_cur = n_ > 1 ? op.offdiag[0] : 0.0;
        double s2_cur = 0.0;
        for (std::size_t i = 0; i + 1 < n_; ++i) {
            const double sub = op.offdiag[i];
            const double diag_next = op.diag[i + 1] - sigma;
            const double super_next = (i + 2 < n_) ? op.offdiag[i + 1] : 0.0;
            if (std::abs(d_cur) >= std::abs(sub)) {
                double pivot = d_cur;
                if (std::abs(pivot) < floor) pivot = std::signbit(pivot) ? -floor : floor;
                const double mult = sub / pivot;
                u0_[i] = pivot;
                u1_[i] = s1_cur;
                u2_[i] = s2_cur;
                lower_[i] = mult;
                swapped_[i] = 0;
                d_cur = diag_next - mult * s1_cur;
                s1_cur = super_next - mult * s2_cur;
            } else {
                const double mult = d_cur / sub;
                u0_[i] = sub;
                u1_[i] = diag_next;
                u2_[i] = super_next;
                lower_[i] = mult;
                swapped_[i] = 1;
                d_cur = s1_cur - mult * diag_next;
                s1_cur = s2_cur - mult * super_next;
            }
            s2_cur = 0.0;
        }
        if (std::abs(d_cur) < floor) d_cur = std::signbit(d_cur) ? -floor : floor;
        u0_[n_ - 1] = d_cur;
        u1_[n_ - 1] = 0.0;
        u2_[n_ - 1] = 0.0;
    }

    void solve(std::vector<double>& x) const {
        for (std::size_t i = 0; i + 1 < n_; ++i) {
            if (swapped_[i]) std::swap(x[i], x[i + 1]);
            x[i + 1] -= lower_[i] * x[i];
        }
        x[n_ - 1] /= u0_[n_ - 1];
        if (n_ >= 2) x[n_ - 2] = (x[n_ - 2] - u1_[n_ - 2] * x[n_ - 1]) / u0_[n_ - 2];
        if (n_ >= 3)
            for (std::size_t i = n_ - 2; i-- > 0;)
                x[i] = (x[i] - u1_[i] * x[i + 1] - u2_[i] * x[i + 2]) / u0_[i];
    }

private:
    std::size_t n_;
    std::vector<double> lower_;
    std::vector<char> swapped_;
    std::vector<double> u0_, u1_, u2_;
};

double euclidean_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

// r = op v - lambda v, returning ||r||_2.
double residual_norm(const TridiagonalOperator& op, const std::vector<double>& v, double lambda) {
    const std::size_t n = op.dim();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = (op.diag[i] - lambda) * v[i];
        if (i > 0) r += op.offdiag[i - 1] * v[i - 1];
        if (i + 1 < n) r += op.offdiag[i] * v[i + 1];
        s += r * r;
    }
    return std::sqrt(s);
}

void orthogonalize_against(std::vector<double>& v, const std::vector<std::vector<double>>& basis,
                           std::size_t first, std::size_t last) {
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t j = first; j < last; ++j) {
            const std::vector<double>& u = basis[j];
            double dot = 0.0;
            for (std::size_t i = 0; i < v.size(); ++i) dot += u[i] * v[i];
            for (std::size_t i = 0; i < v.size(); ++i) v[i] -= dot * u[i];
        }
    }
}

}  // namespace

int sturm_count_below(const TridiagonalOperator& op, double sigma) {
    check_shape(op);
    const double floor = pivot_floor(op);
    int count = 0;
    double q = op.diag[0] - sigma;
    if (std::abs(q) < floor) q = -floor;
    if (q < 0.0) ++count;
    for (std::size_t i = 1; i < op.dim(); ++i) {
        q = op.diag[i] - sigma - op.offdiag[i - 1] * op.offdiag[i - 1] / q;
        if (std::abs(q) < floor) q = -floor;
        if (q < 0.0) ++count;
    }
    return count;
}

EigenSolution eigen_range(const TridiagonalOperator& op, std::size_t how_many) {
    check_shape(op);
    const std::size_t n = op.dim();
    if (how_many < 1 || how_many > n)
        throw std::invalid_argument("eigen_range: how_many must lie in [1, dim]");

    const Interval bounds = gershgorin(op);
    const double spectral_bound = std::max({1.0, std::abs(bounds.lo), std::abs(bounds.hi)});
    const double value_tol = 1e-12 * spectral_bound;
    const double norm = std::max(infinity_norm(op), std::numeric_limits<double>::min());

    EigenSolution out;
    out.values.resize(how_many);
    for (std::size_t j = 0; j < how_many; ++j) {
        double lo = (j == 0) ? bounds.lo - value_tol : out.values[j - 1] - value_tol;
        double hi = bounds.hi + value_tol;
        const int want = static_cast<int>(j) + 1;
        while (hi - lo > value_tol) {
            const double mid = lo + 0.5 * (hi - lo);
            if (!(mid > lo && mid < hi)) break;
            if (sturm_count_below(op, mid) >= want) hi = mid;
            else lo = mid;
        }
        out.values[j] = lo + 0.5 * (hi - lo);
    }

    const double cluster_gap = 1e-6 * norm;
    const double residual_tol = 1e-8 * norm;
    const double lu_floor = std::numeric_limits<double>::epsilon() * norm;
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);

    out.vectors.resize(how_many);
    std::size_t cluster_first = 0;
    for (std::size_t j = 0; j < how_many; ++j) {
        if (j > 0 && out.values[j] - out.values[j - 1] >= cluster_gap) cluster_first = j;
        const ShiftedTridiagonalLU lu(op, out.values[j], lu_floor);
        std::vector<double> v(n);
        bool converged = false;
        for (int attempt = 0; attempt < 3 && !converged; ++attempt) {
            for (double& x : v) x = uniform(rng);
            for (int iter = 0; iter < 10; ++iter) {
                lu.solve(v);
                orthogonalize_against(v, out.vectors, cluster_first, j);
                const double len = euclidean_norm(v);
                if (!std::isfinite(len) || len == 0.0) break;  // degenerate start, redraw
                for (double& x : v) x /= len;
                // a second pass scrubs neighbor admixture limited by the
                // eigenvalue tolerance, not just the residual gate
                if (iter >= 1 && residual_norm(op, v, out.values[j]) <= residual_tol) {
                    converged = true;
                    break;
                }
            }
        }
        if (!converged) throw EigenConvergenceError(j);
        out.vectors[j] = std::move(v);
    }
    return out;
}

Spectrum solve_schrodinger(const PotentialSpec& spec, const Grid& grid, int n_states) {
    if (n_states < 1 || static_cast<std::size_t>(n_states) > grid.points.size())
        throw std::invalid_argument("solve_schrodinger: n_states must lie in [1, r - 1]");
    const TridiagonalOperator op = build_hamiltonian(spec, grid);
    EigenSolution eig = eigen_range(op, static_cast<std::size_t>(n_states));

    Spectrum s;
    s.grid = grid;
    s.energies = std::move(eig.values);
    s.states = std::move(eig.vectors);
    s.bound.resize(s.states.size());
    s.boundary_contaminated.resize(s.states.size());

    const double inv_d2 = 1.0 / (grid.delta * grid.delta);
    const double inv_sqrt_delta = 1.0 / std::sqrt(grid.delta);
    for (std::size_t i = 0; i < s.states.size(); ++i) {
        std::vector<double>& psi = s.states[i];
        for (double& x : psi) x *= inv_sqrt_delta;

        double peak = 0.0;
        for (double x : psi) peak = std::max(peak, std::abs(x));
        const double noise = 1e-6 * peak;
        for (double x : psi) {
            if (std::abs(x) > noise) {
                if (x < 0.0)
                    for (double& y : psi) y = -y;
                break;
            }
        }
        // On radial grids the origin edge carries the exact u(0) = 0 boundary
        // condition, so only the outer edge can signal box truncation.
        const bool check_front = spec.kind != PotentialKind::HalfGaussianRadial;
        s.boundary_contaminated[i] =
            std::abs(psi.back()) > noise || (check_front && std::abs(psi.front()) > noise);

        // Leading finite-difference eigenvalue error: (delta^2/6) <(V - E)^2>.
        double moment = 0.0;
        for (std::size_t k = 0; k < psi.size(); ++k) {
            const double dv = (op.diag[k] - inv_d2) - s.energies[i];
            moment += dv * dv * psi[k] * psi[k];
        }
        moment *= grid.delta;
        const double error_estimate = grid.delta * grid.delta / 6.0 * moment;
        const double threshold = std::max(1e-8, 10.0 * error_estimate);
        s.bound[i] = s.energies[i] < -threshold;
    }
    s.bound_count = static_cast<int>(std::count(s.bound.begin(), s.bound.end(), true));
    return s;
}

}  // namespace qwell

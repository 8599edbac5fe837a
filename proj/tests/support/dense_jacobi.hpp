#pragma once

// Brute-force eigenvalue oracle for small dense symmetric matrices: cyclic
// Jacobi rotations until the off-diagonal mass is annihilated. Test-only code,
// independent of the bisection path it checks.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "qwell/discretize.hpp"

namespace qwell::testing {

inline std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> a) {
    const std::size_t n = a.size();
    double scale = 0.0;
    for (const auto& row : a)
        for (double v : row) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) scale = 1.0;

    for (int sweep = 0; sweep < 200; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
        if (off <= 1e-30 * scale * scale) {
            std::vector<double> values(n);
            for (std::size_t i = 0; i < n; ++i) values[i] = a[i][i];
            std::sort(values.begin(), values.end());
            return values;
        }
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(a[p][q]) <= 1e-300) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k][p];
                    const double akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p][k];
                    const double aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    throw std::runtime_error("jacobi_eigenvalues: did not converge");
}

inline std::vector<std::vector<double>> dense_from(const qwell::TridiagonalOperator& op) {
    const std::size_t n = op.dim();
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        a[i][i] = op.diag[i];
        if (i + 1 < n) {
            a[i][i + 1] = op.offdiag[i];
            a[i + 1][i] = op.offdiag[i];
        }
    }
    return a;
}

}  // namespace qwell::testing

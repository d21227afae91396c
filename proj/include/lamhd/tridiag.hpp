#pragma once

#include <cstddef>
#include <vector>

namespace lamhd {

/// Tridiagonal system in banded form: lower[i]*x[i-1] + diag[i]*x[i] +
/// upper[i]*x[i+1] = rhs[i], with lower[0] and upper[n-1] ignored.
struct Tridiagonal {
    std::vector<double> lower;
    std::vector<double> diag;
    std::vector<double> upper;

    std::size_t size() const { return diag.size(); }
};

/// Thomas elimination without pivoting.  Valid for the diagonally dominant
/// SPD systems produced by the implicit viscosity solves; throws
/// std::runtime_error on a vanishing pivot.
std::vector<double> solve_tridiagonal(const Tridiagonal& m, const std::vector<double>& rhs);

/// Max-norm of m*x - rhs, for post-solve verification.
double tridiagonal_residual(const Tridiagonal& m, const std::vector<double>& x,
                            const std::vector<double>& rhs);

} // namespace lamhd

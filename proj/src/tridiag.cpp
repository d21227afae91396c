#include "lamhd/tridiag.hpp"

#include <cmath>
#include <stdexcept>

namespace lamhd {

std::vector<double> solve_tridiagonal(const Tridiagonal& m, const std::vector<double>& rhs) {
    const std::size_t n = m.size();
    if (n == 0) return {};
    if (m.lower.size() != n || m.upper.size() != n || rhs.size() != n) {
        throw std::invalid_argument("solve_tridiagonal: band/rhs size mismatch");
    }

    std::vector<double> c(n), d(n);
    double pivot = m.diag[0];
    if (pivot == 0.0) throw std::runtime_error("solve_tridiagonal: zero pivot at row 0");
    c[0] = m.upper[0] / pivot;
    d[0] = rhs[0] / pivot;
    for (std::size_t i = 1; i < n; ++i) {
        pivot = m.diag[i] - m.lower[i] * c[i - 1];
        if (pivot == 0.0) throw std::runtime_error("solve_tridiagonal: zero pivot at row " + std::to_string(i));
        c[i] = m.upper[i] / pivot;
        d[i] = (rhs[i] - m.lower[i] * d[i - 1]) / pivot;
    }

    std::vector<double> x(n);
    x[n - 1] = d[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
        x[i] = d[i] - c[i] * x[i + 1];
    }
    return x;
}

double tridiagonal_residual(const Tridiagonal& m, const std::vector<double>& x,
                            const std::vector<double>& rhs) {
    const std::size_t n = m.size();
    double r = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double ax = m.diag[i] * x[i];
        if (i > 0) ax += m.lower[i] * x[i - 1];
        if (i + 1 < n) ax += m.upper[i] * x[i + 1];
        r = std::max(r, std::abs(ax - rhs[i]));
    }
    return r;
}

} // namespace lamhd

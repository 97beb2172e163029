#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace hirota {

/// Four-point (cubic) Lagrange interpolation on a sorted abscissa array.
/// Uses the stencil [j-1, j+2] around the bracketing interval, clamped at
/// the ends. Exact for cubic polynomials.
template <class T>
T cubic_interp(const std::vector<double>& xs, const std::vector<T>& ys, double x) {
    const std::size_t n = xs.size();
    if (n != ys.size() || n < 2) throw std::invalid_argument("cubic_interp: bad sample arrays");
    if (n < 4) { // fall back to linear on tiny inputs
        std::size_t j = (x <= xs[1] || n == 2) ? 0 : n - 2;
        double w = (x - xs[j]) / (xs[j + 1] - xs[j]);
        return ys[j] * (1.0 - w) + ys[j + 1] * w;
    }
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    std::size_t j = (it == xs.begin()) ? 0 : static_cast<std::size_t>(it - xs.begin()) - 1;
    j = std::min(std::max<std::size_t>(j, 1), n - 3);
    const std::size_t i0 = j - 1;
    T out{};
    for (std::size_t m = 0; m < 4; ++m) {
        double w = 1.0;
        for (std::size_t l = 0; l < 4; ++l) {
            if (l == m) continue;
            w *= (x - xs[i0 + l]) / (xs[i0 + m] - xs[i0 + l]);
        }
        out += ys[i0 + m] * w;
    }
    return out;
}

/// Cubic Hermite interpolation on [x0, x1] from endpoint values and
/// derivatives. Reproduces node values exactly.
template <class T>
T hermite(double x0, double x1, T f0, T f1, T d0, T d1, double x) {
    const double h = x1 - x0;
    const double u = (x - x0) / h;
    const double u2 = u * u, u3 = u2 * u;
    const double h00 = 2 * u3 - 3 * u2 + 1;
    const double h10 = u3 - 2 * u2 + u;
    const double h01 = -2 * u3 + 3 * u2;
    const double h11 = u3 - u2;
    return f0 * h00 + d0 * (h * h10) + f1 * h01 + d1 * (h * h11);
}

} // namespace hirota

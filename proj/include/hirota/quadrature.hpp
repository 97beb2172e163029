#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

namespace hirota {

/// Cumulative trapezoid sums anchored at the last (largest) sample point:
/// out[i] = integral from x_i to x_{n-1} of the piecewise-linear interpolant,
/// so out[n-1] == 0. Sample points must be strictly monotone increasing.
inline std::vector<double> trapezoid_cumulative(const std::vector<std::pair<double, double>>& samples) {
    const std::size_t n = samples.size();
    if (n < 2) throw std::invalid_argument("trapezoid_cumulative: need at least 2 samples");
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (!(samples[i].first < samples[i + 1].first))
            throw std::invalid_argument("trapezoid_cumulative: points must be strictly increasing");
    std::vector<double> out(n);
    out[n - 1] = 0.0;
    for (std::size_t i = n - 1; i-- > 0;) {
        const double dx = samples[i + 1].first - samples[i].first;
        out[i] = out[i + 1] + 0.5 * dx * (samples[i].second + samples[i + 1].second);
    }
    return out;
}

} // namespace hirota

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hirota/errors.hpp"
#include "hirota/grid.hpp"
#include "hirota/interp.hpp"
#include "hirota/ode.hpp"
#include "hirota/parallel.hpp"
#include "hirota/phase.hpp"

namespace hirota {

/// Initial datum u0 sampled on a closed interval wide enough that both
/// tails have decayed below decay_cutoff (effective compact support).
struct InitialProfile {
    ComplexField field;
    double decay_cutoff = 1e-12;

    InitialProfile() = default;
    InitialProfile(ComplexField f, double cutoff) : field(std::move(f)), decay_cutoff(cutoff) {
        if (field.grid.periodic)
            throw std::invalid_argument("InitialProfile: requires a closed-interval grid");
        if (std::abs(field.values.front()) > decay_cutoff ||
            std::abs(field.values.back()) > decay_cutoff)
            throw std::invalid_argument(
                "InitialProfile: |u0| at the grid endpoints exceeds decay_cutoff");
    }

    /// Cubic interpolation of u0 between samples; zero outside the support.
    Complex at(double x) const {
        const Grid& g = field.grid;
        if (x <= g.x_min || x >= g.x_max) return Complex(0.0, 0.0);
        const double h = g.spacing();
        const std::size_t n = g.n;
        auto j = static_cast<std::ptrdiff_t>(std::floor((x - g.x_min) / h));
        j = std::clamp<std::ptrdiff_t>(j, 1, static_cast<std::ptrdiff_t>(n) - 3);
        const std::size_t i0 = static_cast<std::size_t>(j - 1);
        Complex out(0.0, 0.0);
        for (std::size_t m = 0; m < 4; ++m) {
            const double xm = g.point(i0 + m);
            double w = 1.0;
            for (std::size_t l = 0; l < 4; ++l) {
                if (l == m) continue;
                w *= (x - g.point(i0 + l)) / (xm - g.point(i0 + l));
            }
            out += field.values[i0 + m] * w;
        }
        return out;
    }
};

/// 2x2 complex matrix, row-major.
struct Matrix2c {
    std::array<Complex, 4> e{}; // e[0]=m11 e[1]=m12 e[2]=m21 e[3]=m22
    Complex det() const { return e[0] * e[3] - e[1] * e[2]; }
};

/// Sampled scattering data on the real k line, with the reflection
/// coefficient values interpolated onto k* = -alpha/(6 beta).
struct ScatteringData {
    std::vector<double> k_grid;
    std::vector<Complex> a;
    std::vector<Complex> b;
    std::vector<Complex> r; // conj(b)/a on the real line
    double kstar = 0.0;
    double kstar_amplitude = 0.0; // rho = |r(k*)|
    double kstar_phase = 0.0;     // gamma = arg r(k*)
};

struct ScatteringOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    unsigned threads = 0; // 0 = hardware concurrency
};

/// Value of the left-normalized Jost solution at the right end of the
/// truncated support: integrates Phi_x + i k [sigma3, Phi] = U Phi from
/// x_min (identity) to x_max. det is conserved (the coefficient matrix is
/// trace-free).
inline Matrix2c jost_transfer(const InitialProfile& profile, double k,
                              const ScatteringOptions& opts = {}) {
    const Grid& g = profile.field.grid;
    using S = OdeState<Complex, 4>;
    const Complex two_ik(0.0, 2.0 * k);
    auto rhs = [&](double x, const S& y, S& dy) {
        const Complex u = profile.at(x);
        const Complex ub = std::conj(u);
        dy[0] = u * y[2];
        dy[1] = -two_ik * y[1] + u * y[3];
        dy[2] = two_ik * y[2] + ub * y[0];
        dy[3] = ub * y[1];
    };
    S y0{Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(1, 0)};
    OdeOptions oo;
    oo.rtol = opts.rtol;
    oo.atol = opts.atol;
    S yend;
    try {
        yend = integrate_to_end<Complex, 4>(rhs, y0, g.x_min, g.x_max, oo);
    } catch (const IntegrationError& err) {
        throw IntegrationError(std::string("jost_transfer at k = ") + std::to_string(k) + ": " +
                                   err.what(),
                               err.t_reached());
    }
    return Matrix2c{{yend[0], yend[1], yend[2], yend[3]}};
}

/// a(k), b(k) from the t = 0 jump relation Phi+ = Phi- e^{-i k x sigma3-hat} S(k):
/// with Phi+(x_max) = I this gives S = e^{i k x_max sigma3-hat} Phi-(x_max)^{-1},
/// hence a = (Phi-)_22(x_max) and b = -e^{-2 i k x_max} (Phi-)_21(x_max).
inline std::pair<Complex, Complex> extract_ab(const Matrix2c& transfer, double k, double x_max) {
    const Complex a = transfer.e[3];
    const Complex b = -std::exp(Complex(0.0, -2.0 * k * x_max)) * transfer.e[2];
    return {a, b};
}

/// Interpolate r onto k* and apply the vanishing-amplitude convention
/// (gamma = 0 when rho < 1e-12).
inline std::pair<double, double> reflection_at_kstar(const ScatteringData& data) {
    const Complex rk = cubic_interp(data.k_grid, data.r, data.kstar);
    const double rho = std::abs(rk);
    if (rho < 1e-12) return {rho, 0.0};
    return {rho, std::arg(rk)};
}

inline ScatteringData scattering_data(const InitialProfile& profile,
                                      const std::vector<double>& k_grid,
                                      const HirotaParams& params,
                                      const ScatteringOptions& opts = {}) {
    if (k_grid.size() < 4)
        throw std::invalid_argument("scattering_data: k_grid needs at least 4 points");
    for (std::size_t i = 0; i + 1 < k_grid.size(); ++i)
        if (!(k_grid[i] < k_grid[i + 1]))
            throw std::invalid_argument("scattering_data: k_grid must be strictly increasing");
    const double kstar = params.kstar();
    if (!(kstar >= k_grid.front() && kstar <= k_grid.back()))
        throw std::invalid_argument("scattering_data: k* lies outside the k grid");

    ScatteringData out;
    out.k_grid = k_grid;
    out.kstar = kstar;
    out.a.resize(k_grid.size());
    out.b.resize(k_grid.size());
    out.r.resize(k_grid.size());
    const double x_max = profile.field.grid.x_max;

    parallel_for(k_grid.size(), [&](std::size_t i) {
        const auto transfer = jost_transfer(profile, k_grid[i], opts);
        const auto [a, b] = extract_ab(transfer, k_grid[i], x_max);
        out.a[i] = a;
        out.b[i] = b;
        out.r[i] = std::conj(b) / a;
    }, opts.threads);

    for (std::size_t i = 0; i < k_grid.size(); ++i) {
        if (std::abs(out.a[i]) < 1.0 - 1e-6)
            throw UnitarityError("scattering_data: |a(k)| < 1 at k = " +
                                 std::to_string(k_grid[i]) +
                                 " (integration or truncation failure)");
    }

    const auto [rho, gamma] = reflection_at_kstar(out);
    out.kstar_amplitude = rho;
    out.kstar_phase = gamma;
    return out;
}

} // namespace hirota

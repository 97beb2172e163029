#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "hirota/painleve2.hpp"
#include "hirota/parallel.hpp"
#include "hirota/phase.hpp"

namespace hirota {

/// One evaluation of the leading-order transition-region formula
///   u(x,t) = -(3 beta t)^{-1/3} exp(-2 i t theta(k*) - i gamma) y(s).
/// modulus and phase store the polar split with the leading minus sign
/// (and the sign of y) folded into the phase.
struct AsymptoticSample {
    SpacetimePoint point;
    double s = 0.0;
    Complex u_asymp;
    double modulus = 0.0; // (3 beta t)^{-1/3} |y(s)|
    double phase = 0.0;   // total argument, principal value
};

/// Leading coefficient matrix m1(s) of the local model expansion:
///   [  (i/2) H(s)              (i/2) e^{-2 i t theta(k*) - i gamma} y(s) ]
///   [ -(i/2) e^{+...} y(s)    -(i/2) H(s)                                ]
/// Trace-free; the off-diagonal entries are complex conjugates of each
/// other (defocusing symmetry).
struct M1Matrix {
    std::array<Complex, 4> entries{}; // row-major

    Complex trace() const { return entries[0] + entries[3]; }
};

namespace asym_detail {

inline double wrap_angle(double a) {
    const double tau = 2.0 * std::numbers::pi;
    a = std::fmod(a, tau);
    if (a <= -std::numbers::pi) a += tau;
    if (a > std::numbers::pi) a -= tau;
    return a;
}

/// -2 t theta(k*) - gamma, the t- and xi-dependent part of the argument.
inline double base_phase(const SpacetimePoint& p, const HirotaParams& params, double gamma) {
    const double th = std::real(theta(Complex(params.kstar(), 0.0), params, p.xi));
    return -2.0 * p.t * th - gamma;
}

} // namespace asym_detail

inline AsymptoticSample u_asymptotic(const SpacetimePoint& p, const HirotaParams& params,
                                     const Painleve2Table& table, double gamma) {
    const ScaledCoords sc = scaled_coords(p, params);
    const auto ev = painleve2::eval(table, sc.s); // throws out_of_range beyond the table
    const double c = std::pow(3.0 * params.beta * p.t, -1.0 / 3.0);
    const double phi0 = asym_detail::base_phase(p, params, gamma);
    AsymptoticSample out;
    out.point = p;
    out.s = sc.s;
    out.u_asymp = -c * std::exp(Complex(0.0, phi0)) * ev.y;
    out.modulus = c * std::abs(ev.y);
    // the leading minus contributes pi; a negative y contributes another pi
    out.phase = asym_detail::wrap_angle(phi0 + std::numbers::pi +
                                        (ev.y < 0.0 ? std::numbers::pi : 0.0));
    return out;
}

inline M1Matrix m1_matrix(const SpacetimePoint& p, const HirotaParams& params,
                          const Painleve2Table& table, double gamma) {
    const ScaledCoords sc = scaled_coords(p, params);
    const auto ev = painleve2::eval(table, sc.s);
    const double phi0 = asym_detail::base_phase(p, params, gamma);
    const Complex ihalf(0.0, 0.5);
    M1Matrix m;
    m.entries[0] = ihalf * ev.H;
    m.entries[1] = ihalf * std::exp(Complex(0.0, phi0)) * ev.y;
    m.entries[2] = -ihalf * std::exp(Complex(0.0, -phi0)) * ev.y;
    m.entries[3] = -ihalf * ev.H;
    return m;
}

/// u recovered through the model-matrix route,
/// u = 2i (m1)_{12} / (3 beta t)^{1/3}; agrees with u_asymptotic to
/// roundoff and pins the composite sign between the two formulas.
inline Complex u_from_m1(const SpacetimePoint& p, const HirotaParams& params,
                         const Painleve2Table& table, double gamma) {
    const M1Matrix m = m1_matrix(p, params, table, gamma);
    return Complex(0.0, 2.0) * m.entries[1] / std::cbrt(3.0 * params.beta * p.t);
}

/// Sweep the transition region at fixed t: each s maps to
/// xi = xi* + (3 beta)^{1/3} s t^{-2/3}, x = xi t.
inline std::vector<AsymptoticSample> sample_transition_line(double t,
                                                            const std::vector<double>& s_values,
                                                            const HirotaParams& params,
                                                            const Painleve2Table& table,
                                                            double gamma) {
    if (!(t > 0.0)) throw std::invalid_argument("sample_transition_line: t must be positive");
    std::vector<AsymptoticSample> out(s_values.size());
    parallel_for(s_values.size(), [&](std::size_t i) {
        const double xi = params.xi_star() +
                          std::cbrt(3.0 * params.beta) * s_values[i] * std::pow(t, -2.0 / 3.0);
        out[i] = u_asymptotic(SpacetimePoint::from_xi(xi, t), params, table, gamma);
    });
    return out;
}

} // namespace hirota

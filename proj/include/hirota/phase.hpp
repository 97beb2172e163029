#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "hirota/grid.hpp"

namespace hirota {

/// Physical constants of the equation: second- and third-dispersion
/// coefficients. beta must be positive.
struct HirotaParams {
    double alpha = 1.0;
    double beta = 1.0 / 3.0;

    HirotaParams() = default;
    HirotaParams(double a, double b) : alpha(a), beta(b) {
        if (!(beta > 0.0)) throw std::invalid_argument("HirotaParams: beta must be positive");
    }

    /// Merged stationary point k* = -alpha/(6 beta).
    double kstar() const { return -alpha / (6.0 * beta); }
    /// Critical ray xi* = alpha^2/(3 beta) where the stationary points merge.
    double xi_star() const { return alpha * alpha / (3.0 * beta); }
};

struct SpacetimePoint {
    double x = 0.0;
    double t = 1.0;
    double xi = 0.0; // x/t, stored

    SpacetimePoint() = default;
    SpacetimePoint(double x_, double t_) : x(x_), t(t_), xi(x_ / t_) {
        if (!(t > 0.0)) throw std::invalid_argument("SpacetimePoint: t must be positive");
    }
    static SpacetimePoint from_xi(double xi_, double t_) { return SpacetimePoint(xi_ * t_, t_); }
};

/// Phase function theta(k) = 4 beta k^3 + 2 alpha k^2 + k xi.
inline Complex theta(Complex k, const HirotaParams& p, double xi) {
    return 4.0 * p.beta * k * k * k + 2.0 * p.alpha * k * k + k * xi;
}

inline Complex theta_prime(Complex k, const HirotaParams& p, double xi) {
    return 12.0 * p.beta * k * k + 4.0 * p.alpha * k + xi;
}

/// Roots of theta'(k). Real and ordered (k1 <= k2) for xi < xi*, a complex
/// conjugate pair for xi > xi*; k1 carries the negative imaginary part.
struct StationaryPoints {
    Complex k1;
    Complex k2;
    bool degenerate = false;
};

inline StationaryPoints stationary_points(const HirotaParams& p, double xi) {
    double disc = p.alpha * p.alpha - 3.0 * p.beta * xi;
    // treat roundoff-level discriminants as the exact degenerate case
    const double scale = std::max(p.alpha * p.alpha, std::abs(3.0 * p.beta * xi));
    if (std::abs(disc) <= 32.0 * std::numeric_limits<double>::epsilon() * scale) disc = 0.0;
    StationaryPoints out;
    out.degenerate = (disc == 0.0);
    const Complex root = std::sqrt(Complex(disc, 0.0)); // principal branch
    out.k1 = (-p.alpha - root) / (6.0 * p.beta);
    out.k2 = (-p.alpha + root) / (6.0 * p.beta);
    return out;
}

/// Transition-region variables: s and the map k -> khat = (3 beta t)^{1/3} (k - k*).
struct ScaledCoords {
    double s = 0.0;
    double kstar = 0.0;
    double scale = 1.0; // (3 beta t)^{1/3}

    Complex khat(Complex k) const { return scale * (k - kstar); }
};

inline ScaledCoords scaled_coords(const SpacetimePoint& p, const HirotaParams& params) {
    if (!(p.t > 0.0)) throw std::invalid_argument("scaled_coords: t must be positive");
    ScaledCoords out;
    out.kstar = params.kstar();
    out.scale = std::cbrt(3.0 * params.beta * p.t);
    out.s = std::pow(3.0 * params.beta, -1.0 / 3.0) * (p.xi - params.xi_star()) *
            std::pow(p.t, 2.0 / 3.0);
    return out;
}

/// Spacetime set 0 < |xi - xi*| t^{2/3} < M around the critical ray.
struct TransitionRegion {
    double M = 1.0;

    TransitionRegion() = default;
    explicit TransitionRegion(double bound) : M(bound) {
        if (!(M > 0.0)) throw std::invalid_argument("TransitionRegion: M must be positive");
    }
};

enum class RegionHalf { P_le, P_ge, outside };

/// Classify a point against the transition region; the boundary xi == xi*
/// is assigned to the left half (both halves share the formula there).
inline RegionHalf classify_region(const SpacetimePoint& p, const HirotaParams& params,
                                  const TransitionRegion& region) {
    if (!(p.t > 0.0)) throw std::invalid_argument("classify_region: t must be positive");
    const double q = (p.xi - params.xi_star()) * std::pow(p.t, 2.0 / 3.0);
    if (!(std::abs(q) < region.M)) return RegionHalf::outside;
    return (q <= 0.0) ? RegionHalf::P_le : RegionHalf::P_ge;
}

/// Sign of Re(i theta(k)), the signature-table shading.
inline int signature_sign(Complex k, const HirotaParams& p, double xi) {
    const double v = -std::imag(theta(k, p, xi)); // Re(i z) = -Im z
    return (v > 0.0) - (v < 0.0);
}

} // namespace hirota

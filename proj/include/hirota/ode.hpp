#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "hirota/errors.hpp"

namespace hirota {

/// Fixed-size state vector for the adaptive integrator.
template <class T, std::size_t N>
using OdeState = std::array<T, N>;

namespace ode_detail {

template <class T, std::size_t N>
OdeState<T, N> axpy(const OdeState<T, N>& y, double a, const OdeState<T, N>& d) {
    OdeState<T, N> out;
    for (std::size_t i = 0; i < N; ++i) out[i] = y[i] + a * d[i];
    return out;
}

inline double mag(double x) { return std::abs(x); }
inline double mag(const std::complex<double>& x) { return std::abs(x); }

} // namespace ode_detail

struct OdeOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    double max_step = std::numeric_limits<double>::infinity();
    std::size_t max_steps = 50'000'000;
};

template <class T, std::size_t N, class F>
struct OdeProblem {
    F rhs; // rhs(t, y, dydt)
    OdeState<T, N> y0;
    double t0 = 0.0;
    double t1 = 1.0;
    OdeOptions opts;
};

/// One accepted Dormand-Prince step with the quartic dense-output polynomial
/// y(t0+theta*h) = r0 + theta*(r1 + (1-theta)*(r2 + theta*(r3 + (1-theta)*r4))).
template <class T, std::size_t N>
struct DenseStep {
    double t0, h;
    std::array<OdeState<T, N>, 5> r;

    OdeState<T, N> eval(double t) const {
        const double th = (t - t0) / h, om = 1.0 - th;
        OdeState<T, N> out;
        for (std::size_t i = 0; i < N; ++i)
            out[i] = r[0][i] + th * (r[1][i] + om * (r[2][i] + th * (r[3][i] + om * r[4][i])));
        return out;
    }

    /// Time derivative of the interpolant.
    OdeState<T, N> eval_derivative(double t) const {
        const double th = (t - t0) / h;
        OdeState<T, N> out;
        for (std::size_t i = 0; i < N; ++i) {
            // d/dtheta of r1*th + r2*th(1-th) + r3*th^2(1-th) + r4*th^2(1-th)^2
            auto d = r[1][i] + (1.0 - 2.0 * th) * r[2][i] + th * (2.0 - 3.0 * th) * r[3][i] +
                     2.0 * th * (1.0 - th) * (1.0 - 2.0 * th) * r[4][i];
            out[i] = d / h;
        }
        return out;
    }
};

/// Dense-output trajectory over [t0, t1] (t1 < t0 allowed).
template <class T, std::size_t N>
class Trajectory {
  public:
    Trajectory(double t0, double t1, std::vector<DenseStep<T, N>> steps)
        : t0_(t0), t1_(t1), steps_(std::move(steps)) {}

    double t_begin() const { return t0_; }
    double t_end() const { return t1_; }
    std::size_t step_count() const { return steps_.size(); }

    OdeState<T, N> eval(double t) const { return locate(t).eval(t); }
    OdeState<T, N> eval_derivative(double t) const { return locate(t).eval_derivative(t); }
    OdeState<T, N> final_state() const { return steps_.back().eval(t1_); }

  private:
    const DenseStep<T, N>& locate(double t) const {
        const double dir = (t1_ >= t0_) ? 1.0 : -1.0;
        const double eps = 1e-9 * (std::abs(t0_) + std::abs(t1_) + 1.0);
        if (dir * (t - t0_) < -eps || dir * (t - t1_) > eps)
            throw std::out_of_range("Trajectory::eval: t outside integration interval");
        // binary search over step starts
        std::size_t lo = 0, hi = steps_.size();
        while (hi - lo > 1) {
            std::size_t mid = (lo + hi) / 2;
            if (dir * (t - steps_[mid].t0) >= 0.0) lo = mid; else hi = mid;
        }
        return steps_[lo];
    }

    double t0_, t1_;
    std::vector<DenseStep<T, N>> steps_;
};

namespace ode_detail {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// dense-output weights (Hairer, Norsett & Wanner)
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

template <class T, std::size_t N, class F, class OnStep>
OdeState<T, N> drive(F&& rhs, OdeState<T, N> y, double t0, double t1, const OdeOptions& opts,
                     OnStep&& on_step) {
    if (!(opts.rtol > 0.0) || !(opts.atol > 0.0))
        throw std::invalid_argument("integrate_ode: tolerances must be positive");
    if (t1 == t0) return y;
    const double dir = (t1 > t0) ? 1.0 : -1.0;
    const double span = std::abs(t1 - t0);

    OdeState<T, N> k1, k2, k3, k4, k5, k6, k7, ytmp, ynew;
    rhs(t0, y, k1);

    // initial step: conservative fraction of the span, limited by |f|
    double fmag = 0.0, ymag = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        fmag = std::max(fmag, mag(k1[i]));
        ymag = std::max(ymag, mag(y[i]));
    }
    double h = span / 100.0;
    if (fmag > 0.0) h = std::min(h, 0.01 * (ymag + opts.atol) / fmag + 1e-12 * span);
    h = std::min(h, opts.max_step);
    h *= dir;

    double t = t0;
    const double hmin_floor = 16.0 * std::numeric_limits<double>::epsilon();

    for (std::size_t nstep = 0; nstep < opts.max_steps;) {
        if (dir * (t + h - t1) > 0.0) h = t1 - t; // clip final step
        if (std::abs(h) <= hmin_floor * std::max(std::abs(t), 1.0))
            throw IntegrationError("integrate_ode: step size underflow", t);

        ytmp = axpy(y, h * a21, k1);
        rhs(t + c2 * h, ytmp, k2);
        for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        rhs(t + c3 * h, ytmp, k3);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        rhs(t + c4 * h, ytmp, k4);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        rhs(t + c5 * h, ytmp, k5);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        rhs(t + h, ytmp, k6);
        for (std::size_t i = 0; i < N; ++i)
            ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        rhs(t + h, ynew, k7); // FSAL

        // scaled max-norm error estimate
        double err = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const auto ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                                 e7 * k7[i]);
            const double sc =
                std::max(opts.atol, opts.rtol * std::max(mag(y[i]), mag(ynew[i])));
            err = std::max(err, mag(ei) / sc);
        }

        if (err <= 1.0) {
            on_step(t, h, y, ynew, k1, k3, k4, k5, k6, k7);
            t += h;
            y = ynew;
            k1 = k7;
            ++nstep;
            if (dir * (t - t1) >= 0.0) return y;
        }

        double fac = 0.9 * std::pow(std::max(err, 1e-16), -0.2);
        fac = std::clamp(fac, 0.2, 5.0);
        h *= fac;
        if (std::abs(h) > opts.max_step) h = dir * opts.max_step;
    }
    throw IntegrationError("integrate_ode: max step count exceeded", t);
}

} // namespace ode_detail

/// Adaptive Dormand-Prince 5(4) with dense output. Supports backward
/// integration (t1 < t0). Per-step embedded error estimate is kept below
/// max(atol, rtol*|y|) componentwise.
template <class T, std::size_t N, class F>
Trajectory<T, N> integrate_ode(F&& rhs, const OdeState<T, N>& y0, double t0, double t1,
                               const OdeOptions& opts = {}) {
    using ode_detail::d1;
    using ode_detail::d3;
    using ode_detail::d4;
    using ode_detail::d5;
    using ode_detail::d6;
    using ode_detail::d7;
    std::vector<DenseStep<T, N>> steps;
    auto record = [&](double t, double h, const OdeState<T, N>& y, const OdeState<T, N>& ynew,
                      const OdeState<T, N>& k1, const OdeState<T, N>& k3,
                      const OdeState<T, N>& k4, const OdeState<T, N>& k5,
                      const OdeState<T, N>& k6, const OdeState<T, N>& k7) {
        DenseStep<T, N> st;
        st.t0 = t;
        st.h = h;
        for (std::size_t i = 0; i < N; ++i) {
            const auto dy = ynew[i] - y[i];
            st.r[0][i] = y[i];
            st.r[1][i] = dy;
            st.r[2][i] = h * k1[i] - dy;
            st.r[3][i] = dy - h * k7[i] - st.r[2][i];
            st.r[4][i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] +
                              d7 * k7[i]);
        }
        steps.push_back(std::move(st));
    };
    auto yend = ode_detail::drive<T, N>(rhs, y0, t0, t1, opts, record);
    (void)yend;
    if (steps.empty()) { // t1 == t0
        DenseStep<T, N> st{};
        st.t0 = t0;
        st.h = 1.0;
        for (std::size_t i = 0; i < N; ++i) st.r[0][i] = y0[i];
        steps.push_back(std::move(st));
    }
    return Trajectory<T, N>(t0, t1, std::move(steps));
}

/// Same stepper without storing the trajectory; returns only the final state.
template <class T, std::size_t N, class F>
OdeState<T, N> integrate_to_end(F&& rhs, const OdeState<T, N>& y0, double t0, double t1,
                                const OdeOptions& opts = {}) {
    return ode_detail::drive<T, N>(rhs, y0, t0, t1, opts,
                                   [](auto&&...) {});
}

} // namespace hirota

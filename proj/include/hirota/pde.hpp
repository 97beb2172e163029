#pragma once

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "hirota/errors.hpp"
#include "hirota/grid.hpp"
#include "hirota/phase.hpp"
#include "hirota/scattering.hpp"

namespace hirota {

/// Complex field on a periodic grid at one instant.
struct FieldState {
    ComplexField field;
    double time = 0.0;

    FieldState() = default;
    FieldState(ComplexField f, double t) : field(std::move(f)), time(t) {
        if (!field.grid.periodic)
            throw std::invalid_argument("FieldState: requires a periodic grid");
    }
};

struct SolverConfig {
    double dt = 5e-3;
    bool dealias = true;
    int scheme_order = 4;
    double boundary_threshold = 1e-6; // edge-amplitude error trigger at snapshots
    double edge_fraction = 0.01;      // width of each edge sentinel zone

    void validate() const {
        if (!(dt > 0.0)) throw std::invalid_argument("SolverConfig: dt must be positive");
        if (scheme_order != 4)
            throw std::invalid_argument("SolverConfig: only the order-4 scheme is implemented");
        if (!(boundary_threshold > 0.0))
            throw std::invalid_argument("SolverConfig: boundary_threshold must be positive");
    }
};

/// Fourier multiplier of the linearized flow: u_hat(k,t) = e^{omega(k) t} u_hat(k,0)
/// for i u_t + alpha u_xx + i beta u_xxx = 0, i.e. omega(k) = i (beta k^3 - alpha k^2).
inline Complex linear_symbol(double k, const HirotaParams& params) {
    return Complex(0.0, params.beta * k * k * k - params.alpha * k * k);
}

namespace pde_detail {

inline std::mutex& fftw_planner_mutex() {
    static std::mutex mu;
    return mu;
}

/// Out-of-place complex FFT pair for one grid size (RAII around fftw plans).
/// Plans carry FFTW_UNALIGNED so they can run on arbitrary caller buffers
/// via the new-array execute interface, and FFTW_ESTIMATE so plan selection
/// is deterministic run-to-run.
class Fft {
  public:
    explicit Fft(std::size_t n) : n_(n) {
        std::vector<Complex> a(n), b(n);
        std::lock_guard<std::mutex> lk(fftw_planner_mutex());
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        fwd_ = fftw_plan_dft_1d(static_cast<int>(n), buf(a.data()), buf(b.data()), FFTW_FORWARD,
                                flags);
        bwd_ = fftw_plan_dft_1d(static_cast<int>(n), buf(a.data()), buf(b.data()), FFTW_BACKWARD,
                                flags);
        if (!fwd_ || !bwd_) throw std::runtime_error("Fft: fftw plan creation failed");
    }
    ~Fft() {
        std::lock_guard<std::mutex> lk(fftw_planner_mutex());
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
    }
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    // in and out must be distinct buffers of length n
    void forward(const std::vector<Complex>& x, std::vector<Complex>& out) {
        out.resize(n_);
        fftw_execute_dft(fwd_, buf(const_cast<Complex*>(x.data())), buf(out.data()));
    }
    void inverse(const std::vector<Complex>& x, std::vector<Complex>& out) {
        out.resize(n_);
        fftw_execute_dft(bwd_, buf(const_cast<Complex*>(x.data())), buf(out.data()));
        const double inv = 1.0 / static_cast<double>(n_);
        for (std::size_t i = 0; i < n_; ++i) out[i] *= inv;
    }

  private:
    static fftw_complex* buf(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }
    std::size_t n_;
    fftw_plan fwd_ = nullptr, bwd_ = nullptr;
};

} // namespace pde_detail

/// Integrating-factor RK4 spectral solver: the linear flow is applied
/// exactly through its Fourier multiplier, classical RK4 handles the
/// transformed nonlinearity N(u) = -2 i alpha |u|^2 u + 6 beta |u|^2 u_x,
/// with 2/3-rule truncation of every nonlinear product when enabled.
class HirotaSolver {
  public:
    HirotaSolver(const Grid& grid, const HirotaParams& params, const SolverConfig& config)
        : grid_(grid), params_(params), cfg_(config), fft_(grid.n) {
        cfg_.validate();
        if (!grid_.periodic) throw std::invalid_argument("HirotaSolver: grid must be periodic");
        const std::size_t n = grid_.n;
        k_.resize(n);
        ik_.resize(n);
        mask_.resize(n);
        const double dk = 2.0 * std::numbers::pi / grid_.length();
        const double kmax = dk * static_cast<double>(n / 2);
        for (std::size_t j = 0; j < n; ++j) {
            const double kj = dk * (j <= n / 2 ? static_cast<double>(j)
                                               : static_cast<double>(j) - static_cast<double>(n));
            k_[j] = kj;
            ik_[j] = Complex(0.0, kj);
            mask_[j] = (!cfg_.dealias || std::abs(kj) <= (2.0 / 3.0) * kmax) ? 1.0 : 0.0;
        }
        set_step_size(cfg_.dt);
        u_.resize(n);
        ux_.resize(n);
        nl_.resize(n);
        tmp_.resize(n);
        n1_.resize(n);
        n2_.resize(n);
        n3_.resize(n);
        n4_.resize(n);
        stage_.resize(n);
    }

    const Grid& grid() const { return grid_; }

    /// Load a physical-space field as the current spectral state.
    void load(const std::vector<Complex>& u_phys, double time) {
        fft_.forward(u_phys, spec_);
        for (std::size_t i = 0; i < grid_.n; ++i) spec_[i] *= mask_[i];
        time_ = time;
    }

    double time() const { return time_; }

    std::vector<Complex> physical() {
        std::vector<Complex> out;
        fft_.inverse(spec_, out);
        return out;
    }

    /// Advance by one step of size tau (defaults to the configured dt).
    void advance(double tau = 0.0) {
        if (tau == 0.0) tau = cfg_.dt;
        if (tau != current_dt_) set_step_size(tau);
        const std::size_t n = grid_.n;
        nonlinear(spec_, n1_);
        for (std::size_t i = 0; i < n; ++i) stage_[i] = eh_[i] * (spec_[i] + 0.5 * tau * n1_[i]);
        nonlinear(stage_, n2_);
        for (std::size_t i = 0; i < n; ++i) stage_[i] = eh_[i] * spec_[i] + 0.5 * tau * n2_[i];
        nonlinear(stage_, n3_);
        for (std::size_t i = 0; i < n; ++i)
            stage_[i] = ef_[i] * spec_[i] + tau * eh_[i] * n3_[i];
        nonlinear(stage_, n4_);
        double probe = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            spec_[i] = ef_[i] * spec_[i] +
                       (tau / 6.0) * (ef_[i] * n1_[i] + 2.0 * eh_[i] * (n2_[i] + n3_[i]) + n4_[i]);
            probe += std::real(spec_[i]) + std::imag(spec_[i]);
        }
        time_ += tau;
        if (!std::isfinite(probe))
            throw BlowUpError("HirotaSolver: non-finite field (dt too large?)", time_);
    }

    /// Max |u| over the two edge sentinel zones of the current state.
    double edge_amplitude() {
        auto u = physical();
        const std::size_t n = grid_.n;
        const std::size_t w = std::max<std::size_t>(1, static_cast<std::size_t>(
                                                           cfg_.edge_fraction * static_cast<double>(n)));
        double m = 0.0;
        for (std::size_t i = 0; i < w; ++i) m = std::max(m, std::abs(u[i]));
        for (std::size_t i = n - w; i < n; ++i) m = std::max(m, std::abs(u[i]));
        return m;
    }

  private:
    void set_step_size(double tau) {
        const std::size_t n = grid_.n;
        eh_.resize(n);
        ef_.resize(n);
        for (std::size_t j = 0; j < n; ++j) {
            eh_[j] = std::exp(linear_symbol(k_[j], params_) * (tau / 2.0));
            ef_[j] = eh_[j] * eh_[j];
        }
        current_dt_ = tau;
    }

    /// out = mask .* fft(N(ifft(vh)))
    void nonlinear(const std::vector<Complex>& vh, std::vector<Complex>& out) {
        const std::size_t n = grid_.n;
        fft_.inverse(vh, u_);
        for (std::size_t i = 0; i < n; ++i) tmp_[i] = ik_[i] * vh[i];
        fft_.inverse(tmp_, ux_);
        const Complex m2ia(0.0, -2.0 * params_.alpha);
        const double b6 = 6.0 * params_.beta;
        for (std::size_t i = 0; i < n; ++i) {
            const double a2 = std::norm(u_[i]);
            nl_[i] = m2ia * a2 * u_[i] + b6 * a2 * ux_[i];
        }
        fft_.forward(nl_, out);
        for (std::size_t i = 0; i < n; ++i) out[i] *= mask_[i];
    }

    Grid grid_;
    HirotaParams params_;
    SolverConfig cfg_;
    pde_detail::Fft fft_;
    double time_ = 0.0;
    double current_dt_ = 0.0;
    std::vector<double> k_, mask_;
    std::vector<Complex> ik_, eh_, ef_;
    std::vector<Complex> spec_, u_, ux_, nl_, tmp_, stage_, n1_, n2_, n3_, n4_;
};

/// Single-step convenience wrapper around HirotaSolver.
inline FieldState step(const FieldState& state, const SolverConfig& config,
                       const HirotaParams& params) {
    HirotaSolver solver(state.field.grid, params, config);
    solver.load(state.field.values, state.time);
    solver.advance();
    return FieldState(ComplexField(state.field.grid, solver.physical()), solver.time());
}

/// Periodic quadrature of |u|^2 over the domain.
inline double mass(const FieldState& state) {
    double sum = 0.0;
    for (const auto& v : state.field.values) sum += std::norm(v);
    return sum * state.field.grid.spacing();
}

struct EvolveResult {
    FieldState final_state;
    std::vector<FieldState> snapshots;     // one per requested time, in order
    std::vector<double> snapshot_masses;
    std::vector<double> edge_amplitudes;   // max |u| in the sentinel zones per snapshot
};

/// Evolve an initial profile to t_end, recording snapshots at the requested
/// times. Fails loudly if the field reaches the periodic boundary above
/// config.boundary_threshold at any snapshot (no absorbing layer by design).
inline EvolveResult evolve(const InitialProfile& u0, double t_end, const SolverConfig& config,
                           const HirotaParams& params, const Grid& domain,
                           std::vector<double> snapshot_times = {}) {
    config.validate();
    if (!(t_end >= 0.0)) throw std::invalid_argument("evolve: t_end must be nonnegative");
    std::sort(snapshot_times.begin(), snapshot_times.end());
    for (double ts : snapshot_times)
        if (!(ts > 0.0 && ts <= t_end))
            throw std::invalid_argument("evolve: snapshot times must lie in (0, t_end]");

    HirotaSolver solver(domain, params, config);
    std::vector<Complex> init(domain.n);
    for (std::size_t i = 0; i < domain.n; ++i) init[i] = u0.at(domain.point(i));
    solver.load(init, 0.0);

    EvolveResult out;
    auto record = [&](double t_label) {
        FieldState snap(ComplexField(domain, solver.physical()), t_label);
        const double edge = solver.edge_amplitude();
        if (edge > config.boundary_threshold)
            throw BoundaryContaminationError(t_label, edge, config.boundary_threshold);
        out.edge_amplitudes.push_back(edge);
        out.snapshot_masses.push_back(mass(snap));
        out.snapshots.push_back(std::move(snap));
    };

    std::vector<double> targets = snapshot_times;
    if (targets.empty() || targets.back() < t_end) targets.push_back(t_end);
    double t = 0.0;
    for (double target : targets) {
        const double span = target - t;
        const auto nfull = static_cast<std::size_t>(std::floor(span / config.dt + 1e-9));
        for (std::size_t i = 0; i < nfull; ++i) solver.advance(config.dt);
        const double rest = target - (t + static_cast<double>(nfull) * config.dt);
        if (rest > 1e-12 * std::max(1.0, target)) solver.advance(rest);
        t = target;
        const bool wanted = !snapshot_times.empty() &&
                            std::find(snapshot_times.begin(), snapshot_times.end(), target) !=
                                snapshot_times.end();
        if (wanted) record(target);
    }
    FieldState fin(ComplexField(domain, solver.physical()), t_end);
    const double edge = solver.edge_amplitude();
    if (edge > config.boundary_threshold)
        throw BoundaryContaminationError(t_end, edge, config.boundary_threshold);
    out.final_state = std::move(fin);
    return out;
}

} // namespace hirota

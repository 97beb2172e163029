#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hirota/asymptotics.hpp"
#include "hirota/io.hpp"
#include "hirota/painleve2.hpp"
#include "hirota/pde.hpp"
#include "hirota/phase.hpp"
#include "hirota/scattering.hpp"

namespace hirota {

/// Built-in profile families (A*sech(x/w), A*exp(-x^2/w^2)) or a CSV file.
struct ProfileSpec {
    std::string family = "sech"; // "sech", "gaussian", or "csv"
    double amplitude = 0.4;
    double width = 1.0;
    std::string csv_path;
    double decay_cutoff = 1e-12;
};

/// Sample a built-in family on a closed interval wide enough to satisfy the
/// decay_cutoff invariant (the interval grows with amplitude/width; 20 is
/// the floor).
inline InitialProfile build_profile(const ProfileSpec& spec) {
    if (spec.family == "csv") return io::read_profile_csv(spec.csv_path, spec.decay_cutoff);
    if (spec.family != "sech" && spec.family != "gaussian")
        throw std::invalid_argument("build_profile: unknown family '" + spec.family + "'");
    if (!(spec.width > 0.0)) throw std::invalid_argument("build_profile: width must be positive");
    if (spec.amplitude < 0.0)
        throw std::invalid_argument("build_profile: amplitude must be nonnegative");

    const double A = spec.amplitude, w = spec.width, cut = spec.decay_cutoff;
    double L = 20.0;
    if (A > cut) {
        if (spec.family == "sech")
            L = std::max(L, w * std::log(2.0 * A / cut) + 2.0 * w);
        else
            L = std::max(L, w * (std::sqrt(std::log(A / cut)) + 0.5));
    }
    L = std::ceil(L);
    const double h = 0.01;
    const auto n = static_cast<std::size_t>(std::llround(2.0 * L / h)) + 1;
    Grid g(-L, L, n, false);
    auto f = [&](double x) -> Complex {
        if (spec.family == "sech") return Complex(A / std::cosh(x / w), 0.0);
        return Complex(A * std::exp(-(x / w) * (x / w)), 0.0);
    };
    return InitialProfile(ComplexField::sample(g, f), cut);
}

struct KGridSpec {
    double k_min = -10.0;
    double k_max = 10.0;
    std::size_t n = 2001;

    std::vector<double> build() const {
        if (!(k_min < k_max) || n < 4) throw std::invalid_argument("KGridSpec: bad k grid");
        std::vector<double> ks(n);
        const double dk = (k_max - k_min) / static_cast<double>(n - 1);
        for (std::size_t i = 0; i < n; ++i) ks[i] = k_min + dk * static_cast<double>(i);
        return ks;
    }
};

struct PainleveSpec {
    double s_min = -15.0;
    double s0 = 8.0;
    double tol = 1e-12;
};

/// Full experiment description; serializes to/from the JSON config format.
struct ExperimentConfig {
    HirotaParams params{1.0, 1.0 / 3.0};
    ProfileSpec profile;
    double region_bound = 5.0; // M
    std::vector<double> times{100.0, 180.0, 260.0, 400.0};
    std::vector<double> s_values{-2.0, -1.0, 0.0, 1.0, 2.0};
    SolverConfig solver;
    Grid domain{-2048.0, 2048.0, 65536, true};
    KGridSpec k_grid;
    PainleveSpec painleve;
    double ode_tol = 1e-10; // scattering integration rtol
    std::string out_dir = "out";

    void validate() const {
        for (double t : times)
            if (!(t > 0.0)) throw std::invalid_argument("ExperimentConfig: times must be > 0");
        for (double s : s_values)
            if (!(std::abs(s) < region_bound))
                throw std::invalid_argument("ExperimentConfig: need |s| < M for all s samples");
    }
};

inline void to_json(io::json& j, const ExperimentConfig& c) {
    j = io::json{
        {"alpha", c.params.alpha},
        {"beta", c.params.beta},
        {"profile",
         {{"family", c.profile.family},
          {"amplitude", c.profile.amplitude},
          {"width", c.profile.width},
          {"csv", c.profile.csv_path},
          {"decay_cutoff", c.profile.decay_cutoff}}},
        {"region_bound", c.region_bound},
        {"times", c.times},
        {"s_values", c.s_values},
        {"solver",
         {{"dt", c.solver.dt},
          {"dealias", c.solver.dealias},
          {"scheme_order", c.solver.scheme_order},
          {"boundary_threshold", c.solver.boundary_threshold},
          {"edge_fraction", c.solver.edge_fraction}}},
        {"domain", {{"x_min", c.domain.x_min}, {"x_max", c.domain.x_max}, {"n", c.domain.n}}},
        {"k_grid", {{"k_min", c.k_grid.k_min}, {"k_max", c.k_grid.k_max}, {"n", c.k_grid.n}}},
        {"painleve",
         {{"s_min", c.painleve.s_min}, {"s0", c.painleve.s0}, {"tol", c.painleve.tol}}},
        {"ode_tol", c.ode_tol},
        {"out_dir", c.out_dir}};
}

inline void from_json(const io::json& j, ExperimentConfig& c) {
    ExperimentConfig d; // defaults
    c.params = HirotaParams(j.value("alpha", d.params.alpha), j.value("beta", d.params.beta));
    if (j.contains("profile")) {
        const auto& p = j.at("profile");
        c.profile.family = p.value("family", d.profile.family);
        c.profile.amplitude = p.value("amplitude", d.profile.amplitude);
        c.profile.width = p.value("width", d.profile.width);
        c.profile.csv_path = p.value("csv", d.profile.csv_path);
        c.profile.decay_cutoff = p.value("decay_cutoff", d.profile.decay_cutoff);
        if (!c.profile.csv_path.empty()) c.profile.family = "csv";
    }
    c.region_bound = j.value("region_bound", d.region_bound);
    c.times = j.value("times", d.times);
    c.s_values = j.value("s_values", d.s_values);
    if (j.contains("solver")) {
        const auto& s = j.at("solver");
        c.solver.dt = s.value("dt", d.solver.dt);
        c.solver.dealias = s.value("dealias", d.solver.dealias);
        c.solver.scheme_order = s.value("scheme_order", d.solver.scheme_order);
        c.solver.boundary_threshold = s.value("boundary_threshold", d.solver.boundary_threshold);
        c.solver.edge_fraction = s.value("edge_fraction", d.solver.edge_fraction);
    }
    if (j.contains("domain")) {
        const auto& g = j.at("domain");
        c.domain = Grid(g.value("x_min", d.domain.x_min), g.value("x_max", d.domain.x_max),
                        g.value("n", d.domain.n), true);
    }
    if (j.contains("k_grid")) {
        const auto& g = j.at("k_grid");
        c.k_grid.k_min = g.value("k_min", d.k_grid.k_min);
        c.k_grid.k_max = g.value("k_max", d.k_grid.k_max);
        c.k_grid.n = g.value("n", d.k_grid.n);
    }
    if (j.contains("painleve")) {
        const auto& p = j.at("painleve");
        c.painleve.s_min = p.value("s_min", d.painleve.s_min);
        c.painleve.s0 = p.value("s0", d.painleve.s0);
        c.painleve.tol = p.value("tol", d.painleve.tol);
    }
    c.ode_tol = j.value("ode_tol", d.ode_tol);
    c.out_dir = j.value("out_dir", d.out_dir);
    c.validate();
}

/// Least-squares power-law fit of error samples against time.
struct DecayFit {
    double exponent = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::vector<std::pair<double, double>> samples; // (t, err) actually fitted
    bool excluded_first = false;
};

/// Ordinary least squares on (log t, log err). Requires at least 3 samples,
/// strictly increasing t, and positive errors.
inline DecayFit fit_decay_exponent(const std::vector<std::pair<double, double>>& samples) {
    if (samples.size() < 3)
        throw std::invalid_argument("fit_decay_exponent: need at least 3 samples");
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!(samples[i].second > 0.0))
            throw std::invalid_argument("fit_decay_exponent: errors must be positive");
        if (i > 0 && !(samples[i - 1].first < samples[i].first))
            throw std::invalid_argument("fit_decay_exponent: t must be strictly increasing");
    }
    const std::size_t n = samples.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (const auto& [t, e] : samples) {
        const double x = std::log(t), y = std::log(e);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
    }
    const double dn = static_cast<double>(n);
    const double vx = sxx - sx * sx / dn;
    const double vy = syy - sy * sy / dn;
    const double cxy = sxy - sx * sy / dn;
    DecayFit fit;
    fit.exponent = cxy / vx;
    fit.intercept = (sy - fit.exponent * sx) / dn;
    const double ss_res = vy - fit.exponent * cxy;
    fit.r_squared = (vy <= 1e-30) ? 1.0 : std::max(0.0, 1.0 - ss_res / vy);
    fit.samples = samples;
    return fit;
}

/// Fit with the reporting policy: if the smallest-t residual deviates more
/// than 3 sigma from the whole-sample fit, refit without it and flag the
/// exclusion.
inline DecayFit fit_decay_with_exclusion(const std::vector<std::pair<double, double>>& samples) {
    DecayFit fit = fit_decay_exponent(samples);
    if (samples.size() < 4) return fit;
    std::vector<double> resid(samples.size());
    double ss = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        resid[i] = std::log(samples[i].second) -
                   (fit.intercept + fit.exponent * std::log(samples[i].first));
        ss += resid[i] * resid[i];
    }
    const double sigma = std::sqrt(ss / static_cast<double>(samples.size() - 2));
    if (std::abs(resid.front()) > 3.0 * sigma) {
        DecayFit refit = fit_decay_exponent(
            std::vector<std::pair<double, double>>(samples.begin() + 1, samples.end()));
        refit.excluded_first = true;
        return refit;
    }
    return fit;
}

/// Periodic cubic interpolation of a snapshot at position x.
inline Complex field_at(const FieldState& st, double x) {
    const Grid& g = st.field.grid;
    const double h = g.spacing();
    double xr = x - g.x_min;
    xr -= std::floor(xr / g.length()) * g.length();
    const auto j0 = static_cast<std::ptrdiff_t>(std::floor(xr / h));
    Complex out(0.0, 0.0);
    const std::size_t n = g.n;
    for (std::ptrdiff_t m = -1; m <= 2; ++m) {
        const std::ptrdiff_t jm = j0 + m;
        const double xm = static_cast<double>(jm) * h;
        double w = 1.0;
        for (std::ptrdiff_t l = -1; l <= 2; ++l) {
            if (l == m) continue;
            const double xl = static_cast<double>(j0 + l) * h;
            w *= (xr - xl) / (xm - xl);
        }
        const std::size_t idx = static_cast<std::size_t>((jm % static_cast<std::ptrdiff_t>(n) +
                                                          static_cast<std::ptrdiff_t>(n)) %
                                                         static_cast<std::ptrdiff_t>(n));
        out += st.field.values[idx] * w;
    }
    return out;
}

struct ComparisonRecord {
    double t, s, x;
    Complex u_num, u_asymp;
    double abs_err;      // |u_num - u_asymp|
    double modulus_err;  // ||u_num| - |u_asymp||
    double phase_err;    // wrapped arg(u_num) - arg(u_asymp)
};

struct ValidationReport {
    double rho = 0.0, gamma = 0.0, kstar = 0.0;
    double y0 = 0.0; // y(0) from the Painleve table
    std::vector<ComparisonRecord> records;
    std::vector<std::pair<double, double>> err_by_time;         // (t, max_s abs err)
    std::vector<std::pair<double, double>> modulus_err_by_time; // (t, max_s modulus err)
    std::vector<double> snapshot_masses;
    std::vector<double> edge_amplitudes;
    double modulus_ratio = 0.0; // |u_num| (3 beta t)^{1/3} / |y(0)| at s=0, largest t
    std::optional<DecayFit> fit;            // absent when errors vanish (rho = 0)
    std::optional<DecayFit> fit_modulus;
    bool degenerate = false;
    io::json manifest;
};

inline io::json fit_to_json(const DecayFit& f) {
    io::json samples = io::json::array();
    for (const auto& [t, e] : f.samples) samples.push_back({{"t", t}, {"err", e}});
    return io::json{{"exponent", f.exponent},
                    {"intercept", f.intercept},
                    {"r_squared", f.r_squared},
                    {"excluded_first", f.excluded_first},
                    {"samples", samples}};
}

/// The full validation experiment: scattering -> Painleve II -> direct PDE
/// evolution -> pointwise comparison in the transition region -> decay fit.
inline ValidationReport run_validation(const ExperimentConfig& cfg, std::ostream* log = nullptr) {
    cfg.validate();
    auto say = [&](const std::string& msg) {
        if (log) (*log) << msg << std::endl;
    };

    const auto profile = build_profile(cfg.profile);
    say("profile: [" + std::to_string(profile.field.grid.x_min) + ", " +
        std::to_string(profile.field.grid.x_max) + "] with " +
        std::to_string(profile.field.grid.n) + " samples");

    ScatteringOptions sopts;
    sopts.rtol = cfg.ode_tol;
    sopts.atol = cfg.ode_tol * 1e-2;
    const auto sdata = scattering_data(profile, cfg.k_grid.build(), cfg.params, sopts);
    ValidationReport rep;
    rep.rho = sdata.kstar_amplitude;
    rep.gamma = sdata.kstar_phase;
    rep.kstar = sdata.kstar;
    say("scattering: rho = " + std::to_string(rep.rho) + ", gamma = " + std::to_string(rep.gamma));

    const auto table = painleve2::solve(rep.rho, cfg.painleve.s_min, cfg.painleve.s0,
                                        cfg.painleve.tol);
    rep.y0 = painleve2::eval(table, 0.0).y;
    say("painleve: y(0) = " + std::to_string(rep.y0));

    std::vector<double> times = cfg.times;
    std::sort(times.begin(), times.end());
    const double t_end = times.back();
    const auto evo = evolve(profile, t_end, cfg.solver, cfg.params, cfg.domain, times);
    rep.snapshot_masses = evo.snapshot_masses;
    rep.edge_amplitudes = evo.edge_amplitudes;
    say("evolution finished, " + std::to_string(times.size()) + " snapshots");

    for (std::size_t it = 0; it < times.size(); ++it) {
        const double t = times[it];
        const auto& snap = evo.snapshots[it];
        double emax = 0.0, memax = 0.0;
        for (double s : cfg.s_values) {
            const double xi =
                cfg.params.xi_star() + std::cbrt(3.0 * cfg.params.beta) * s * std::pow(t, -2.0 / 3.0);
            const auto p = SpacetimePoint::from_xi(xi, t);
            const auto asym = u_asymptotic(p, cfg.params, table, rep.gamma);
            const Complex un = field_at(snap, p.x);
            ComparisonRecord rec;
            rec.t = t;
            rec.s = s;
            rec.x = p.x;
            rec.u_num = un;
            rec.u_asymp = asym.u_asymp;
            rec.abs_err = std::abs(un - asym.u_asymp);
            rec.modulus_err = std::abs(std::abs(un) - asym.modulus);
            rec.phase_err = (std::abs(un) > 0.0 && asym.modulus > 0.0)
                                ? std::arg(un * std::conj(asym.u_asymp))
                                : 0.0;
            emax = std::max(emax, rec.abs_err);
            memax = std::max(memax, rec.modulus_err);
            rep.records.push_back(rec);
            if (it + 1 == times.size() && s == 0.0 && std::abs(rep.y0) > 0.0)
                rep.modulus_ratio =
                    std::abs(un) * std::cbrt(3.0 * cfg.params.beta * t) / std::abs(rep.y0);
        }
        rep.err_by_time.emplace_back(t, emax);
        rep.modulus_err_by_time.emplace_back(t, memax);
        say("t = " + std::to_string(t) + ": max_s |u_num - u_asymp| = " + std::to_string(emax));
    }

    const bool any_zero =
        std::any_of(rep.err_by_time.begin(), rep.err_by_time.end(),
                    [](const auto& te) { return !(te.second > 0.0); });
    if (any_zero || rep.err_by_time.size() < 3) {
        rep.degenerate = true;
    } else {
        rep.fit = fit_decay_with_exclusion(rep.err_by_time);
        bool mod_ok = std::all_of(rep.modulus_err_by_time.begin(), rep.modulus_err_by_time.end(),
                                  [](const auto& te) { return te.second > 0.0; });
        if (mod_ok) rep.fit_modulus = fit_decay_with_exclusion(rep.modulus_err_by_time);
    }

    io::json jcfg;
    to_json(jcfg, cfg);
    rep.manifest = io::json{{"config", jcfg},
                            {"rho", rep.rho},
                            {"gamma", rep.gamma},
                            {"kstar", rep.kstar},
                            {"y0", rep.y0},
                            {"modulus_ratio", rep.modulus_ratio},
                            {"snapshot_masses", rep.snapshot_masses},
                            {"edge_amplitudes", rep.edge_amplitudes},
                            {"degenerate", rep.degenerate}};
    if (rep.fit) rep.manifest["fit"] = fit_to_json(*rep.fit);
    if (rep.fit_modulus) rep.manifest["fit_modulus"] = fit_to_json(*rep.fit_modulus);
    io::json jrec = io::json::array();
    for (const auto& r : rep.records)
        jrec.push_back({{"t", r.t},
                        {"s", r.s},
                        {"x", r.x},
                        {"re_u_num", r.u_num.real()},
                        {"im_u_num", r.u_num.imag()},
                        {"re_u_asymp", r.u_asymp.real()},
                        {"im_u_asymp", r.u_asymp.imag()},
                        {"abs_err", r.abs_err},
                        {"modulus_err", r.modulus_err},
                        {"phase_err", r.phase_err}});
    rep.manifest["records"] = jrec;
    return rep;
}

/// Write the validation outputs (report JSON + per-record CSV) to out_dir.
inline void write_validation_report(const ValidationReport& rep, const ExperimentConfig& cfg) {
    namespace fs = std::filesystem;
    const fs::path dir(cfg.out_dir);
    io::write_json(dir / "validate_report.json", rep.manifest);
    auto f = io::open_out(dir / "validate_records.csv");
    f << "t,s,x,re_u_num,im_u_num,re_u_asymp,im_u_asymp,abs_err,modulus_err,phase_err\n";
    for (const auto& r : rep.records)
        f << r.t << ',' << r.s << ',' << r.x << ',' << r.u_num.real() << ',' << r.u_num.imag()
          << ',' << r.u_asymp.real() << ',' << r.u_asymp.imag() << ',' << r.abs_err << ','
          << r.modulus_err << ',' << r.phase_err << '\n';
}

} // namespace hirota

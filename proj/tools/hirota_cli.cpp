// Command-line front end: scatter, painleve, signature, evolve, validate.
// Exit codes: 0 success, 1 numerical-invariant failure, 2 usage/IO error.

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hirota/hirota.hpp"

namespace fs = std::filesystem;
using namespace hirota;

namespace {

struct GlobalArgs {
    std::string config_path;
    std::string out_dir;
    double tol = 0.0; // 0 = keep config value
};

ExperimentConfig load_config(const GlobalArgs& g) {
    ExperimentConfig cfg;
    if (!g.config_path.empty()) {
        const auto j = io::read_json(g.config_path);
        from_json(j.contains("config") ? j.at("config") : j, cfg); // accept validate manifests too
    }
    if (!g.out_dir.empty()) cfg.out_dir = g.out_dir;
    if (g.tol > 0.0) {
        cfg.ode_tol = g.tol;
        cfg.painleve.tol = g.tol;
    }
    cfg.validate();
    return cfg;
}

int cmd_scatter(const GlobalArgs& g) {
    const auto cfg = load_config(g);
    const auto profile = build_profile(cfg.profile);
    ScatteringOptions opts;
    opts.rtol = cfg.ode_tol;
    opts.atol = cfg.ode_tol * 1e-2;
    const auto data = scattering_data(profile, cfg.k_grid.build(), cfg.params, opts);
    const fs::path dir(cfg.out_dir);
    io::write_scattering(dir / "scattering.csv", dir / "scattering.json", data);
    std::cout << "rho   = " << data.kstar_amplitude << "\n"
              << "gamma = " << data.kstar_phase << "\n"
              << "kstar = " << data.kstar << "\n"
              << "wrote " << (dir / "scattering.csv").string() << "\n";
    return 0;
}

int cmd_painleve(const GlobalArgs& g, double rho, double s_min, double s0) {
    const auto cfg = load_config(g);
    const double tol = cfg.painleve.tol;
    if (s_min == 0.0) s_min = cfg.painleve.s_min;
    if (s0 == 0.0) s0 = cfg.painleve.s0;
    if (rho > 0.99 && rho < 1.0)
        std::cout << "warning: rho = " << rho << " approaches the excluded value 1; "
                  << "the table amplitude grows without bound in that limit\n";

    const auto sol = painleve2::solve_detailed(rho, s_min, s0, tol);
    const auto& tab = sol.table;

    double resid_max = 0.0;
    for (std::size_t i = 1; i + 1 < tab.s.size(); i += 7)
        resid_max = std::max(resid_max, painleve2::residual_at(sol.trajectory, tab.s[i]));

    // s0-robustness self-test: redo the connection from a farther matching point
    const auto tab_far = painleve2::solve(rho, s_min, s0 + 4.0, tol);
    const double y0_here = painleve2::eval(tab, 0.0).y;
    const double y0_far = painleve2::eval(tab_far, 0.0).y;

    const fs::path dir(cfg.out_dir);
    io::write_painleve(dir / "painleve.csv", dir / "painleve.json", tab);
    auto extra = io::read_json(dir / "painleve.json");
    extra["left_tail_amplitude"] = painleve2::left_tail_amplitude(tab);
    extra["s0_robustness_delta"] = std::abs(y0_here - y0_far);
    io::write_json(dir / "painleve.json", extra);

    std::cout << "y(0)        = " << y0_here << "\n"
              << "residual max = " << resid_max << "\n"
              << "s0 robustness: |y(0; s0) - y(0; s0+4)| = " << std::abs(y0_here - y0_far) << "\n"
              << "left-tail amplitude (diagnostic) = " << painleve2::left_tail_amplitude(tab)
              << "\n"
              << "wrote " << (dir / "painleve.csv").string() << "\n";
    return 0;
}

int cmd_signature(const GlobalArgs& g, double xi, double window, std::size_t resolution) {
    const auto cfg = load_config(g);
    if (resolution < 2) throw std::invalid_argument("signature: resolution must be >= 2");
    const auto st = stationary_points(cfg.params, xi);
    const double c = cfg.params.kstar();
    std::vector<std::array<double, 3>> rows;
    rows.reserve(resolution * resolution);
    for (std::size_t iy = 0; iy < resolution; ++iy) {
        const double im = -window + 2.0 * window * static_cast<double>(iy) /
                                          static_cast<double>(resolution - 1);
        for (std::size_t ix = 0; ix < resolution; ++ix) {
            const double re = c - window + 2.0 * window * static_cast<double>(ix) /
                                                 static_cast<double>(resolution - 1);
            rows.push_back({re, im,
                            static_cast<double>(signature_sign(Complex(re, im), cfg.params, xi))});
        }
    }
    const fs::path dir(cfg.out_dir);
    io::write_signature_grid(dir / "signature.csv", rows);
    io::write_json(dir / "signature.json",
                   io::json{{"xi", xi},
                            {"k1", {st.k1.real(), st.k1.imag()}},
                            {"k2", {st.k2.real(), st.k2.imag()}},
                            {"degenerate", st.degenerate}});
    std::cout << "k1 = " << st.k1 << "\nk2 = " << st.k2 << "\nwrote "
              << (dir / "signature.csv").string() << "\n";
    return 0;
}

int cmd_evolve(const GlobalArgs& g, double t_end) {
    auto cfg = load_config(g);
    if (t_end <= 0.0) t_end = cfg.times.back();
    const auto profile = build_profile(cfg.profile);
    std::vector<double> snaps;
    for (double t : cfg.times)
        if (t <= t_end) snaps.push_back(t);
    if (snaps.empty() || snaps.back() < t_end) snaps.push_back(t_end);
    const auto evo = evolve(profile, t_end, cfg.solver, cfg.params, cfg.domain, snaps);
    const fs::path dir(cfg.out_dir);
    io::json jcfg;
    to_json(jcfg, cfg);
    for (std::size_t i = 0; i < evo.snapshots.size(); ++i) {
        const auto tag = "snapshot_t" + std::to_string(snaps[i]);
        io::write_snapshot(dir / (tag + ".csv"), dir / (tag + ".json"), evo.snapshots[i], jcfg);
        std::cout << "t = " << snaps[i] << ": mass = " << evo.snapshot_masses[i]
                  << ", edge amplitude = " << evo.edge_amplitudes[i] << "\n";
    }
    std::cout << "wrote " << evo.snapshots.size() << " snapshots to " << dir.string() << "\n";
    return 0;
}

int cmd_validate(const GlobalArgs& g) {
    const auto cfg = load_config(g);
    auto rep = run_validation(cfg, &std::cout);
    write_validation_report(rep, cfg);
    if (rep.degenerate) {
        std::cout << "decay fit: degenerate (vanishing errors; nothing to fit)\n";
    } else {
        std::cout << "decay fit: exponent = " << rep.fit->exponent
                  << ", r^2 = " << rep.fit->r_squared
                  << (rep.fit->excluded_first ? " (smallest t excluded)" : "") << "\n";
        if (rep.fit_modulus)
            std::cout << "modulus-only fit: exponent = " << rep.fit_modulus->exponent << "\n";
    }
    std::cout << "modulus ratio at s=0, t=" << cfg.times.back() << ": " << rep.modulus_ratio
              << "\nwrote " << (fs::path(cfg.out_dir) / "validate_report.json").string() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Transition-region asymptotics laboratory for the defocusing Hirota equation"};
    app.require_subcommand(1);

    GlobalArgs g;
    app.add_option("--config", g.config_path, "JSON experiment config");
    app.add_option("--out", g.out_dir, "output directory (overrides config)");
    app.add_option("--tol", g.tol, "ODE relative tolerance override");

    auto* scatter = app.add_subcommand("scatter", "compute scattering data a(k), b(k), r(k)");
    auto* painleve = app.add_subcommand("painleve", "tabulate the Painleve-II solution");
    double rho = 0.5, s_min = 0.0, s0 = 0.0;
    painleve->add_option("--rho", rho, "amplitude parameter |r(k*)| in [0,1)")->required();
    painleve->add_option("--s-min", s_min, "left end of the table");
    painleve->add_option("--s0", s0, "asymptotic matching point (>= 8)");
    auto* signature = app.add_subcommand("signature", "emit the Re(i theta) sign grid");
    double xi = 0.0, window = 2.0;
    std::size_t resolution = 201;
    signature->add_option("--xi", xi, "ray x/t")->required();
    signature->add_option("--window", window, "half-width of the complex window around k*");
    signature->add_option("--resolution", resolution, "points per side");
    auto* evolvec = app.add_subcommand("evolve", "run the direct PDE solver, write snapshots");
    double t_end = 0.0;
    evolvec->add_option("--t-end", t_end, "final time (default: largest config time)");
    auto* validate = app.add_subcommand("validate", "full pipeline + decay-exponent fit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (scatter->parsed()) return cmd_scatter(g);
        if (painleve->parsed()) return cmd_painleve(g, rho, s_min, s0);
        if (signature->parsed()) return cmd_signature(g, xi, window, resolution);
        if (evolvec->parsed()) return cmd_evolve(g, t_end);
        if (validate->parsed()) return cmd_validate(g);
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 1;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "out of range: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

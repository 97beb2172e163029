#pragma once

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hirota/asymptotics.hpp"
#include "hirota/errors.hpp"
#include "hirota/grid.hpp"
#include "hirota/painleve2.hpp"
#include "hirota/pde.hpp"
#include "hirota/scattering.hpp"

namespace hirota::io {

using nlohmann::json;

inline std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path);
    if (!f) throw IoError("cannot open for writing: " + path.string());
    f << std::setprecision(17);
    return f;
}

inline std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open for reading: " + path.string());
    return f;
}

inline void write_json(const std::filesystem::path& path, const json& j) {
    auto f = open_out(path);
    f << j.dump(2) << "\n";
}

inline json read_json(const std::filesystem::path& path) {
    auto f = open_in(path);
    try {
        return json::parse(f);
    } catch (const json::exception& e) {
        throw IoError("bad JSON in " + path.string() + ": " + e.what());
    }
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

/// Profile CSV: header `x,re_u,im_u`, strictly increasing uniformly spaced x.
inline InitialProfile read_profile_csv(const std::filesystem::path& path, double decay_cutoff) {
    auto f = open_in(path);
    std::string line;
    if (!std::getline(f, line)) throw IoError("empty profile file: " + path.string());
    if (split_csv_line(line) != std::vector<std::string>{"x", "re_u", "im_u"})
        throw IoError("profile header must be 'x,re_u,im_u': " + path.string());
    std::vector<double> xs;
    std::vector<Complex> us;
    std::size_t lineno = 1;
    while (std::getline(f, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != 3)
            throw IoError(path.string() + ":" + std::to_string(lineno) + ": expected 3 columns");
        try {
            xs.push_back(std::stod(cells[0]));
            us.emplace_back(std::stod(cells[1]), std::stod(cells[2]));
        } catch (const std::exception&) {
            throw IoError(path.string() + ":" + std::to_string(lineno) + ": bad number");
        }
    }
    if (xs.size() < 4) throw IoError("profile needs at least 4 samples: " + path.string());
    const double h = xs[1] - xs[0];
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        const double d = xs[i + 1] - xs[i];
        if (!(d > 0.0)) throw IoError("profile x must be strictly increasing: " + path.string());
        if (std::abs(d - h) > 1e-9 * std::max(1.0, std::abs(h)))
            throw IoError("profile samples must be uniformly spaced: " + path.string());
    }
    Grid g(xs.front(), xs.back(), xs.size(), false);
    return InitialProfile(ComplexField(g, std::move(us)), decay_cutoff);
}

inline void write_profile_csv(const std::filesystem::path& path, const InitialProfile& p) {
    auto f = open_out(path);
    f << "x,re_u,im_u\n";
    for (std::size_t i = 0; i < p.field.grid.n; ++i)
        f << p.field.grid.point(i) << ',' << p.field.values[i].real() << ','
          << p.field.values[i].imag() << '\n';
}

inline void write_scattering(const std::filesystem::path& csv_path,
                             const std::filesystem::path& json_path, const ScatteringData& d) {
    auto f = open_out(csv_path);
    f << "k,re_a,im_a,re_b,im_b,re_r,im_r\n";
    for (std::size_t i = 0; i < d.k_grid.size(); ++i)
        f << d.k_grid[i] << ',' << d.a[i].real() << ',' << d.a[i].imag() << ',' << d.b[i].real()
          << ',' << d.b[i].imag() << ',' << d.r[i].real() << ',' << d.r[i].imag() << '\n';
    write_json(json_path,
               json{{"rho", d.kstar_amplitude}, {"gamma", d.kstar_phase}, {"kstar", d.kstar}});
}

inline void write_painleve(const std::filesystem::path& csv_path,
                           const std::filesystem::path& json_path, const Painleve2Table& t) {
    auto f = open_out(csv_path);
    f << "s,y,y_prime,H\n";
    for (std::size_t i = 0; i < t.s.size(); ++i)
        f << t.s[i] << ',' << t.y[i] << ',' << t.y_prime[i] << ',' << t.H[i] << '\n';
    write_json(json_path,
               json{{"rho", t.rho}, {"s0", t.s0}, {"s_min", t.s_min}, {"tol", t.tol}});
}

inline void write_snapshot(const std::filesystem::path& csv_path,
                           const std::filesystem::path& json_path, const FieldState& st,
                           const json& config) {
    auto f = open_out(csv_path);
    f << "x,re_u,im_u\n";
    for (std::size_t i = 0; i < st.field.grid.n; ++i)
        f << st.field.grid.point(i) << ',' << st.field.values[i].real() << ','
          << st.field.values[i].imag() << '\n';
    write_json(json_path, json{{"t", st.time}, {"mass", mass(st)}, {"config", config}});
}

inline void write_samples(const std::filesystem::path& path,
                          const std::vector<AsymptoticSample>& samples) {
    auto f = open_out(path);
    f << "x,t,s,re_u,im_u,modulus,phase\n";
    for (const auto& s : samples)
        f << s.point.x << ',' << s.point.t << ',' << s.s << ',' << s.u_asymp.real() << ','
          << s.u_asymp.imag() << ',' << s.modulus << ',' << s.phase << '\n';
}

inline void write_signature_grid(const std::filesystem::path& path,
                                 const std::vector<std::array<double, 3>>& rows) {
    auto f = open_out(path);
    f << "re_k,im_k,sign\n";
    for (const auto& r : rows) f << r[0] << ',' << r[1] << ',' << static_cast<int>(r[2]) << '\n';
}

} // namespace hirota::io

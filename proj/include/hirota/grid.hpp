#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace hirota {

using Complex = std::complex<double>;

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// Uniform 1-D grid. Periodic grids cover [x_min, x_max) with spacing
/// (x_max-x_min)/n and require a power-of-two point count; closed grids
/// cover [x_min, x_max] with spacing (x_max-x_min)/(n-1).
struct Grid {
    double x_min = 0.0;
    double x_max = 1.0;
    std::size_t n = 2;
    bool periodic = false;

    Grid() = default;
    Grid(double xmin, double xmax, std::size_t npts, bool per = false)
        : x_min(xmin), x_max(xmax), n(npts), periodic(per) {
        if (!(x_min < x_max)) throw std::invalid_argument("Grid: x_min must be < x_max");
        if (n < 2) throw std::invalid_argument("Grid: need at least 2 points");
        if (periodic && !is_power_of_two(n))
            throw std::invalid_argument("Grid: periodic grids require power-of-two n");
    }

    double spacing() const {
        return periodic ? (x_max - x_min) / static_cast<double>(n)
                        : (x_max - x_min) / static_cast<double>(n - 1);
    }
    double point(std::size_t i) const { return x_min + spacing() * static_cast<double>(i); }
    double length() const { return x_max - x_min; }
};

/// Sampled complex field on a grid.
struct ComplexField {
    Grid grid;
    std::vector<Complex> values;

    ComplexField() = default;
    ComplexField(Grid g, std::vector<Complex> v) : grid(g), values(std::move(v)) {
        if (values.size() != grid.n)
            throw std::invalid_argument("ComplexField: values.size() != grid.n");
    }

    /// Sample f(x) at every grid point.
    template <class F>
    static ComplexField sample(const Grid& g, F&& f) {
        std::vector<Complex> v(g.n);
        for (std::size_t i = 0; i < g.n; ++i) v[i] = f(g.point(i));
        return ComplexField(g, std::move(v));
    }
};

} // namespace hirota

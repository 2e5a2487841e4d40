#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>

#include "meinhardt/error.hpp"

namespace meinhardt {

/// Uniform grid on the circle R/(L Z). Point i sits at x_i = i * dx.
class TorusGrid {
public:
    TorusGrid(double length, std::size_t points) : length_(length), points_(points) {
        if (!(length > 0.0) || !std::isfinite(length)) {
            throw ConfigError("torus length must be positive and finite");
        }
        if (points == 0) {
            throw ConfigError("torus grid needs at least one point");
        }
        dx_ = length / static_cast<double>(points);
    }

    double length() const noexcept { return length_; }
    std::size_t size() const noexcept { return points_; }
    double dx() const noexcept { return dx_; }
    double coordinate(std::size_t i) const noexcept { return static_cast<double>(i) * dx_; }

    /// Reduces any real coordinate to [0, L).
    double canonical(double x) const noexcept {
        double r = std::fmod(x, length_);
        if (r < 0.0) r += length_;
        if (r >= length_) r = 0.0;
        return r;
    }

    friend bool operator==(const TorusGrid&, const TorusGrid&) = default;

private:
    double length_;
    std::size_t points_;
    double dx_;
};

/// Non-negative modulus: wrap_index(-1, m=10) == 9.
inline std::size_t wrap_index(long long i, const TorusGrid& grid) noexcept {
    const auto m = static_cast<long long>(grid.size());
    long long r = i % m;
    if (r < 0) r += m;
    return static_cast<std::size_t>(r);
}

/// Signed displacement x - y reduced to [-L/2, L/2).
inline double periodic_offset(double x, double y, const TorusGrid& grid) noexcept {
    const double L = grid.length();
    double d = std::fmod(x - y, L);
    if (d < -0.5 * L) d += L;
    if (d >= 0.5 * L) d -= L;
    return d;
}

inline double periodic_distance(double x, double y, const TorusGrid& grid) noexcept {
    const double d = std::fabs(x - y);
    const double r = std::fmod(d, grid.length());
    return std::min(r, grid.length() - r);
}

/// Periodic left-Riemann rule, which coincides with the trapezoid rule on the torus.
inline double integrate(std::span<const double> values, const TorusGrid& grid) {
    if (values.size() != grid.size()) {
        throw ConfigError("integrate: expected " + std::to_string(grid.size()) + " values, got " +
                          std::to_string(values.size()));
    }
    double sum = 0.0;
    for (double v : values) sum += v;
    return grid.dx() * sum;
}

} // namespace meinhardt

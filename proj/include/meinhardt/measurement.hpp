#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "meinhardt/error.hpp"
#include "meinhardt/grid.hpp"
#include "meinhardt/kernel.hpp"
#include "meinhardt/solver.hpp"

namespace meinhardt {

/// How the Laplacian measurement <A, Delta K_delta> is discretised on the field grid.
///
/// Analytic samples delta^{-5/2} K''((x - c)/delta). GridConsistent applies the periodic second
/// difference to the sampled kernel, i.e. <Delta_h A, K_delta>; for fields produced by the
/// finite-difference solver this matches the discrete dynamics exactly.
enum class LaplacianMode { Analytic, GridConsistent };

inline std::string to_string(LaplacianMode m) {
    return m == LaplacianMode::Analytic ? "analytic" : "grid";
}

inline LaplacianMode parse_laplacian_mode(const std::string& s) {
    if (s == "analytic") return LaplacianMode::Analytic;
    if (s == "grid") return LaplacianMode::GridConsistent;
    throw ConfigError("unknown laplacian mode '" + s + "' (expected analytic or grid)");
}

/// Row-major dense matrix, rows = time instants, cols = channels.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

    double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    bool empty() const noexcept { return data.empty(); }

    std::vector<double> column(std::size_t c) const {
        std::vector<double> out(rows);
        for (std::size_t r = 0; r < rows; ++r) out[r] = (*this)(r, c);
        return out;
    }
    void append_row(std::span<const double> row) {
        if (cols == 0 && rows == 0) cols = row.size();
        if (row.size() != cols) throw DataError("matrix row has wrong length");
        data.insert(data.end(), row.begin(), row.end());
        ++rows;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;
};

struct MeasurementLayout {
    std::vector<double> centers;
    double delta = 0.1;

    std::size_t M() const noexcept { return centers.size(); }

    /// x_k = L k / M for k = 0..M-1.
    static MeasurementLayout regular(std::size_t M, double L, double delta) {
        if (M == 0) throw ConfigError("layout needs at least one channel");
        if (!(delta > 0.0)) throw ConfigError("resolution delta must be positive");
        MeasurementLayout layout;
        layout.delta = delta;
        layout.centers.resize(M);
        for (std::size_t k = 0; k < M; ++k) layout.centers[k] = L * static_cast<double>(k) / static_cast<double>(M);
        return layout;
    }

    /// Hard errors for invalid layouts; soft problems come back as warnings.
    std::vector<std::string> validate(const TorusGrid& grid) const {
        if (centers.empty()) throw ConfigError("layout needs at least one channel");
        if (!(delta > 0.0)) throw ConfigError("resolution delta must be positive");
        if (2.0 * delta >= grid.length()) throw ConfigError("delta >= L/2: kernel would wrap onto itself");
        for (double c : centers) {
            if (!(c >= 0.0 && c < grid.length())) throw ConfigError("measurement center outside [0, L)");
        }
        std::vector<std::string> warnings;
        if (!supports_disjoint(grid)) warnings.emplace_back("kernel supports overlap (2 delta > center spacing)");
        if (delta / grid.dx() < 20.0) {
            warnings.emplace_back("delta/dx = " + std::to_string(delta / grid.dx()) +
                                  " < 20: kernel quadrature is coarse");
        }
        return warnings;
    }

    bool supports_disjoint(const TorusGrid& grid) const {
        for (std::size_t i = 0; i < centers.size(); ++i) {
            for (std::size_t j = i + 1; j < centers.size(); ++j) {
                if (periodic_distance(centers[i], centers[j], grid) < 2.0 * delta * (1.0 - 1e-12)) return false;
            }
        }
        return true;
    }

    /// True when centers are L k / M up to round-off.
    bool is_regular(double L) const {
        const auto M = static_cast<double>(centers.size());
        for (std::size_t k = 0; k < centers.size(); ++k) {
            if (std::fabs(centers[k] - L * static_cast<double>(k) / M) > 1e-9 * L) return false;
        }
        return true;
    }
};

/// Local and Laplacian measurements of one channel as sparse weights on the field grid.
struct KernelStencil {
    std::vector<std::size_t> index;
    std::vector<double> weight;     // dx * K_{delta,c}(x_i)
    std::vector<double> lap_weight; // dx * (Delta K_{delta,c})(x_i)

    double apply(std::span<const double> field) const {
        double s = 0.0;
        for (std::size_t j = 0; j < index.size(); ++j) s += weight[j] * field[index[j]];
        return s;
    }
    double apply_laplacian(std::span<const double> field) const {
        double s = 0.0;
        for (std::size_t j = 0; j < index.size(); ++j) s += lap_weight[j] * field[index[j]];
        return s;
    }
};

namespace detail {
inline void check_delta(double delta, const TorusGrid& grid) {
    if (!(delta > 0.0)) throw ConfigError("resolution delta must be positive");
    if (2.0 * delta >= grid.length()) throw ConfigError("delta >= L/2: kernel would wrap onto itself");
}
} // namespace detail

inline KernelStencil make_stencil(const Kernel& kernel, double delta, double center, const TorusGrid& grid,
                                  LaplacianMode mode = LaplacianMode::Analytic) {
    detail::check_delta(delta, grid);
    const double dx = grid.dx();
    const double c = grid.canonical(center);
    const double amp = 1.0 / std::sqrt(delta);
    const double lap_amp = amp / (delta * delta);
    // Grid points with |x - c| < delta, plus one neighbour on each side for the grid-consistent
    // Laplacian.
    const auto first = static_cast<long long>(std::floor((c - delta) / dx)) - 1;
    const auto last = static_cast<long long>(std::ceil((c + delta) / dx)) + 1;
    if (last - first + 1 > static_cast<long long>(grid.size())) {
        throw ConfigError("kernel support plus stencil exceeds the torus");
    }
    KernelStencil st;
    std::vector<double> samples;
    std::vector<std::size_t> idx;
    for (long long i = first; i <= last; ++i) {
        const std::size_t w = wrap_index(i, grid);
        const double u = periodic_offset(grid.coordinate(w), c, grid) / delta;
        idx.push_back(w);
        samples.push_back(amp * kernel(u));
    }
    const std::size_t n = idx.size();
    for (std::size_t j = 0; j < n; ++j) {
        double lap = 0.0;
        if (mode == LaplacianMode::GridConsistent) {
            const double left = j > 0 ? samples[j - 1] : 0.0;
            const double right = j + 1 < n ? samples[j + 1] : 0.0;
            lap = (left - 2.0 * samples[j] + right) / (dx * dx);
        } else {
            const double u = periodic_offset(grid.coordinate(idx[j]), c, grid) / delta;
            lap = lap_amp * kernel.second_derivative(u);
        }
        if (samples[j] == 0.0 && lap == 0.0) continue;
        st.index.push_back(idx[j]);
        st.weight.push_back(dx * samples[j]);
        st.lap_weight.push_back(dx * lap);
    }
    return st;
}

/// delta^{-1/2} K((x_i - center)/delta) on every grid point, periodic in the argument.
inline std::vector<double> scaled_kernel_samples(const Kernel& kernel, double delta, double center,
                                                 const TorusGrid& grid) {
    detail::check_delta(delta, grid);
    std::vector<double> out(grid.size());
    const double amp = 1.0 / std::sqrt(delta);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out[i] = amp * kernel(periodic_offset(grid.coordinate(i), center, grid) / delta);
    }
    return out;
}

inline double local_measure(std::span<const double> field, const Kernel& kernel, double delta, double center,
                            const TorusGrid& grid) {
    if (field.size() != grid.size()) throw ConfigError("local_measure: field does not match grid");
    return make_stencil(kernel, delta, center, grid).apply(field);
}

inline double laplace_measure(std::span<const double> field, const Kernel& kernel, double delta, double center,
                              const TorusGrid& grid, LaplacianMode mode = LaplacianMode::Analytic) {
    if (field.size() != grid.size()) throw ConfigError("laplace_measure: field does not match grid");
    return make_stencil(kernel, delta, center, grid, mode).apply_laplacian(field);
}

/// Time series of local and Laplacian measurements for M channels.
struct MeasurementSet {
    MeasurementLayout layout;
    std::vector<double> times;
    Matrix A_loc;
    Matrix A_lap; // may be empty for external data
    double L = 20.0;
    std::string kernel_name = "bump";
    double kernel_norm = 0.0;
    double kernel_norm_derivative = 0.0;
    LaplacianMode laplacian_mode = LaplacianMode::Analytic;

    std::size_t M() const noexcept { return layout.M(); }
    double T() const noexcept { return times.empty() ? 0.0 : times.back() - times.front(); }
    bool has_laplacian() const noexcept { return !A_lap.empty(); }

    void check_shapes() const {
        if (A_loc.rows != times.size() || A_loc.cols != layout.M()) {
            throw DataError("local measurement matrix shape does not match times x channels");
        }
        if (has_laplacian() && (A_lap.rows != times.size() || A_lap.cols != layout.M())) {
            throw DataError("Laplacian measurement matrix shape does not match times x channels");
        }
    }
};

/// Streams field snapshots into a MeasurementSet. Stencils are built once.
class Measurer {
public:
    Measurer(const MeasurementLayout& layout, const Kernel& kernel, const TorusGrid& grid,
             LaplacianMode mode = LaplacianMode::Analytic)
        : grid_(grid) {
        layout.validate(grid);
        set_.layout = layout;
        set_.L = grid.length();
        set_.kernel_name = kernel.name();
        set_.kernel_norm = kernel.norm();
        set_.kernel_norm_derivative = kernel.norm_derivative();
        set_.laplacian_mode = mode;
        set_.A_loc = Matrix(0, layout.M());
        set_.A_lap = Matrix(0, layout.M());
        for (double c : layout.centers) stencils_.push_back(make_stencil(kernel, layout.delta, c, grid, mode));
        row_loc_.resize(layout.M());
        row_lap_.resize(layout.M());
    }

    void observe(double t, std::span<const double> activator) {
        for (std::size_t k = 0; k < stencils_.size(); ++k) {
            row_loc_[k] = stencils_[k].apply(activator);
            row_lap_[k] = stencils_[k].apply_laplacian(activator);
        }
        set_.times.push_back(t);
        set_.A_loc.append_row(row_loc_);
        set_.A_lap.append_row(row_lap_);
    }

    const MeasurementSet& result() const noexcept { return set_; }
    MeasurementSet take() { return std::move(set_); }

private:
    TorusGrid grid_;
    MeasurementSet set_;
    std::vector<KernelStencil> stencils_;
    std::vector<double> row_loc_, row_lap_;
};

/// Measures every time_stride-th recorded frame: t_j = T j / N with N = (frames - 1) / time_stride.
inline MeasurementSet measure_trajectory(const Trajectory& traj, const MeasurementLayout& layout,
                                         const Kernel& kernel, std::size_t time_stride = 1,
                                         LaplacianMode mode = LaplacianMode::Analytic) {
    if (time_stride == 0) throw ConfigError("time_stride must be positive");
    if (traj.states.empty()) throw DataError("trajectory has no recorded states");
    const std::size_t intervals = traj.states.size() - 1;
    if (time_stride > intervals) {
        throw ConfigError("time_stride " + std::to_string(time_stride) + " exceeds the " +
                          std::to_string(intervals) + " recorded intervals");
    }
    Measurer measurer(layout, kernel, traj.grid, mode);
    for (std::size_t j = 0; j <= intervals; j += time_stride) {
        measurer.observe(traj.times[j], traj.states[j].activator);
    }
    return measurer.take();
}

} // namespace meinhardt

#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "meinhardt/error.hpp"
#include "meinhardt/grid.hpp"
#include "meinhardt/model.hpp"
#include "meinhardt/rng.hpp"

namespace meinhardt {

enum class Scheme { ExplicitEulerMaruyama, SemiImplicitDiffusion };

inline std::string to_string(Scheme s) {
    return s == Scheme::ExplicitEulerMaruyama ? "explicit" : "semi-implicit";
}

inline Scheme parse_scheme(const std::string& s) {
    if (s == "explicit") return Scheme::ExplicitEulerMaruyama;
    if (s == "semi-implicit" || s == "semiimplicit") return Scheme::SemiImplicitDiffusion;
    throw ConfigError("unknown scheme '" + s + "' (expected explicit or semi-implicit)");
}

struct SolverConfig {
    double T = 1.0;
    std::size_t n_steps = 100;
    Scheme scheme = Scheme::SemiImplicitDiffusion;
    std::uint64_t seed = 0;
    std::size_t record_stride = 1;

    double dt() const noexcept { return T / static_cast<double>(n_steps); }

    /// Largest stable explicit step dx^2 / (2 max(D_A, D_I)).
    static double cfl_limit(const TorusGrid& grid, const ModelParams& p) noexcept {
        return grid.dx() * grid.dx() / (2.0 * std::max(p.D_A, p.D_I));
    }

    void validate(const TorusGrid& grid, const ModelParams& p) const {
        if (!(T > 0.0) || !std::isfinite(T)) throw ConfigError("time horizon T must be positive");
        if (n_steps == 0) throw ConfigError("n_steps must be positive");
        if (record_stride == 0) throw ConfigError("record_stride must be positive");
        if (grid.size() < 3) throw ConfigError("solver needs at least 3 grid points");
        if (scheme == Scheme::ExplicitEulerMaruyama) {
            // The activator-only linear mode never steps the inhibitor.
            const double d = p.linear_activator ? p.D_A : std::max(p.D_A, p.D_I);
            const double lim = grid.dx() * grid.dx() / (2.0 * d);
            if (dt() > lim * (1.0 + 1e-12)) {
                throw ConfigError("CFL violation: dt = " + std::to_string(dt()) + " exceeds dx^2/(2D) = " +
                                  std::to_string(lim));
            }
        }
    }
};

/// Recorded simulation output.
struct Trajectory {
    TorusGrid grid{1.0, 1};
    std::vector<double> times;
    std::vector<FieldPair> states;
    bool discarded = false;
    std::optional<std::size_t> first_negative_step;
    ModelParams params;
    SolverConfig config;
};

/// Cell-averaged space-time white noise over one step: i.i.d. N(0, dt/dx).
inline void white_noise_increment(const TorusGrid& grid, double dt, Rng& rng, std::span<double> out) {
    const double scale = std::sqrt(dt / grid.dx());
    for (double& v : out) v = scale * rng.normal();
}

inline std::vector<double> white_noise_increment(const TorusGrid& grid, double dt, Rng& rng) {
    if (!(dt > 0.0)) throw ConfigError("white noise increment needs dt > 0");
    std::vector<double> out(grid.size());
    white_noise_increment(grid, dt, rng, out);
    return out;
}

inline void laplacian_into(std::span<const double> v, const TorusGrid& grid, std::span<double> out) {
    const std::size_t m = v.size();
    const double inv = 1.0 / (grid.dx() * grid.dx());
    if (m == 1) {
        out[0] = 0.0;
        return;
    }
    out[0] = (v[m - 1] - 2.0 * v[0] + v[1]) * inv;
    for (std::size_t i = 1; i + 1 < m; ++i) out[i] = (v[i - 1] - 2.0 * v[i] + v[i + 1]) * inv;
    out[m - 1] = (v[m - 2] - 2.0 * v[m - 1] + v[0]) * inv;
}

/// Periodic second central difference.
inline std::vector<double> laplacian(std::span<const double> values, const TorusGrid& grid) {
    if (values.size() != grid.size()) throw ConfigError("laplacian: length does not match grid");
    std::vector<double> out(values.size());
    laplacian_into(values, grid, out);
    return out;
}

/// Solves (1 + 2c) x_i - c x_{i-1} - c x_{i+1} = r_i with periodic wrap, i.e. (Id - dt D Delta_h) x = r
/// for c = dt D / dx^2. Sherman-Morrison reduction to a plain tridiagonal system; the factorisation
/// depends only on c and is computed once.
class CyclicTridiagonal {
public:
    CyclicTridiagonal(std::size_t m, double c) : m_(m), c_(c) {
        if (m < 3) throw ConfigError("cyclic tridiagonal solve needs m >= 3");
        const double diag = 1.0 + 2.0 * c;
        const double off = -c;
        gamma_ = -diag;
        // Modified diagonal: b0 - gamma, b_{m-1} - off*off/gamma.
        std::vector<double> b(m, diag);
        b[0] = diag - gamma_;
        b[m - 1] = diag - off * off / gamma_;
        cprime_.resize(m);
        denom_.resize(m);
        double prev_c = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double d = b[i] - (i == 0 ? 0.0 : off * prev_c);
            denom_[i] = d;
            prev_c = (i + 1 < m) ? off / d : 0.0;
            cprime_[i] = prev_c;
        }
        std::vector<double> u(m, 0.0);
        u[0] = gamma_;
        u[m - 1] = off;
        z_.resize(m);
        thomas(u, z_);
        zfactor_ = 1.0 + z_[0] + off * z_[m - 1] / gamma_;
    }

    /// In place: rhs becomes the solution.
    void solve(std::span<double> rhs) const {
        thomas(rhs, rhs);
        const double off = -c_;
        const double f = (rhs[0] + off * rhs[m_ - 1] / gamma_) / zfactor_;
        for (std::size_t i = 0; i < m_; ++i) rhs[i] -= f * z_[i];
    }

private:
    void thomas(std::span<const double> r, std::span<double> x) const {
        const double off = -c_;
        // Forward sweep (x may alias r).
        x[0] = r[0] / denom_[0];
        for (std::size_t i = 1; i < m_; ++i) x[i] = (r[i] - off * x[i - 1]) / denom_[i];
        for (std::size_t i = m_ - 1; i-- > 0;) x[i] -= cprime_[i] * x[i + 1];
    }

    std::size_t m_;
    double c_;
    double gamma_ = 0.0;
    double zfactor_ = 1.0;
    std::vector<double> cprime_, denom_, z_;
};

/// Advances a FieldPair by one time step. Holds the scheme's precomputed pieces and scratch space,
/// so one Stepper serves one simulation at a time.
class Stepper {
public:
    Stepper(const ModelParams& params, const SolverConfig& config, const TorusGrid& grid)
        : params_(params), config_(config), grid_(grid), dt_(config.dt()) {
        params_.validate();
        config_.validate(grid_, params_);
        const std::size_t m = grid.size();
        zeta_.resize(m);
        for (std::size_t i = 0; i < m; ++i) zeta_[i] = signal_zeta(grid.coordinate(i), params_, grid.length());
        noise_.resize(m);
        noise_I_.resize(m);
        lap_.resize(m);
        rhs_.resize(m);
        inh_.resize(m);
        if (config_.scheme == Scheme::SemiImplicitDiffusion) {
            const double inv = 1.0 / (grid.dx() * grid.dx());
            solve_A_.emplace(m, dt_ * params_.D_A * inv);
            solve_I_.emplace(m, dt_ * params_.D_I * inv);
        }
    }

    double dt() const noexcept { return dt_; }

    /// Noise increments (before the sigma_A factor) used for the activator in the latest step.
    std::span<const double> last_activator_noise() const noexcept { return noise_; }

    void step(FieldPair& s, Rng& rng) {
        const std::size_t m = grid_.size();
        auto& A = s.activator;
        auto& I = s.inhibitor;
        const bool explicit_scheme = config_.scheme == Scheme::ExplicitEulerMaruyama;
        const bool linear = params_.linear_activator;

        // Reaction terms use the state at the start of the step.
        if (!linear) {
            for (std::size_t i = 0; i < m; ++i) {
                rhs_[i] = f_A_with_signal(A[i], I[i], zeta_[i], params_);
                inh_[i] = params_.b_I * A[i] - params_.r_I * I[i];
            }
        } else {
            std::fill(rhs_.begin(), rhs_.end(), 0.0);
        }

        // Activator.
        if (params_.sigma_A > 0.0) {
            white_noise_increment(grid_, dt_, rng, noise_);
        } else {
            std::fill(noise_.begin(), noise_.end(), 0.0);
        }
        if (explicit_scheme) {
            laplacian_into(A, grid_, lap_);
            for (std::size_t i = 0; i < m; ++i) {
                A[i] += dt_ * (params_.D_A * lap_[i] + rhs_[i]) + params_.sigma_A * noise_[i];
            }
        } else {
            for (std::size_t i = 0; i < m; ++i) A[i] += dt_ * rhs_[i] + params_.sigma_A * noise_[i];
            solve_A_->solve(A);
        }

        if (linear) {
            s.time += dt_;
            return;
        }

        // Inhibitor, with an independent noise array.
        if (params_.sigma_I > 0.0) {
            white_noise_increment(grid_, dt_, rng, noise_I_);
        } else {
            std::fill(noise_I_.begin(), noise_I_.end(), 0.0);
        }
        if (explicit_scheme) {
            laplacian_into(I, grid_, lap_);
            for (std::size_t i = 0; i < m; ++i) {
                I[i] += dt_ * (params_.D_I * lap_[i] + inh_[i]) + params_.sigma_I * noise_I_[i];
            }
        } else {
            for (std::size_t i = 0; i < m; ++i) I[i] += dt_ * inh_[i] + params_.sigma_I * noise_I_[i];
            solve_I_->solve(I);
        }
        s.time += dt_;
    }

private:
    ModelParams params_;
    SolverConfig config_;
    TorusGrid grid_;
    double dt_;
    std::vector<double> zeta_, noise_, noise_I_, lap_, rhs_;
    std::vector<double> inh_;
    std::optional<CyclicTridiagonal> solve_A_, solve_I_;
};

/// One step of the scheme. Convenience wrapper; loops should hold a Stepper instead.
inline FieldPair step(const FieldPair& state, const ModelParams& params, const SolverConfig& config,
                      const TorusGrid& grid, Rng& rng) {
    state.check_against(grid);
    Stepper stepper(params, config, grid);
    FieldPair next = state;
    stepper.step(next, rng);
    return next;
}

/// Outcome of a streamed simulation.
struct RunSummary {
    bool discarded = false;
    std::optional<std::size_t> first_negative_step;
    std::size_t steps_taken = 0;
    bool stopped_early = false;
};

/// Runs the scheme and hands every record_stride-th state (including t = 0) to `observer`.
/// The observer returns false to stop the run early. Negativity is checked after every step.
/// Throws NumericError naming the step if a non-finite value appears.
template <class Observer>
RunSummary simulate_streaming(const ModelParams& params, FieldPair state, const SolverConfig& config,
                              const TorusGrid& grid, Observer&& observer) {
    state.check_against(grid);
    Stepper stepper(params, config, grid);
    Rng rng(config.seed);
    RunSummary summary;
    state.time = 0.0;
    const bool track_inhibitor = !params.linear_activator;
    auto scan = [&](std::size_t step_index) {
        bool negative = false;
        bool finite = true;
        for (double v : state.activator) {
            negative |= v < 0.0;
            finite &= std::isfinite(v);
        }
        if (track_inhibitor) {
            for (double v : state.inhibitor) {
                negative |= v < 0.0;
                finite &= std::isfinite(v);
            }
        }
        if (!finite) {
            throw NumericError("blow-up: non-finite state at step " + std::to_string(step_index) +
                               " (t = " + std::to_string(state.time) + ")");
        }
        if (negative && !summary.discarded) {
            summary.discarded = true;
            summary.first_negative_step = step_index;
        }
    };
    scan(0);
    if (!observer(std::size_t{0}, static_cast<const FieldPair&>(state))) {
        summary.stopped_early = true;
        return summary;
    }
    const double dt = config.dt();
    for (std::size_t n = 1; n <= config.n_steps; ++n) {
        stepper.step(state, rng);
        state.time = static_cast<double>(n) * dt;
        scan(n);
        summary.steps_taken = n;
        if (n % config.record_stride == 0 || n == config.n_steps) {
            if (!observer(n, static_cast<const FieldPair&>(state))) {
                summary.stopped_early = n != config.n_steps;
                return summary;
            }
        }
    }
    return summary;
}

/// Full simulation with recorded states every record_stride steps; the final state at T is
/// always recorded.
inline Trajectory simulate(const ModelParams& params, const FieldPair& init, const SolverConfig& config,
                           const TorusGrid& grid) {
    Trajectory traj;
    traj.grid = grid;
    traj.params = params;
    traj.config = config;
    const auto summary = simulate_streaming(params, init, config, grid, [&](std::size_t, const FieldPair& s) {
        traj.times.push_back(s.time);
        traj.states.push_back(s);
        return true;
    });
    traj.discarded = summary.discarded;
    traj.first_negative_step = summary.first_negative_step;
    return traj;
}

} // namespace meinhardt

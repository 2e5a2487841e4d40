#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "meinhardt/error.hpp"
#include "meinhardt/estimator.hpp"
#include "meinhardt/grid.hpp"
#include "meinhardt/kernel.hpp"
#include "meinhardt/measurement.hpp"
#include "meinhardt/model.hpp"
#include "meinhardt/rng.hpp"
#include "meinhardt/solver.hpp"

namespace meinhardt {

// ---- parallel replicate dispatch -------------------------------------------------------

/// Runs task(i) for i in [0, count) on `workers` threads and returns results in index order.
/// Output is independent of the worker count as long as task(i) depends only on i.
template <class Result, class Task>
std::vector<Result> parallel_map(std::size_t count, unsigned workers, Task&& task) {
    std::vector<std::optional<Result>> slots(count);
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                slots[i].emplace(task(i));
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(count);
                return;
            }
        }
    };
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
    std::vector<Result> out;
    out.reserve(count);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

// ---- repolarisation ---------------------------------------------------------------------

struct WindowMeans {
    double mu_F = 0.0;
    double mu_R = 0.0;
};

namespace detail {
// int_a^b of the periodic piecewise-cubic interpolant of v (4-point Lagrange on every cell), for
// 0 <= a < b <= L. Fourth order for smooth fields, so window means do not carry the O(dx^2)
// error of a plain Riemann sum.
inline double window_integral(std::span<const double> v, const TorusGrid& grid, double a, double b) {
    const std::size_t m = v.size();
    const double h = grid.dx();
    auto at = [&](long long i) { return v[wrap_index(i, grid)]; };
    // Lagrange basis on nodes s = -1, 0, 1, 2 (s = (x - x_j) / h).
    auto cubic = [&](long long j, double s) {
        return -s * (s - 1) * (s - 2) / 6.0 * at(j - 1) + (s + 1) * (s - 1) * (s - 2) / 2.0 * at(j) -
               (s + 1) * s * (s - 2) / 2.0 * at(j + 1) + (s + 1) * s * (s - 1) / 6.0 * at(j + 2);
    };
    static constexpr double gx[3] = {-0.7745966692414834, 0.0, 0.7745966692414834};
    static constexpr double gw[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
    const auto first = static_cast<long long>(std::floor(a / h));
    const auto last = static_cast<long long>(std::ceil(b / h));
    double total = 0.0;
    for (long long j = first; j < last && j < first + static_cast<long long>(m) + 1; ++j) {
        const double x0 = static_cast<double>(j) * h;
        const double lo = std::max(a, x0);
        const double hi = std::min(b, x0 + h);
        if (!(hi > lo)) continue;
        if (lo == x0 && hi == x0 + h) {
            total += h / 24.0 * (-at(j - 1) + 13.0 * at(j) + 13.0 * at(j + 1) - at(j + 2));
            continue;
        }
        // Partial cell: 3-point Gauss is exact for the cubic.
        const double c = 0.5 * (lo + hi), r = 0.5 * (hi - lo);
        for (int q = 0; q < 3; ++q) total += r * gw[q] * cubic(j, (c + r * gx[q] - x0) / h);
    }
    return total;
}
} // namespace detail

/// (2/L) int A over the front window [L/4, 3L/4] and over the rear window (its complement).
inline WindowMeans relative_concentrations(std::span<const double> activator, const TorusGrid& grid) {
    if (activator.size() != grid.size()) throw ConfigError("relative_concentrations: field does not match grid");
    const double L = grid.length();
    const double front = detail::window_integral(activator, grid, 0.25 * L, 0.75 * L);
    // The periodic trapezoid rule is spectrally accurate for the full period.
    const double whole = integrate(activator, grid);
    return {2.0 / L * front, 2.0 / L * (whole - front)};
}

inline WindowMeans relative_concentrations(const FieldPair& state, const TorusGrid& grid) {
    return relative_concentrations(state.activator, grid);
}

enum class RepolOutcome { Repolarised, Never, Discarded };

struct RepolResult {
    RepolOutcome outcome = RepolOutcome::Never;
    std::optional<double> tau;
};

/// First recorded time with mu_F >= gamma * mu_R. Discarded trajectories report no time.
inline RepolResult time_to_repolarisation(const Trajectory& traj, double gamma) {
    if (!(gamma > 1.0)) throw ConfigError("repolarisation threshold gamma must exceed 1");
    if (traj.discarded) return {RepolOutcome::Discarded, std::nullopt};
    for (std::size_t j = 0; j < traj.states.size(); ++j) {
        const auto w = relative_concentrations(traj.states[j], traj.grid);
        if (w.mu_F >= gamma * w.mu_R) return {RepolOutcome::Repolarised, traj.times[j]};
    }
    return {RepolOutcome::Never, std::nullopt};
}

/// Number of maximal periodic runs where A > threshold_fraction * max(A).
inline int count_fronts(std::span<const double> activator, double threshold_fraction = 0.5) {
    if (!(threshold_fraction > 0.0 && threshold_fraction < 1.0)) {
        throw ConfigError("front threshold fraction must lie in (0, 1)");
    }
    if (activator.empty()) return 0;
    const double peak = *std::max_element(activator.begin(), activator.end());
    const double thr = threshold_fraction * peak;
    const std::size_t m = activator.size();
    int runs = 0;
    bool all_above = true;
    for (std::size_t i = 0; i < m; ++i) {
        const bool above = activator[i] > thr;
        const bool prev_above = activator[(i + m - 1) % m] > thr;
        all_above &= above;
        if (above && !prev_above) ++runs;
    }
    return all_above ? 1 : runs;
}

inline int count_fronts(const FieldPair& state, double threshold_fraction = 0.5) {
    return count_fronts(state.activator, threshold_fraction);
}

/// Quartiles and 1.5 IQR whiskers (clamped to the data range).
struct BoxSummary {
    std::size_t n = 0;
    double mean = 0.0, variance = 0.0;
    double q1 = 0.0, median = 0.0, q3 = 0.0;
    double whisker_lo = 0.0, whisker_hi = 0.0;
};

inline double quantile_sorted(const std::vector<double>& s, double p) {
    if (s.empty()) return 0.0;
    const double pos = p * static_cast<double>(s.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, s.size() - 1);
    const double w = pos - static_cast<double>(lo);
    return (1.0 - w) * s[lo] + w * s[hi];
}

inline BoxSummary box_summary(std::vector<double> v) {
    BoxSummary b;
    b.n = v.size();
    if (v.empty()) return b;
    std::sort(v.begin(), v.end());
    b.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - b.mean) * (x - b.mean);
    b.variance = v.size() > 1 ? ss / static_cast<double>(v.size() - 1) : 0.0;
    b.q1 = quantile_sorted(v, 0.25);
    b.median = quantile_sorted(v, 0.5);
    b.q3 = quantile_sorted(v, 0.75);
    const double iqr = b.q3 - b.q1;
    const double lo_fence = b.q1 - 1.5 * iqr;
    const double hi_fence = b.q3 + 1.5 * iqr;
    b.whisker_lo = *std::find_if(v.begin(), v.end(), [&](double x) { return x >= lo_fence; });
    b.whisker_hi = *std::find_if(v.rbegin(), v.rend(), [&](double x) { return x <= hi_fence; });
    return b;
}

struct RepolStats {
    double sigma_A = 0.0;
    double gamma = 1.2;
    std::size_t replicates = 0;
    std::vector<double> tau_samples;
    std::size_t n_discarded_negative = 0;
    std::size_t n_never = 0;
    BoxSummary summary;

    double discard_fraction() const {
        return replicates == 0 ? 0.0 : static_cast<double>(n_discarded_negative) / static_cast<double>(replicates);
    }
};

/// Simulation settings shared by every replicate of a repolarisation sweep.
struct RepolSetup {
    TorusGrid grid{20.0, 500};
    double T = 100.0;
    double dt = 0.01;
    Scheme scheme = Scheme::SemiImplicitDiffusion;
    std::size_t record_stride = 10; // tau resolution = record_stride * dt
    double peak_height = 2.0;
    double baseline = 0.8;
    // Stop a replicate once tau is found. The negativity check then covers [0, tau] only.
    bool stop_at_repolarisation = false;
};

/// Streams one replicate and returns its repolarisation outcome.
inline RepolResult repolarisation_run(const ModelParams& params, const RepolSetup& setup, double gamma,
                                      std::uint64_t seed) {
    if (!(gamma > 1.0)) throw ConfigError("repolarisation threshold gamma must exceed 1");
    SolverConfig cfg;
    cfg.T = setup.T;
    cfg.n_steps = static_cast<std::size_t>(std::llround(setup.T / setup.dt));
    cfg.scheme = setup.scheme;
    cfg.seed = seed;
    cfg.record_stride = setup.record_stride;
    const auto init = default_initial_condition(setup.grid, params, setup.peak_height, setup.baseline);
    std::optional<double> tau;
    const auto summary = simulate_streaming(params, init, cfg, setup.grid, [&](std::size_t, const FieldPair& s) {
        if (!tau) {
            const auto w = relative_concentrations(s.activator, setup.grid);
            if (w.mu_F >= gamma * w.mu_R) tau = s.time;
        }
        return !(tau && setup.stop_at_repolarisation);
    });
    if (summary.discarded) return {RepolOutcome::Discarded, std::nullopt};
    if (!tau) return {RepolOutcome::Never, std::nullopt};
    return {RepolOutcome::Repolarised, tau};
}

/// Per-sigma repolarisation statistics. Replicate r at sigma index s uses seed
/// derive_seed(seed, s * replicates + r).
inline std::vector<RepolStats> repol_sweep(const ModelParams& params_base, const std::vector<double>& sigma_grid,
                                           std::size_t replicates, double gamma, std::uint64_t seed,
                                           const RepolSetup& setup = {}, unsigned workers = 1) {
    if (replicates == 0) throw ConfigError("repol_sweep: replicates must be >= 1");
    std::vector<RepolStats> out;
    for (std::size_t s = 0; s < sigma_grid.size(); ++s) {
        ModelParams p = params_base;
        p.sigma_A = sigma_grid[s];
        // Without noise every replicate is the same path.
        const std::size_t distinct = (p.sigma_A == 0.0 && p.sigma_I == 0.0) ? 1 : replicates;
        auto results = parallel_map<RepolResult>(distinct, workers, [&](std::size_t r) {
            return repolarisation_run(p, setup, gamma, derive_seed(seed, s * replicates + r));
        });
        RepolStats st;
        st.sigma_A = p.sigma_A;
        st.gamma = gamma;
        st.replicates = replicates;
        for (std::size_t r = 0; r < replicates; ++r) {
            const auto& res = results[r % distinct];
            switch (res.outcome) {
            case RepolOutcome::Repolarised: st.tau_samples.push_back(*res.tau); break;
            case RepolOutcome::Never: ++st.n_never; break;
            case RepolOutcome::Discarded: ++st.n_discarded_negative; break;
            }
        }
        st.summary = box_summary(st.tau_samples);
        out.push_back(std::move(st));
    }
    return out;
}

// ---- estimation campaigns ---------------------------------------------------------------

enum class Scenario { LinearZeroInit, FullMeinhardt };

inline std::string to_string(Scenario s) { return s == Scenario::LinearZeroInit ? "linear" : "meinhardt"; }

inline Scenario parse_scenario(const std::string& s) {
    if (s == "linear") return Scenario::LinearZeroInit;
    if (s == "meinhardt" || s == "nonlinear") return Scenario::FullMeinhardt;
    throw ConfigError("unknown scenario '" + s + "' (expected linear or meinhardt)");
}

/// Channel count rule: Fixed(M) or Scaled, M(delta) = floor(L / (2 delta)).
struct MPolicy {
    enum class Kind { Fixed, Scaled } kind = Kind::Fixed;
    std::size_t fixed_M = 5;

    static MPolicy fixed(std::size_t M) { return {Kind::Fixed, M}; }
    static MPolicy scaled() { return {Kind::Scaled, 0}; }

    std::size_t channels(double L, double delta) const {
        if (kind == Kind::Fixed) return fixed_M;
        const auto M = static_cast<std::size_t>(std::floor(L / (2.0 * delta) * (1.0 + 1e-12)));
        if (M < 1) throw ConfigError("scaled policy gives M < 1 for delta = " + std::to_string(delta));
        return M;
    }
    std::string label() const { return kind == Kind::Fixed ? "fixed" + std::to_string(fixed_M) : "scaled"; }
};

struct McCampaign {
    std::size_t replicates = 200;
    std::uint64_t master_seed = 1;
    std::vector<double> delta_grid; // absolute resolutions
    std::vector<MPolicy> policies{MPolicy::fixed(5), MPolicy::scaled()};
    Scenario scenario = Scenario::LinearZeroInit;
    std::vector<double> alphas{0.1, 0.05};
    ModelParams params = default_params();
    TorusGrid grid{20.0, 500};
    double T = 30.0;
    std::size_t n_steps = 62500; // m^2 / 4
    Scheme scheme = Scheme::ExplicitEulerMaruyama;
    std::size_t time_stride = 1;
    LaplacianMode laplacian_mode = LaplacianMode::GridConsistent;
    // Known sigma_A for the data-driven interval; otherwise the realized variation is used.
    bool sigma_known = true;
    double peak_height = 2.0;
    double baseline = 0.8;
    // Also run the Fourier-projection comparator on every layout with M >= 3.
    bool spectral = false;
    unsigned workers = 1;
};

/// One layout's result in one replicate.
struct ReplicateEstimate {
    double D_hat = 0.0;
    double fisher_info = 0.0;
    double rv = 0.0;
    std::vector<std::optional<Interval>> plugin;   // per alpha
    std::vector<Interval> datadriven;              // per alpha
    std::optional<double> spectral_D;
};

struct ReplicateRecord {
    bool discarded = false;
    std::vector<ReplicateEstimate> layouts; // index = delta_index * policies + policy_index
};

struct CampaignCell {
    double delta = 0.0;
    std::string policy;
    std::size_t M = 0;
    std::size_t n = 0;
    double rmse = 0.0;
    double mean_estimate = 0.0;
    double sd_estimate = 0.0;
    double mean_fisher = 0.0;
    std::vector<double> coverage_plugin;   // per alpha
    std::vector<double> coverage_datadriven;
    std::vector<double> mean_width_plugin;
    std::vector<double> mean_width_datadriven;
    double frac_datadriven_narrower = 0.0; // first alpha
    std::optional<double> spectral_rmse;
    std::vector<double> estimates;
    std::vector<double> fisher;
};

struct CampaignResult {
    std::vector<CampaignCell> cells; // delta-major, policy-minor
    std::vector<std::pair<std::string, double>> slopes; // per policy: log-log RMSE slope vs delta
    std::size_t n_discarded = 0;
    std::size_t replicates = 0;
};

/// Least squares slope of log10(y) against log10(x).
inline double loglog_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw DataError("loglog_slope needs at least two points");
    double mx = 0.0, my = 0.0;
    const auto n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += std::log10(x[i]);
        my += std::log10(y[i]);
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log10(x[i]) - mx;
        sxy += dx * (std::log10(y[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

/// Simulates one replicate and evaluates every (delta, policy) layout on the same path.
inline ReplicateRecord campaign_replicate(const McCampaign& c, const Kernel& kernel, std::size_t index) {
    ModelParams p = c.params;
    p.linear_activator = c.scenario == Scenario::LinearZeroInit;
    SolverConfig cfg;
    cfg.T = c.T;
    cfg.n_steps = c.n_steps;
    cfg.scheme = c.scheme;
    cfg.seed = derive_seed(c.master_seed, index);
    cfg.record_stride = c.time_stride;
    const FieldPair init = c.scenario == Scenario::LinearZeroInit
                               ? zero_initial_condition(c.grid)
                               : default_initial_condition(c.grid, p, c.peak_height, c.baseline);
    std::vector<Measurer> measurers;
    for (double delta : c.delta_grid) {
        for (const auto& pol : c.policies) {
            const auto M = pol.channels(c.grid.length(), delta);
            measurers.emplace_back(MeasurementLayout::regular(M, c.grid.length(), delta), kernel, c.grid,
                                   c.laplacian_mode);
        }
    }
    const auto summary = simulate_streaming(p, init, cfg, c.grid, [&](std::size_t, const FieldPair& s) {
        for (auto& m : measurers) m.observe(s.time, s.activator);
        return true;
    });
    ReplicateRecord rec;
    rec.discarded = summary.discarded && c.scenario == Scenario::FullMeinhardt;
    const std::optional<double> sigma = c.sigma_known ? std::optional<double>(p.sigma_A) : std::nullopt;
    for (auto& m : measurers) {
        const auto& ms = m.result();
        ReplicateEstimate est;
        auto base = augmented_mle(ms);
        est.D_hat = base.D_hat;
        est.fisher_info = base.fisher_info;
        est.rv = base.martingale_free_qv_estimate;
        for (double alpha : c.alphas) {
            const auto rep = confidence_intervals(base, kernel, sigma, alpha);
            est.plugin.push_back(rep.ci_plugin);
            est.datadriven.push_back(*rep.ci_datadriven);
        }
        if (c.spectral && ms.M() >= 3) {
            est.spectral_D = spectral_mle(ms.A_loc, ms.layout, ms.times, default_spectral_modes(ms.M()), ms.L);
        }
        rec.layouts.push_back(std::move(est));
    }
    return rec;
}

/// Aggregates replicate records into per-layout RMSE / coverage and per-policy slopes.
/// Discarded (negative) nonlinear replicates are excluded.
inline CampaignResult aggregate_campaign(const McCampaign& c, const std::vector<ReplicateRecord>& records) {
    CampaignResult res;
    res.replicates = records.size();
    const double truth = c.params.D_A;
    const std::size_t P = c.policies.size();
    for (const auto& r : records) res.n_discarded += r.discarded ? 1 : 0;
    for (std::size_t d = 0; d < c.delta_grid.size(); ++d) {
        for (std::size_t pi = 0; pi < P; ++pi) {
            const std::size_t li = d * P + pi;
            CampaignCell cell;
            cell.delta = c.delta_grid[d];
            cell.policy = c.policies[pi].label();
            cell.M = c.policies[pi].channels(c.grid.length(), cell.delta);
            const std::size_t A = c.alphas.size();
            cell.coverage_plugin.assign(A, 0.0);
            cell.coverage_datadriven.assign(A, 0.0);
            cell.mean_width_plugin.assign(A, 0.0);
            cell.mean_width_datadriven.assign(A, 0.0);
            std::vector<std::size_t> plugin_n(A, 0);
            double se = 0.0, spec_se = 0.0;
            std::size_t spec_n = 0, narrower = 0;
            for (const auto& r : records) {
                if (r.discarded) continue;
                const auto& e = r.layouts[li];
                ++cell.n;
                cell.estimates.push_back(e.D_hat);
                cell.fisher.push_back(e.fisher_info);
                se += (e.D_hat - truth) * (e.D_hat - truth);
                for (std::size_t a = 0; a < A; ++a) {
                    if (e.plugin[a]) {
                        cell.coverage_plugin[a] += e.plugin[a]->contains(truth) ? 1.0 : 0.0;
                        cell.mean_width_plugin[a] += 2.0 * e.plugin[a]->half_width();
                        ++plugin_n[a];
                    }
                    cell.coverage_datadriven[a] += e.datadriven[a].contains(truth) ? 1.0 : 0.0;
                    cell.mean_width_datadriven[a] += 2.0 * e.datadriven[a].half_width();
                }
                if (A > 0 && e.plugin[0] && e.datadriven[0].half_width() <= e.plugin[0]->half_width()) ++narrower;
                if (e.spectral_D) {
                    spec_se += (*e.spectral_D - truth) * (*e.spectral_D - truth);
                    ++spec_n;
                }
            }
            if (cell.n > 0) {
                const auto n = static_cast<double>(cell.n);
                cell.rmse = std::sqrt(se / n);
                cell.mean_estimate = std::accumulate(cell.estimates.begin(), cell.estimates.end(), 0.0) / n;
                double ss = 0.0;
                for (double v : cell.estimates) ss += (v - cell.mean_estimate) * (v - cell.mean_estimate);
                cell.sd_estimate = cell.n > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
                cell.mean_fisher = std::accumulate(cell.fisher.begin(), cell.fisher.end(), 0.0) / n;
                for (std::size_t a = 0; a < A; ++a) {
                    cell.coverage_datadriven[a] /= n;
                    cell.mean_width_datadriven[a] /= n;
                    if (plugin_n[a] > 0) {
                        cell.coverage_plugin[a] /= static_cast<double>(plugin_n[a]);
                        cell.mean_width_plugin[a] /= static_cast<double>(plugin_n[a]);
                    }
                }
                cell.frac_datadriven_narrower = static_cast<double>(narrower) / n;
                if (spec_n > 0) cell.spectral_rmse = std::sqrt(spec_se / static_cast<double>(spec_n));
            }
            res.cells.push_back(std::move(cell));
        }
    }
    if (c.delta_grid.size() >= 2) {
        for (std::size_t pi = 0; pi < P; ++pi) {
            std::vector<double> xs, ys;
            for (std::size_t d = 0; d < c.delta_grid.size(); ++d) {
                const auto& cell = res.cells[d * P + pi];
                if (cell.n == 0 || !(cell.rmse > 0.0)) continue;
                xs.push_back(cell.delta);
                ys.push_back(cell.rmse);
            }
            if (xs.size() >= 2) res.slopes.emplace_back(c.policies[pi].label(), loglog_slope(xs, ys));
        }
    }
    return res;
}

/// Full Monte Carlo estimation study. Replicate i uses derive_seed(master_seed, i), so the
/// aggregate does not depend on the worker count.
inline CampaignResult estimation_campaign(const McCampaign& c, const Kernel& kernel) {
    if (c.replicates == 0) throw ConfigError("campaign needs at least one replicate");
    if (c.delta_grid.empty()) throw ConfigError("campaign needs a non-empty delta grid");
    if (c.policies.empty()) throw ConfigError("campaign needs at least one M policy");
    const auto records = parallel_map<ReplicateRecord>(
        c.replicates, c.workers, [&](std::size_t i) { return campaign_replicate(c, kernel, i); });
    return aggregate_campaign(c, records);
}

} // namespace meinhardt

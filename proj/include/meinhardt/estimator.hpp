#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/math/distributions/normal.hpp>

#include "meinhardt/error.hpp"
#include "meinhardt/kernel.hpp"
#include "meinhardt/measurement.hpp"

namespace meinhardt {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double half_width() const noexcept { return 0.5 * (hi - lo); }
    double center() const noexcept { return 0.5 * (hi + lo); }
    bool contains(double x) const noexcept { return lo <= x && x <= hi; }
};

struct EstimateReport {
    double D_hat = 0.0;
    double fisher_info = 0.0;
    // Realized variation of the local measurements; estimates T sigma_A^2 ||K||^2.
    double martingale_free_qv_estimate = 0.0;
    std::optional<Interval> ci_plugin;
    std::optional<Interval> ci_datadriven;
    double alpha = 0.1;
    double delta = 0.0;
    std::size_t M = 0;
    double T = 0.0;
    // sigma_A ||K|| actually used for the data-driven interval.
    double noise_scale = 0.0;
    bool noise_scale_from_rv = false;
    std::vector<std::string> flags;
};

/// Standard normal quantile.
inline double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw ConfigError("normal quantile needs p in (0, 1)");
    return boost::math::quantile(boost::math::normal_distribution<double>(0.0, 1.0), p);
}

/// Left-point sum  sum_j integrand(t_{j-1}) (integrator(t_j) - integrator(t_{j-1})).
/// Left-point evaluation is what makes this an Ito (not Stratonovich) integral.
inline double ito_integral(std::span<const double> integrand, std::span<const double> integrator,
                           std::span<const double> times) {
    if (integrand.size() != integrator.size() || integrand.size() != times.size()) {
        throw DataError("ito_integral: integrand, integrator and times must have equal length");
    }
    for (std::size_t j = 1; j < times.size(); ++j) {
        if (!(times[j] > times[j - 1])) throw DataError("ito_integral: times must be strictly increasing");
    }
    double s = 0.0;
    for (std::size_t j = 1; j < integrand.size(); ++j) s += integrand[j - 1] * (integrator[j] - integrator[j - 1]);
    return s;
}

/// Observed Fisher information  sum_k int_0^T (A_lap)^2 dt  by the left-point rule.
inline double fisher_information(const MeasurementSet& ms) {
    ms.check_shapes();
    if (ms.times.size() < 2 || ms.M() == 0) throw DataError("fisher_information: empty measurement set");
    if (!ms.has_laplacian()) throw DataError("fisher_information: no Laplacian measurements");
    double total = 0.0;
    for (std::size_t j = 0; j + 1 < ms.times.size(); ++j) {
        const double dt = ms.times[j + 1] - ms.times[j];
        double row = 0.0;
        for (std::size_t k = 0; k < ms.M(); ++k) {
            const double v = ms.A_lap(j, k);
            row += v * v;
        }
        total += row * dt;
    }
    return total;
}

/// M^{-1} sum_k sum_j (A_loc(t_j) - A_loc(t_{j-1}))^2, an estimate of T sigma_A^2 ||K||^2.
inline double realized_variation(const MeasurementSet& ms) {
    if (ms.times.size() < 2) throw DataError("realized_variation: need at least two time points");
    if (ms.A_loc.rows != ms.times.size() || ms.A_loc.cols == 0) {
        throw DataError("realized_variation: local measurement matrix shape mismatch");
    }
    double s = 0.0;
    for (std::size_t j = 1; j < ms.A_loc.rows; ++j) {
        for (std::size_t k = 0; k < ms.A_loc.cols; ++k) {
            const double d = ms.A_loc(j, k) - ms.A_loc(j - 1, k);
            s += d * d;
        }
    }
    return s / static_cast<double>(ms.A_loc.cols);
}

/// Numerator of the augmented MLE:  sum_k int A_lap dA_loc.
inline double mle_numerator(const MeasurementSet& ms) {
    double num = 0.0;
    for (std::size_t j = 1; j < ms.times.size(); ++j) {
        for (std::size_t k = 0; k < ms.M(); ++k) num += ms.A_lap(j - 1, k) * (ms.A_loc(j, k) - ms.A_loc(j - 1, k));
    }
    return num;
}

/// D_hat = sum_k int A_lap dA_loc / sum_k int A_lap^2 dt. Fills D_hat, fisher_info, the realized
/// variation and the layout summary; intervals are added by confidence_intervals().
inline EstimateReport augmented_mle(const MeasurementSet& ms) {
    const double info = fisher_information(ms);
    if (!(info > 0.0) || !std::isfinite(info)) {
        throw DataError("degenerate data: zero observed Fisher information (Laplacian measurements vanish)");
    }
    for (std::size_t j = 1; j < ms.times.size(); ++j) {
        if (!(ms.times[j] > ms.times[j - 1])) throw DataError("measurement times must be strictly increasing");
    }
    EstimateReport r;
    r.D_hat = mle_numerator(ms) / info;
    r.fisher_info = info;
    r.martingale_free_qv_estimate = realized_variation(ms);
    r.delta = ms.layout.delta;
    r.M = ms.M();
    r.T = ms.T();
    if (r.D_hat < 0.0) r.flags.emplace_back("negative_estimate");
    return r;
}

/// Adds both asymptotic intervals:
///   plug-in      D_hat +- delta (M T)^{-1/2} (D_hat Sigma)^{1/2} q
///   data-driven  D_hat +- sigma_A ||K|| I^{-1/2} q
/// sigma_A ||K|| is sigma_A_known * ||K|| when given, else sqrt(RV / T). The plug-in interval is
/// left empty (and flagged) when D_hat < 0.
inline EstimateReport confidence_intervals(EstimateReport report, const Kernel& kernel,
                                           std::optional<double> sigma_A_known, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
    if (!(report.fisher_info > 0.0)) throw DataError("confidence intervals need positive Fisher information");
    report.alpha = alpha;
    const double q = normal_quantile(1.0 - alpha / 2.0);
    if (report.D_hat >= 0.0) {
        const double hw = report.delta / std::sqrt(static_cast<double>(report.M) * report.T) *
                          std::sqrt(report.D_hat * kernel.sigma()) * q;
        report.ci_plugin = Interval{report.D_hat - hw, report.D_hat + hw};
    } else {
        report.ci_plugin.reset();
        if (std::find(report.flags.begin(), report.flags.end(), "plugin_interval_undefined") == report.flags.end()) {
            report.flags.emplace_back("plugin_interval_undefined");
        }
    }
    if (sigma_A_known) {
        if (!(*sigma_A_known >= 0.0)) throw ConfigError("sigma_A must be non-negative");
        report.noise_scale = *sigma_A_known * kernel.norm();
        report.noise_scale_from_rv = false;
    } else {
        if (!(report.T > 0.0)) throw DataError("data-driven interval needs T > 0");
        report.noise_scale = std::sqrt(report.martingale_free_qv_estimate / report.T);
        report.noise_scale_from_rv = true;
    }
    const double hw = report.noise_scale / std::sqrt(report.fisher_info) * q;
    report.ci_datadriven = Interval{report.D_hat - hw, report.D_hat + hw};
    return report;
}

/// Second difference across channels, (A_{k+1} - 2 A_k + A_{k-1}) / h^2 with h = L / M, periodic in k.
inline Matrix fd_laplacian_measurements(const Matrix& A_loc, const MeasurementLayout& layout, double L) {
    if (A_loc.cols != layout.M()) throw DataError("fd_laplacian: matrix columns do not match layout");
    if (layout.M() < 3) throw DataError("fd_laplacian: need at least 3 channels");
    if (!layout.is_regular(L)) throw DataError("fd_laplacian: centers do not form the regular grid L k / M");
    const std::size_t M = layout.M();
    const double h = L / static_cast<double>(M);
    const double inv = 1.0 / (h * h);
    Matrix out(A_loc.rows, M);
    for (std::size_t j = 0; j < A_loc.rows; ++j) {
        for (std::size_t k = 0; k < M; ++k) {
            const std::size_t kp = (k + 1) % M;
            const std::size_t km = (k + M - 1) % M;
            out(j, k) = (A_loc(j, kp) - 2.0 * A_loc(j, k) + A_loc(j, km)) * inv;
        }
    }
    return out;
}

inline std::size_t default_spectral_modes(std::size_t M) { return std::max<std::size_t>(1, std::min<std::size_t>(10, M / 4)); }

/// Fourier-projection drift estimator. Each row is projected onto cos and sin modes l = 1..n_modes;
/// every coefficient process is treated as dv = -D lambda_l v dt + noise with lambda_l = (2 pi l / L)^2,
/// giving  D_hat = -sum_l lambda_l int v_l dv_l / sum_l lambda_l^2 int v_l^2 dt.
inline double spectral_mle(const Matrix& A_loc, const MeasurementLayout& layout, std::span<const double> times,
                           std::size_t n_modes, double L) {
    const std::size_t M = layout.M();
    if (A_loc.cols != M || A_loc.rows != times.size()) throw DataError("spectral_mle: shape mismatch");
    if (times.size() < 2) throw DataError("spectral_mle: need at least two time points");
    if (n_modes == 0 || 2 * n_modes >= M) throw ConfigError("spectral_mle: need 0 < n_modes < M/2");
    if (!layout.is_regular(L)) throw DataError("spectral_mle: centers must be regular");
    const std::size_t N1 = times.size();
    double num = 0.0;
    double den = 0.0;
    // Raw signal energy; mode energy below round-off relative to it counts as none.
    double energy = 0.0;
    for (std::size_t j = 0; j + 1 < N1; ++j) {
        for (std::size_t k = 0; k < M; ++k) energy += A_loc(j, k) * A_loc(j, k) * (times[j + 1] - times[j]);
    }
    const double lambda_max = std::pow(2.0 * std::numbers::pi * static_cast<double>(n_modes) / L, 2);
    std::vector<double> vc(N1), vs(N1);
    for (std::size_t l = 1; l <= n_modes; ++l) {
        const double lambda = std::pow(2.0 * std::numbers::pi * static_cast<double>(l) / L, 2);
        for (std::size_t j = 0; j < N1; ++j) {
            double c = 0.0, s = 0.0;
            for (std::size_t k = 0; k < M; ++k) {
                const double phase = 2.0 * std::numbers::pi * static_cast<double>(l * k) / static_cast<double>(M);
                c += A_loc(j, k) * std::cos(phase);
                s += A_loc(j, k) * std::sin(phase);
            }
            vc[j] = 2.0 * c / static_cast<double>(M);
            vs[j] = 2.0 * s / static_cast<double>(M);
        }
        for (const auto* v : {&vc, &vs}) {
            const auto& x = *v;
            for (std::size_t j = 1; j < N1; ++j) {
                const double dt = times[j] - times[j - 1];
                num += lambda * x[j - 1] * (x[j] - x[j - 1]);
                den += lambda * lambda * x[j - 1] * x[j - 1] * dt;
            }
        }
    }
    if (!(den > 1e-24 * lambda_max * lambda_max * energy)) {
        throw DataError("spectral_mle: degenerate denominator (no mode energy)");
    }
    return -num / den;
}

} // namespace meinhardt

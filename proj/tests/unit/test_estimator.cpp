#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "meinhardt/estimator.hpp"
#include "meinhardt/rng.hpp"

using namespace meinhardt;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double L = 20.0;

std::vector<double> uniform_times(std::size_t n, double T) {
    std::vector<double> t(n + 1);
    for (std::size_t j = 0; j <= n; ++j) t[j] = T * static_cast<double>(j) / static_cast<double>(n);
    return t;
}

MeasurementSet set_from(const std::vector<double>& times, std::size_t M, auto&& loc, auto&& lap) {
    MeasurementSet ms;
    ms.layout = MeasurementLayout::regular(M, L, 0.5);
    ms.times = times;
    ms.A_loc = Matrix(times.size(), M);
    ms.A_lap = Matrix(times.size(), M);
    for (std::size_t j = 0; j < times.size(); ++j) {
        for (std::size_t k = 0; k < M; ++k) {
            ms.A_loc(j, k) = loc(j, k);
            ms.A_lap(j, k) = lap(j, k);
        }
    }
    return ms;
}

std::vector<double> brownian(Rng& rng, std::size_t n, double dt, double rate = 1.0) {
    std::vector<double> w(n + 1, 0.0);
    for (std::size_t j = 1; j <= n; ++j) w[j] = w[j - 1] + std::sqrt(rate * dt) * rng.normal();
    return w;
}

// One explicit-scheme run observed every step with grid-consistent Laplacians. Besides the measurements
// it accumulates the martingale part  sigma_A sum_k sum_j A_lap(t_{j-1}, x_k) <xi_j, K_{delta,x_k}>
// from the noise the stepper actually drew.
struct ObservedRun {
    MeasurementSet ms;
    double martingale = 0.0;
};

ObservedRun observed_run(const ModelParams& p, const TorusGrid& g, double T, std::size_t n, std::size_t M,
                         double delta, std::uint64_t seed, const FieldPair& init) {
    const auto K = bump_kernel();
    SolverConfig cfg;
    cfg.T = T;
    cfg.n_steps = n;
    cfg.scheme = Scheme::ExplicitEulerMaruyama;
    Stepper stepper(p, cfg, g);
    Rng rng(seed);
    const auto layout = MeasurementLayout::regular(M, L, delta);
    Measurer meas(layout, K, g, LaplacianMode::GridConsistent);
    std::vector<KernelStencil> st;
    for (double c : layout.centers) st.push_back(make_stencil(K, delta, c, g, LaplacianMode::GridConsistent));
    FieldPair s = init;
    s.time = 0.0;
    meas.observe(0.0, s.activator);
    ObservedRun out;
    for (std::size_t j = 1; j <= n; ++j) {
        const auto& prev = meas.result();
        std::vector<double> lap_prev(M);
        for (std::size_t k = 0; k < M; ++k) lap_prev[k] = prev.A_lap(j - 1, k);
        stepper.step(s, rng);
        const auto xi = stepper.last_activator_noise();
        for (std::size_t k = 0; k < M; ++k) out.martingale += p.sigma_A * lap_prev[k] * st[k].apply(xi);
        meas.observe(T * static_cast<double>(j) / static_cast<double>(n), s.activator);
    }
    out.ms = meas.take();
    return out;
}

ModelParams linear_params() {
    ModelParams p;
    p.linear_activator = true;
    return p;
}
} // namespace

TEST(ItoIntegral, Examples) {
    const auto t = uniform_times(4, 1.0);
    const std::vector<double> f{1.0, -2.0, 3.0, 0.5, 7.0};
    const std::vector<double> c(5, 4.2);
    EXPECT_EQ(ito_integral(f, c, t), 0.0);
    const std::vector<double> one(5, 1.0);
    EXPECT_DOUBLE_EQ(ito_integral(one, f, t), f.back() - f.front());
    // Left point: 1*(-3) + (-2)*5 + 3*(-2.5) + 0.5*6.5
    EXPECT_DOUBLE_EQ(ito_integral(f, f, t), -3.0 - 10.0 - 7.5 + 3.25);
}

TEST(ItoIntegral, InputErrors) {
    const auto t = uniform_times(3, 1.0);
    const std::vector<double> a(4, 1.0), b(3, 1.0);
    EXPECT_THROW(ito_integral(a, b, t), DataError);
    std::vector<double> bad_t{0.0, 0.5, 0.5, 1.0};
    EXPECT_THROW(ito_integral(a, a, bad_t), DataError);
}

TEST(ItoIntegral, BrownianSelfIntegralHasMeanZero) {
    // Oracle: int_0^T w dw = (w_T^2 - T)/2 has mean 0; the left-point sum equals
    // (w_T^2 - sum dw^2)/2 exactly.
    const std::size_t n = 1000;
    const double T = 1.0;
    const auto t = uniform_times(n, T);
    Rng rng(101);
    double s = 0.0, s2 = 0.0;
    const int reps = 2000;
    for (int r = 0; r < reps; ++r) {
        const auto w = brownian(rng, n, T / n);
        const double v = ito_integral(w, w, t);
        double qv = 0.0;
        for (std::size_t j = 1; j <= n; ++j) qv += (w[j] - w[j - 1]) * (w[j] - w[j - 1]);
        EXPECT_NEAR(v, 0.5 * (w.back() * w.back() - qv), 1e-10);
        s += v;
        s2 += v * v;
    }
    const double mean = s / reps;
    const double se = std::sqrt((s2 / reps - mean * mean) / reps);
    EXPECT_LT(std::fabs(mean), 4.0 * se);
    EXPECT_NEAR(s2 / reps, 0.5, 0.05); // Var = T^2/2
}

TEST(ItoIntegral, TimeReversalChangesTheSum) {
    const std::size_t n = 5000;
    const auto t = uniform_times(n, 1.0);
    Rng rng(7);
    const auto w = brownian(rng, n, 1.0 / n);
    std::vector<double> rev(w.rbegin(), w.rend());
    const double fwd = ito_integral(w, w, t);
    // Left point on the reversed path is the right-point sum on the original, up to sign.
    const double back = -ito_integral(rev, rev, t);
    double qv = 0.0;
    for (std::size_t j = 1; j <= n; ++j) qv += (w[j] - w[j - 1]) * (w[j] - w[j - 1]);
    EXPECT_NEAR(back - fwd, qv, 1e-9);
    EXPECT_GT(std::fabs(back - fwd), 0.5);
}

TEST(FisherInformation, ConstantLaplacian) {
    const auto t = uniform_times(60, 3.0);
    const auto ms = set_from(t, 4, [](auto, auto) { return 0.0; }, [](auto, auto) { return -1.5; });
    EXPECT_NEAR(fisher_information(ms), 4 * 3.0 * 2.25, 1e-12);
}

TEST(FisherInformation, ZeroLaplacianIsDegenerate) {
    const auto t = uniform_times(10, 1.0);
    const auto ms = set_from(t, 3, [](auto j, auto) { return double(j); }, [](auto, auto) { return 0.0; });
    EXPECT_EQ(fisher_information(ms), 0.0);
    EXPECT_THROW(augmented_mle(ms), DataError);
}

TEST(FisherInformation, MissingOrEmptyInputs) {
    MeasurementSet ms;
    ms.layout = MeasurementLayout::regular(2, L, 0.5);
    ms.times = {0.0};
    ms.A_loc = Matrix(1, 2);
    ms.A_lap = Matrix(1, 2);
    EXPECT_THROW(fisher_information(ms), DataError);
    ms.times = {0.0, 1.0};
    ms.A_loc = Matrix(2, 2);
    ms.A_lap = Matrix();
    EXPECT_THROW(fisher_information(ms), DataError);
}

TEST(FisherInformation, ScaledInformationApproachesKappa) {
    // kappa = M T sigma^2 D^{-1} ||K||^2 Sigma^{-1}, linear SPDE from zero.
    const auto K = bump_kernel();
    const auto p = linear_params();
    TorusGrid g(L, 500);
    const double T = 30.0;
    const std::size_t M = 5;
    for (double delta : {0.5, 1.0}) {
        double acc = 0.0;
        const int reps = 24;
        for (int r = 0; r < reps; ++r) {
            const auto run = observed_run(p, g, T, 6000, M, delta, derive_seed(3, r), zero_initial_condition(g));
            acc += fisher_information(run.ms);
        }
        const double kappa = M * T * p.sigma_A * p.sigma_A / p.D_A * K.norm() * K.norm() / K.sigma();
        EXPECT_NEAR(delta * delta * acc / reps / kappa, 1.0, 0.10) << "delta=" << delta;
    }
}

TEST(AugmentedMle, DeterministicLinearIsExact) {
    auto p = linear_params();
    p.sigma_A = 0.0;
    TorusGrid g(L, 400);
    FieldPair init = zero_initial_condition(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double x = g.coordinate(i);
        init.activator[i] = std::cos(2 * kPi * x / L) + 0.3 * std::cos(6 * kPi * x / L);
    }
    const auto run = observed_run(p, g, 10.0, 4000, 5, 1.0, 1, init);
    const auto rep = augmented_mle(run.ms);
    EXPECT_NEAR(rep.D_hat / p.D_A, 1.0, 1e-9);
    EXPECT_EQ(rep.martingale_free_qv_estimate > 0.0, true);
    EXPECT_EQ(rep.M, 5u);
    EXPECT_DOUBLE_EQ(rep.T, 10.0);
    EXPECT_DOUBLE_EQ(rep.delta, 1.0);
}

TEST(AugmentedMle, ErrorDecompositionHasNoRemainderInLinearCase) {
    const auto p = linear_params();
    TorusGrid g(L, 300);
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto run = observed_run(p, g, 10.0, 3000, 5, 0.8, seed, zero_initial_condition(g));
        const auto rep = augmented_mle(run.ms);
        const double residual = rep.D_hat - p.D_A - run.martingale / rep.fisher_info;
        EXPECT_NEAR(residual, 0.0, 1e-10 * p.D_A) << "seed " << seed;
        EXPECT_GT(std::fabs(rep.D_hat - p.D_A), 1e-6); // the noise term itself is not zero
    }
}

TEST(AugmentedMle, NonlinearRemainderGrowsNoFasterThanInverseRootDelta) {
    const auto p = default_params();
    TorusGrid g(L, 500);
    const std::vector<double> deltas{0.34, 0.5, 1.0, 2.0};
    std::vector<double> R(deltas.size(), 0.0);
    const int reps = 4;
    for (int r = 0; r < reps; ++r) {
        for (std::size_t d = 0; d < deltas.size(); ++d) {
            const auto run = observed_run(p, g, 10.0, 2500, 5, deltas[d], derive_seed(11, r),
                                          default_initial_condition(g, p));
            const auto rep = augmented_mle(run.ms);
            R[d] += std::fabs(rep.fisher_info * (rep.D_hat - p.D_A) - run.martingale) / reps;
        }
    }
    std::vector<double> lx, ly;
    for (std::size_t d = 0; d < deltas.size(); ++d) {
        ASSERT_GT(R[d], 0.0);
        lx.push_back(std::log(deltas[d]));
        ly.push_back(std::log(R[d]));
    }
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / lx.size();
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / ly.size();
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    EXPECT_GE(sxy / sxx, -0.5 - 0.2);
}

TEST(AugmentedMle, LinearSpdeIsUnbiasedAndIntervalsCover) {
    const auto K = bump_kernel();
    const auto p = linear_params();
    TorusGrid g(L, 500);
    const int reps = 200;
    double s = 0.0, s2 = 0.0;
    int cover = 0;
    for (int r = 0; r < reps; ++r) {
        const auto run = observed_run(p, g, 30.0, 6000, 5, 1.0, derive_seed(19, r), zero_initial_condition(g));
        const auto rep = confidence_intervals(augmented_mle(run.ms), K, p.sigma_A, 0.1);
        s += rep.D_hat;
        s2 += rep.D_hat * rep.D_hat;
        cover += rep.ci_plugin->contains(p.D_A) ? 1 : 0;
    }
    const double mean = s / reps;
    const double sd = std::sqrt((s2 / reps - mean * mean) * reps / (reps - 1.0));
    EXPECT_LT(std::fabs(mean - p.D_A), 2.0 * sd / std::sqrt(double(reps)));
    EXPECT_NEAR(cover / double(reps), 0.9, 3.0 * std::sqrt(0.09 / reps));
}

TEST(AugmentedMle, ScaleEquivariance) {
    const auto p = linear_params();
    TorusGrid g(L, 200);
    const auto run = observed_run(p, g, 5.0, 800, 4, 1.0, 5, zero_initial_condition(g));
    const double base = augmented_mle(run.ms).D_hat;
    for (double c : {1e-3, 0.5, 7.0, 1e4}) {
        auto ms = run.ms;
        for (double& v : ms.A_loc.data) v *= c;
        for (double& v : ms.A_lap.data) v *= c;
        EXPECT_NEAR(augmented_mle(ms).D_hat, base, 1e-12 * std::fabs(base));
    }
}

TEST(ConfidenceIntervals, ReferenceSampleHalfWidths) {
    // D_hat = 4.372e-2 at delta = 0.017 L, T = 30 with M(delta) = 30 channels.
    const auto K = bump_kernel();
    EstimateReport r;
    r.D_hat = 4.372e-2;
    r.fisher_info = 1.0;
    r.delta = 0.34;
    r.M = 30;
    r.T = 30.0;
    const auto r90 = confidence_intervals(r, K, 0.02, 0.1);
    const auto r95 = confidence_intervals(r, K, 0.02, 0.05);
    EXPECT_NEAR(r90.ci_plugin->half_width(), 0.162e-2, 0.0005e-2);
    EXPECT_NEAR(r95.ci_plugin->half_width(), 0.193e-2, 0.0005e-2);
}

TEST(ConfidenceIntervals, SymmetricAroundEstimateAndNested) {
    const auto K = bump_kernel();
    Rng rng(31);
    for (int t = 0; t < 200; ++t) {
        EstimateReport r;
        r.D_hat = 0.01 + 0.1 * rng.uniform();
        r.fisher_info = 1e3 + 1e6 * rng.uniform();
        r.delta = 0.1 + rng.uniform();
        r.M = 1 + t % 30;
        r.T = 1.0 + 50 * rng.uniform();
        r.martingale_free_qv_estimate = rng.uniform() * 1e-6;
        const auto a = confidence_intervals(r, K, std::nullopt, 0.1);
        const auto b = confidence_intervals(r, K, std::nullopt, 0.05);
        for (const auto& rep : {a, b}) {
            EXPECT_NEAR(rep.ci_plugin->center(), r.D_hat, 1e-15);
            EXPECT_NEAR(rep.ci_datadriven->center(), r.D_hat, 1e-15);
            EXPECT_TRUE(rep.ci_plugin->contains(r.D_hat));
            EXPECT_TRUE(rep.ci_datadriven->contains(r.D_hat));
        }
        EXPECT_LT(a.ci_plugin->half_width(), b.ci_plugin->half_width());
        EXPECT_LE(a.ci_datadriven->half_width(), b.ci_datadriven->half_width());
        EXPECT_TRUE(a.noise_scale_from_rv);
        EXPECT_NEAR(a.noise_scale, std::sqrt(r.martingale_free_qv_estimate / r.T), 1e-18);
    }
}

TEST(ConfidenceIntervals, AlphaNearOneGivesZeroWidth) {
    const auto K = bump_kernel();
    EstimateReport r;
    r.D_hat = 0.05;
    r.fisher_info = 10.0;
    r.delta = 1.0;
    r.M = 5;
    r.T = 30.0;
    const auto rep = confidence_intervals(r, K, 0.02, 1.0 - 1e-12);
    EXPECT_NEAR(rep.ci_plugin->half_width(), 0.0, 1e-12);
    EXPECT_NEAR(rep.ci_datadriven->half_width(), 0.0, 1e-12);
    EXPECT_THROW(confidence_intervals(r, K, 0.02, 1.0), ConfigError);
    EXPECT_THROW(confidence_intervals(r, K, 0.02, 0.0), ConfigError);
}

TEST(ConfidenceIntervals, DataDrivenWidthUsesKnownSigma) {
    const auto K = bump_kernel();
    EstimateReport r;
    r.D_hat = 0.05;
    r.fisher_info = 4.0e6;
    r.delta = 1.0;
    r.M = 5;
    r.T = 30.0;
    const auto rep = confidence_intervals(r, K, 0.02, 0.05);
    EXPECT_NEAR(rep.ci_datadriven->half_width(), 0.02 * K.norm() / 2000.0 * 1.959963984540054, 1e-15);
    EXPECT_FALSE(rep.noise_scale_from_rv);
}

TEST(ConfidenceIntervals, NegativeEstimateSuppressesPluginInterval) {
    const auto K = bump_kernel();
    const auto t = uniform_times(2, 2.0);
    const auto ms = set_from(t, 3, [](auto j, auto) { return 1.0 - 0.5 * j; }, [](auto, auto) { return 1.0; });
    const auto base = augmented_mle(ms);
    ASSERT_LT(base.D_hat, 0.0);
    EXPECT_NE(std::find(base.flags.begin(), base.flags.end(), "negative_estimate"), base.flags.end());
    const auto rep = confidence_intervals(base, K, std::nullopt, 0.1);
    EXPECT_FALSE(rep.ci_plugin.has_value());
    ASSERT_TRUE(rep.ci_datadriven.has_value());
    EXPECT_TRUE(rep.ci_datadriven->contains(rep.D_hat));
    EXPECT_NE(std::find(rep.flags.begin(), rep.flags.end(), "plugin_interval_undefined"), rep.flags.end());
}

TEST(RealizedVariation, ConstantPathsGiveZero) {
    const auto t = uniform_times(50, 5.0);
    const auto ms = set_from(t, 3, [](auto, auto k) { return 1.0 + k; }, [](auto, auto) { return 0.0; });
    EXPECT_EQ(realized_variation(ms), 0.0);
    MeasurementSet one;
    one.times = {0.0};
    one.A_loc = Matrix(1, 3);
    EXPECT_THROW(realized_variation(one), DataError);
}

TEST(RealizedVariation, BrownianChannelsRecoverVarianceRate) {
    const std::size_t n = 400, M = 4;
    const double T = 8.0, v = 0.37;
    const auto t = uniform_times(n, T);
    Rng rng(55);
    double acc = 0.0;
    const int reps = 500;
    for (int r = 0; r < reps; ++r) {
        std::vector<std::vector<double>> paths;
        for (std::size_t k = 0; k < M; ++k) paths.push_back(brownian(rng, n, T / n, v));
        const auto ms = set_from(t, M, [&](auto j, auto k) { return paths[k][j]; }, [](auto, auto) { return 1.0; });
        acc += realized_variation(ms) / (T * v);
    }
    EXPECT_NEAR(acc / reps, 1.0, 0.05);
}

TEST(RealizedVariation, SmoothPathScalesWithStep) {
    auto rv = [](std::size_t n) {
        const auto t = uniform_times(n, 4.0);
        const auto ms = set_from(t, 2, [&](auto j, auto k) { return std::sin(t[j] + k); }, [](auto, auto) { return 1.0; });
        return realized_variation(ms);
    };
    EXPECT_NEAR(rv(2000) / rv(1000), 0.5, 0.1);
    EXPECT_NEAR(rv(4000) / rv(2000), 0.5, 0.1);
}

TEST(FdLaplacian, CosineRowIsDiscreteEigenvector) {
    const std::size_t M = 40;
    const double h = L / M;
    const auto layout = MeasurementLayout::regular(M, L, 0.2);
    Matrix A(3, M);
    for (std::size_t j = 0; j < 3; ++j) {
        for (std::size_t k = 0; k < M; ++k) A(j, k) = (j + 1.0) * std::cos(2 * kPi * layout.centers[k] / L);
    }
    const auto lap = fd_laplacian_measurements(A, layout, L);
    const double lam = -(2.0 / (h * h)) * (1.0 - std::cos(2 * kPi * h / L));
    for (std::size_t j = 0; j < 3; ++j) {
        for (std::size_t k = 0; k < M; ++k) EXPECT_NEAR(lap(j, k), lam * A(j, k), 1e-12);
    }
}

TEST(FdLaplacian, ConstantRowsAndErrors) {
    const auto layout = MeasurementLayout::regular(10, L, 0.5);
    Matrix A(2, 10, 3.3);
    for (double v : fd_laplacian_measurements(A, layout, L).data) EXPECT_NEAR(v, 0.0, 1e-12);
    auto irregular = layout;
    irregular.centers[3] += 0.1;
    EXPECT_THROW(fd_laplacian_measurements(A, irregular, L), DataError);
    EXPECT_THROW(fd_laplacian_measurements(Matrix(2, 9), layout, L), DataError);
    EXPECT_THROW(fd_laplacian_measurements(Matrix(2, 2), MeasurementLayout::regular(2, L, 0.5), L), DataError);
}

TEST(FdLaplacian, TracksExactLaplacianWithOverlappingKernels) {
    // M = 100 channels at h = 0.2 on Meinhardt data. With delta = 1 (five channel spacings) the channel
    // second difference resolves the measured field; at delta = h/2 it does not and D_fd is biased upward.
    const auto p = default_params();
    TorusGrid g(L, 1000);
    double exact = 0.0, fd = 0.0, exact_half = 0.0, fd_half = 0.0;
    const int reps = 2;
    for (int r = 0; r < reps; ++r) {
        for (double delta : {1.0, 0.1}) {
            auto run = observed_run(p, g, 10.0, 6000, 100, delta, derive_seed(8, r), default_initial_condition(g, p));
            const double e = augmented_mle(run.ms).D_hat;
            run.ms.A_lap = fd_laplacian_measurements(run.ms.A_loc, run.ms.layout, L);
            const double f = augmented_mle(run.ms).D_hat;
            (delta == 1.0 ? exact : exact_half) += e / reps;
            (delta == 1.0 ? fd : fd_half) += f / reps;
        }
    }
    EXPECT_NEAR(fd / exact, 1.0, 0.15);
    EXPECT_GT(fd_half / exact_half, 1.5);
}

TEST(SpectralMle, SingleDecayingModeRecoversDiffusivity) {
    const double D = 0.05;
    const std::size_t M = 20, n = 20000;
    const double T = 10.0;
    const auto t = uniform_times(n, T);
    const auto layout = MeasurementLayout::regular(M, L, 0.5);
    const double lam = std::pow(2 * kPi / L, 2);
    for (int mode_phase = 0; mode_phase < 2; ++mode_phase) {
        Matrix A(n + 1, M);
        for (std::size_t j = 0; j <= n; ++j) {
            for (std::size_t k = 0; k < M; ++k) {
                const double ph = 2 * kPi * layout.centers[k] / L;
                A(j, k) = std::exp(-D * lam * t[j]) * (mode_phase == 0 ? std::cos(ph) : std::sin(ph));
            }
        }
        EXPECT_NEAR(spectral_mle(A, layout, t, 3, L) / D, 1.0, 0.01);
    }
}

TEST(SpectralMle, Errors) {
    const auto t = uniform_times(5, 1.0);
    const auto layout = MeasurementLayout::regular(8, L, 0.5);
    Matrix A(6, 8, 1.0);
    EXPECT_THROW(spectral_mle(A, layout, t, 4, L), ConfigError);
    EXPECT_THROW(spectral_mle(A, layout, t, 0, L), ConfigError);
    EXPECT_THROW(spectral_mle(A, layout, t, 2, L), DataError); // constant rows: no mode energy
    EXPECT_THROW(spectral_mle(Matrix(5, 8), layout, t, 2, L), DataError);
    EXPECT_EQ(default_spectral_modes(5), 1u);
    EXPECT_EQ(default_spectral_modes(100), 10u);
}

TEST(SpectralMle, AgreesWithAugmentedMleOnLinearDataWithManyChannels) {
    const auto p = linear_params();
    TorusGrid g(L, 500);
    double aug = 0.0, spec = 0.0;
    const int reps = 16;
    for (int r = 0; r < reps; ++r) {
        const auto run = observed_run(p, g, 30.0, 6000, 100, 0.5, derive_seed(23, r), zero_initial_condition(g));
        aug += augmented_mle(run.ms).D_hat / reps;
        spec += spectral_mle(run.ms.A_loc, run.ms.layout, run.ms.times, default_spectral_modes(100), L) / reps;
    }
    EXPECT_NEAR(spec / aug, 1.0, 0.10);
}

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "meinhardt/error.hpp"

namespace meinhardt {

namespace quadrature {

namespace detail {
template <class F>
double simpson_step(const F& f, double a, double b, double fa, double fm, double fb, double whole, double tol,
                    int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double diff = left + right - whole;
    if (depth <= 0 || std::fabs(diff) <= 15.0 * tol) return left + right + diff / 15.0;
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
} // namespace detail

/// Adaptive Simpson with Richardson correction. The interval is pre-split into `pieces` panels so
/// that narrow features are not missed by the first coarse estimate.
template <class F>
double adaptive_simpson(const F& f, double a, double b, double abs_tol = 1e-12, int pieces = 16) {
    double total = 0.0;
    const double h = (b - a) / pieces;
    for (int k = 0; k < pieces; ++k) {
        const double lo = a + k * h;
        const double hi = lo + h;
        const double flo = f(lo);
        const double fhi = f(hi);
        const double fm = f(0.5 * (lo + hi));
        const double whole = h / 6.0 * (flo + 4.0 * fm + fhi);
        total += detail::simpson_step(f, lo, hi, flo, fm, fhi, whole, abs_tol / pieces, 48);
    }
    return total;
}

} // namespace quadrature

/// Compactly supported point-spread profile on [-1, 1] together with the norms that enter the
/// estimator's asymptotic variance.
class Kernel {
public:
    using Profile = std::function<double(double)>;

    /// Builds a kernel from analytic profile and derivatives. All three must vanish outside [-1, 1].
    Kernel(std::string name, Profile k, Profile dk, Profile d2k, int oversample_factor = 10)
        : name_(std::move(name)), k_(std::move(k)), dk_(std::move(dk)), d2k_(std::move(d2k)),
          oversample_(oversample_factor) {
        if (oversample_ < 1) throw ConfigError("kernel oversample factor must be >= 1");
        compute_norms();
    }

    /// Kernel from equally spaced samples on [-1, 1] (endpoints included, both zero). The profile is
    /// interpolated linearly; first and second derivatives come from fourth-order central differences
    /// of the table.
    static Kernel from_samples(std::string name, std::vector<double> samples, int oversample_factor = 10) {
        if (samples.size() < 9) throw ConfigError("sampled kernel needs at least 9 samples");
        if (std::fabs(samples.front()) > 1e-12 || std::fabs(samples.back()) > 1e-12) {
            throw ConfigError("sampled kernel must vanish at +-1");
        }
        if (oversample_factor < 10) throw ConfigError("sampled kernels need oversample factor >= 10");
        auto table = std::make_shared<const Table>(std::move(samples));
        return Kernel(std::move(name), [table](double x) { return table->value(x); },
                      [table](double x) { return table->first(x); },
                      [table](double x) { return table->second(x); }, oversample_factor);
    }

    const std::string& name() const noexcept { return name_; }
    int oversample_factor() const noexcept { return oversample_; }

    double operator()(double x) const { return std::fabs(x) >= 1.0 ? 0.0 : k_(x); }
    double derivative(double x) const { return std::fabs(x) >= 1.0 ? 0.0 : dk_(x); }
    double second_derivative(double x) const { return std::fabs(x) >= 1.0 ? 0.0 : d2k_(x); }

    double norm() const noexcept { return norm_K_; }      // ||K||_{L2}
    double norm_derivative() const noexcept { return norm_dK_; }  // ||K'||_{L2}
    double sigma() const noexcept { return sigma_; }      // 2 ||K||^2 / ||K'||^2
    double integral() const noexcept { return integral_; }
    double l1_norm() const noexcept { return l1_; }

private:
    struct Table {
        std::vector<double> v;
        double h;
        explicit Table(std::vector<double> s) : v(std::move(s)), h(2.0 / static_cast<double>(v.size() - 1)) {}

        double at(long i) const {
            if (i < 0 || i >= static_cast<long>(v.size())) return 0.0;
            return v[static_cast<std::size_t>(i)];
        }
        template <class G>
        double interp(double x, G&& g) const {
            const double s = (x + 1.0) / h;
            const long i = static_cast<long>(std::floor(s));
            const double w = s - static_cast<double>(i);
            return (1.0 - w) * g(i) + w * g(i + 1);
        }
        double value(double x) const {
            return interp(x, [&](long i) { return at(i); });
        }
        double first(double x) const {
            return interp(x, [&](long i) {
                return (-at(i + 2) + 8.0 * at(i + 1) - 8.0 * at(i - 1) + at(i - 2)) / (12.0 * h);
            });
        }
        double second(double x) const {
            return interp(x, [&](long i) {
                return (-at(i + 2) + 16.0 * at(i + 1) - 30.0 * at(i) + 16.0 * at(i - 1) - at(i - 2)) /
                       (12.0 * h * h);
            });
        }
    };

    // The bump peaks at e^-10, so tolerances are taken relative to a coarse first pass.
    template <class F>
    static double integrate_relative(const F& f) {
        double coarse = 0.0;
        constexpr int n = 512;
        for (int i = 0; i < n; ++i) coarse += std::fabs(f(-1.0 + (i + 0.5) * 2.0 / n));
        coarse *= 2.0 / n;
        return quadrature::adaptive_simpson(f, -1.0, 1.0, std::max(1e-300, 1e-12 * coarse));
    }

    void compute_norms() {
        const double k2 = integrate_relative([&](double x) { const double v = (*this)(x); return v * v; });
        const double dk2 = integrate_relative([&](double x) { const double v = derivative(x); return v * v; });
        integral_ = integrate_relative([&](double x) { return (*this)(x); });
        l1_ = integrate_relative([&](double x) { return std::fabs((*this)(x)); });
        if (!(dk2 > 0.0)) throw ConfigError("kernel derivative has zero L2 norm");
        norm_K_ = std::sqrt(k2);
        norm_dK_ = std::sqrt(dk2);
        sigma_ = 2.0 * k2 / dk2;
    }

    std::string name_;
    Profile k_, dk_, d2k_;
    int oversample_;
    double norm_K_ = 0.0, norm_dK_ = 0.0, sigma_ = 0.0, integral_ = 0.0, l1_ = 0.0;
};

/// K(x) = exp(-10 / (1 - x^2)) on (-1, 1), zero elsewhere, with closed-form derivatives.
inline Kernel bump_kernel() {
    auto k = [](double x) {
        const double q = 1.0 - x * x;
        return q <= 0.0 ? 0.0 : std::exp(-10.0 / q);
    };
    auto dk = [k](double x) {
        const double q = 1.0 - x * x;
        return q <= 0.0 ? 0.0 : k(x) * (-20.0 * x / (q * q));
    };
    auto d2k = [k](double x) {
        const double q = 1.0 - x * x;
        if (q <= 0.0) return 0.0;
        const double g1 = -20.0 * x / (q * q);
        const double g2 = -20.0 * (1.0 + 3.0 * x * x) / (q * q * q);
        return k(x) * (g1 * g1 + g2);
    };
    return Kernel("bump", k, dk, d2k);
}

inline Kernel kernel_by_name(const std::string& name) {
    if (name == "bump") return bump_kernel();
    throw ConfigError("unknown kernel '" + name + "' (available: bump)");
}

} // namespace meinhardt

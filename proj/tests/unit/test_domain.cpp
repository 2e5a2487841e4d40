#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "meinhardt/grid.hpp"

using namespace meinhardt;

namespace {
constexpr double kPi = std::numbers::pi;

std::vector<double> sample(const TorusGrid& g, auto&& f) {
    std::vector<double> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) v[i] = f(g.coordinate(i));
    return v;
}
} // namespace

TEST(TorusGrid, SpacingTimesPointsIsLength) {
    for (std::size_t m : {1u, 3u, 7u, 500u, 2000u, 4097u}) {
        for (double L : {1.0, 20.0, 3.7}) {
            TorusGrid g(L, m);
            EXPECT_NEAR(g.dx() * static_cast<double>(m) / L, 1.0, 1e-12);
        }
    }
}

TEST(TorusGrid, CoordinatesAreMultiplesOfDx) {
    TorusGrid g(20.0, 500);
    EXPECT_DOUBLE_EQ(g.coordinate(0), 0.0);
    EXPECT_DOUBLE_EQ(g.coordinate(250), 10.0);
    EXPECT_NEAR(g.coordinate(499), 20.0 - 0.04, 1e-12);
}

TEST(TorusGrid, RejectsBadConstruction) {
    EXPECT_THROW(TorusGrid(0.0, 10), ConfigError);
    EXPECT_THROW(TorusGrid(-1.0, 10), ConfigError);
    EXPECT_THROW(TorusGrid(NAN, 10), ConfigError);
    EXPECT_THROW(TorusGrid(20.0, 0), ConfigError);
}

TEST(TorusGrid, CanonicalMapsIntoHalfOpenPeriod) {
    TorusGrid g(20.0, 10);
    EXPECT_DOUBLE_EQ(g.canonical(-1.0), 19.0);
    EXPECT_DOUBLE_EQ(g.canonical(20.0), 0.0);
    EXPECT_DOUBLE_EQ(g.canonical(45.0), 5.0);
    EXPECT_DOUBLE_EQ(g.canonical(3.0), 3.0);
    EXPECT_GE(g.canonical(-1e-18), 0.0);
    EXPECT_LT(g.canonical(-1e-18), 20.0);
}

TEST(WrapIndex, Examples) {
    TorusGrid g(20.0, 10);
    EXPECT_EQ(wrap_index(-1, g), 9u);
    EXPECT_EQ(wrap_index(10, g), 0u);
    EXPECT_EQ(wrap_index(3, g), 3u);
    EXPECT_EQ(wrap_index(-21, g), 9u);
}

TEST(WrapIndex, PeriodicInShiftByM) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long long> pick(-100000, 100000);
    for (int t = 0; t < 1000; ++t) {
        const std::size_t m = 1 + static_cast<std::size_t>(rng() % 97);
        TorusGrid g(1.0, m);
        const long long i = pick(rng);
        const auto w = wrap_index(i, g);
        EXPECT_LT(w, m);
        EXPECT_EQ(wrap_index(i + static_cast<long long>(m), g), w);
        EXPECT_EQ(static_cast<long long>(w) % static_cast<long long>(m),
                  ((i % static_cast<long long>(m)) + static_cast<long long>(m)) % static_cast<long long>(m));
    }
}

TEST(PeriodicDistance, Examples) {
    TorusGrid g(20.0, 100);
    EXPECT_DOUBLE_EQ(periodic_distance(0.0, 19.0, g), 1.0);
    EXPECT_DOUBLE_EQ(periodic_distance(5.0, 5.0, g), 0.0);
    EXPECT_DOUBLE_EQ(periodic_distance(0.0, 10.0, g), 10.0);
}

TEST(PeriodicDistance, SymmetricAndBounded) {
    TorusGrid g(20.0, 100);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 20.0);
    for (int t = 0; t < 2000; ++t) {
        const double x = u(rng), y = u(rng);
        const double d = periodic_distance(x, y, g);
        EXPECT_GE(d, 0.0);
        EXPECT_LE(d, 10.0);
        EXPECT_DOUBLE_EQ(d, periodic_distance(y, x, g));
        EXPECT_NEAR(d, std::min(std::fabs(x - y), 20.0 - std::fabs(x - y)), 1e-12);
        EXPECT_NEAR(std::fabs(periodic_offset(x, y, g)), d, 1e-12);
    }
}

TEST(PeriodicOffset, SignedAndWrapped) {
    TorusGrid g(20.0, 100);
    EXPECT_DOUBLE_EQ(periodic_offset(19.0, 0.0, g), -1.0);
    EXPECT_DOUBLE_EQ(periodic_offset(0.0, 19.0, g), 1.0);
    EXPECT_DOUBLE_EQ(periodic_offset(3.0, 1.0, g), 2.0);
}

TEST(Integrate, ConstantGivesLength) {
    TorusGrid g(20.0, 333);
    std::vector<double> one(g.size(), 1.0);
    EXPECT_NEAR(integrate(one, g), 20.0, 1e-12);
}

TEST(Integrate, FullPeriodCosineVanishes) {
    TorusGrid g(20.0, 500);
    const auto v = sample(g, [](double x) { return std::cos(2.0 * kPi * x / 20.0); });
    EXPECT_NEAR(integrate(v, g), 0.0, 1e-10);
}

TEST(Integrate, CosineSquaredIsHalfLength) {
    for (std::size_t m : {64u, 100u, 1000u}) {
        TorusGrid g(20.0, m);
        const auto v = sample(g, [](double x) { return std::pow(std::cos(2.0 * kPi * x / 20.0), 2); });
        EXPECT_NEAR(integrate(v, g), 10.0, 1e-8) << "m = " << m;
    }
}

TEST(Integrate, LengthMismatchThrows) {
    TorusGrid g(20.0, 10);
    std::vector<double> v(9, 1.0);
    EXPECT_THROW(integrate(v, g), ConfigError);
}

TEST(Integrate, Linear) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n;
    TorusGrid g(20.0, 257);
    for (int t = 0; t < 50; ++t) {
        std::vector<double> u(g.size()), v(g.size()), w(g.size());
        const double a = n(rng), b = n(rng);
        for (std::size_t i = 0; i < g.size(); ++i) {
            u[i] = n(rng);
            v[i] = n(rng);
            w[i] = a * u[i] + b * v[i];
        }
        const double lhs = integrate(w, g);
        const double rhs = a * integrate(u, g) + b * integrate(v, g);
        EXPECT_NEAR(lhs, rhs, 1e-11 * (1.0 + std::fabs(lhs)));
    }
}

TEST(Integrate, EveryNonzeroFourierModeVanishes) {
    for (std::size_t m : {16u, 63u, 128u}) {
        TorusGrid g(20.0, m);
        for (std::size_t k = 1; k < m; ++k) {
            const auto c = sample(g, [&](double x) { return std::cos(2.0 * kPi * static_cast<double>(k) * x / 20.0); });
            const auto s = sample(g, [&](double x) { return std::sin(2.0 * kPi * static_cast<double>(k) * x / 20.0); });
            EXPECT_NEAR(integrate(c, g), 0.0, 1e-11) << "m=" << m << " k=" << k;
            EXPECT_NEAR(integrate(s, g), 0.0, 1e-11) << "m=" << m << " k=" << k;
        }
    }
}

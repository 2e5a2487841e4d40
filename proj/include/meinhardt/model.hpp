#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "meinhardt/error.hpp"
#include "meinhardt/grid.hpp"

namespace meinhardt {

/// How the concentration pair enters the Michaelis-Menten denominator of f_A.
///
/// Inhibitor uses zeta_I + |I| (Meinhardt's original two-variable form). L1 and L2
/// use |A| + |I| and sqrt(A^2 + I^2). With either full-pair norm the autocatalytic
/// term A^2 / (zeta_I + |y|) can never exceed r_A * A, so no pattern forms.
enum class ConcentrationNorm { Inhibitor, L1, L2 };

inline std::string to_string(ConcentrationNorm n) {
    switch (n) {
    case ConcentrationNorm::Inhibitor: return "inhibitor";
    case ConcentrationNorm::L1: return "l1";
    case ConcentrationNorm::L2: return "l2";
    }
    return "inhibitor";
}

inline ConcentrationNorm parse_norm(const std::string& s) {
    if (s == "inhibitor") return ConcentrationNorm::Inhibitor;
    if (s == "l1") return ConcentrationNorm::L1;
    if (s == "l2") return ConcentrationNorm::L2;
    throw ConfigError("unknown concentration norm '" + s + "' (expected inhibitor, l1 or l2)");
}

struct ModelParams {
    double D_A = 4.415e-2;
    double D_I = 9.768e-2;
    double r_A = 2.393e-1;
    double r_I = 2.378e-1;
    double b_A = 2.776e-1;
    double b_I = 2.076e-1;
    double zeta_A = 5.647e-3;
    double zeta_I = 3.397e-1;
    double a = 1.280e-2;
    double sigma_A = 2e-2;
    double sigma_I = 0.0;
    ConcentrationNorm norm = ConcentrationNorm::Inhibitor;
    // Drops f_A entirely; used for the linear stochastic heat equation scenario.
    bool linear_activator = false;

    /// Throws on hard violations. Returns warnings for soft ones (e.g. D_I <= D_A).
    std::vector<std::string> validate() const {
        const std::array<std::pair<const char*, double>, 8> positive{{{"D_A", D_A},
                                                                      {"D_I", D_I},
                                                                      {"r_A", r_A},
                                                                      {"r_I", r_I},
                                                                      {"b_A", b_A},
                                                                      {"b_I", b_I},
                                                                      {"zeta_A", zeta_A},
                                                                      {"zeta_I", zeta_I}}};
        for (const auto& [name, v] : positive) {
            if (!(v > 0.0) || !std::isfinite(v)) {
                throw ConfigError(std::string(name) + " must be positive and finite");
            }
        }
        if (!(a >= 0.0 && a < 1.0)) throw ConfigError("signal strength a must lie in [0, 1)");
        if (!(sigma_A >= 0.0) || !std::isfinite(sigma_A)) throw ConfigError("sigma_A must be >= 0");
        if (!(sigma_I >= 0.0) || !std::isfinite(sigma_I)) throw ConfigError("sigma_I must be >= 0");
        std::vector<std::string> warnings;
        if (!(D_I > D_A)) {
            warnings.emplace_back("D_I <= D_A: configuration is not Meinhardt-like");
        }
        return warnings;
    }

    friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// Coefficients fitted to averaged repolarisation data.
inline ModelParams default_params() { return ModelParams{}; }

/// Activator and inhibitor on the grid at one instant.
struct FieldPair {
    std::vector<double> activator;
    std::vector<double> inhibitor;
    double time = 0.0;

    bool has_negative() const noexcept {
        auto neg = [](double v) { return v < 0.0; };
        return std::any_of(activator.begin(), activator.end(), neg) ||
               std::any_of(inhibitor.begin(), inhibitor.end(), neg);
    }

    bool all_finite() const noexcept {
        auto fin = [](double v) { return std::isfinite(v); };
        return std::all_of(activator.begin(), activator.end(), fin) &&
               std::all_of(inhibitor.begin(), inhibitor.end(), fin);
    }

    void check_against(const TorusGrid& grid) const {
        if (activator.size() != grid.size() || inhibitor.size() != grid.size()) {
            throw ConfigError("field pair does not match grid size " + std::to_string(grid.size()));
        }
    }
};

/// Extracellular signal 1 + a cos(2 pi (x/L + 1/2)); lowest at x = 0, highest at x = L/2.
inline double signal_zeta(double x, const ModelParams& p, double L) noexcept {
    return 1.0 + p.a * std::cos(2.0 * std::numbers::pi * (x / L + 0.5));
}

inline double concentration_norm(double y1, double y2, ConcentrationNorm n) noexcept {
    switch (n) {
    case ConcentrationNorm::Inhibitor: return std::fabs(y2);
    case ConcentrationNorm::L1: return std::fabs(y1) + std::fabs(y2);
    case ConcentrationNorm::L2: return std::hypot(y1, y2);
    }
    return std::fabs(y2);
}

namespace detail {
inline void require_finite(double y1, double y2, const char* who) {
    if (!std::isfinite(y1) || !std::isfinite(y2)) {
        throw NumericError(std::string(who) + ": non-finite concentration");
    }
}
} // namespace detail

/// Activator reaction term with the signal value zeta(x) already evaluated.
inline double f_A_with_signal(double y1, double y2, double zeta, const ModelParams& p) noexcept {
    const double sq = y1 * y1;
    return p.r_A * zeta * (p.b_A + sq) /
               ((p.zeta_I + concentration_norm(y1, y2, p.norm)) * (1.0 + p.zeta_A * sq)) -
           p.r_A * y1;
}

inline double f_A(double y1, double y2, double x, const ModelParams& p, double L) {
    detail::require_finite(y1, y2, "f_A");
    return f_A_with_signal(y1, y2, signal_zeta(x, p, L), p);
}

inline double f_I(double y1, double y2, const ModelParams& p) {
    detail::require_finite(y1, y2, "f_I");
    return p.b_I * y1 - p.r_I * y2;
}

/// Polarised start with the activator peak at the rear (x = 0):
///   A0(x) = baseline + peak_height * (1 + cos(2 pi x / L)) / 2,  I0 = (b_I / r_I) A0.
inline FieldPair default_initial_condition(const TorusGrid& grid, const ModelParams& p,
                                           double peak_height = 2.0, double baseline = 0.8) {
    if (!(peak_height > 0.0)) throw ConfigError("peak_height must be positive");
    if (!(baseline >= 0.0)) throw ConfigError("baseline must be non-negative");
    FieldPair s;
    s.activator.resize(grid.size());
    s.inhibitor.resize(grid.size());
    const double ratio = p.b_I / p.r_I;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid.coordinate(i);
        const double a0 =
            baseline + peak_height * 0.5 * (1.0 + std::cos(2.0 * std::numbers::pi * x / grid.length()));
        s.activator[i] = a0;
        s.inhibitor[i] = ratio * a0;
    }
    return s;
}

/// Zero activator and inhibitor.
inline FieldPair zero_initial_condition(const TorusGrid& grid) {
    FieldPair s;
    s.activator.assign(grid.size(), 0.0);
    s.inhibitor.assign(grid.size(), 0.0);
    return s;
}

// ---- flat key = value parameter files -------------------------------------------------

/// Parses "key = value" lines; '#' starts a comment. Later keys override earlier ones.
inline std::map<std::string, std::string> parse_key_values(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) return std::string{};
        const auto e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        }
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

inline double parse_double(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &used);
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': '" + value + "' is not a number");
    }
    if (used != value.size()) throw ConfigError("key '" + key + "': trailing characters in '" + value + "'");
    return v;
}

namespace detail {
template <class F>
void for_each_param_field(ModelParams& p, F&& f) {
    f("D_A", p.D_A);
    f("D_I", p.D_I);
    f("r_A", p.r_A);
    f("r_I", p.r_I);
    f("b_A", p.b_A);
    f("b_I", p.b_I);
    f("zeta_A", p.zeta_A);
    f("zeta_I", p.zeta_I);
    f("a", p.a);
    f("sigma_A", p.sigma_A);
    f("sigma_I", p.sigma_I);
}
} // namespace detail

/// Overlays recognised keys onto `base`. Unknown keys are left for other consumers.
inline ModelParams params_from_key_values(const std::map<std::string, std::string>& kv,
                                          ModelParams base = default_params()) {
    detail::for_each_param_field(base, [&](const char* key, double& field) {
        if (auto it = kv.find(key); it != kv.end()) field = parse_double(key, it->second);
    });
    if (auto it = kv.find("norm"); it != kv.end()) base.norm = parse_norm(it->second);
    return base;
}

inline void write_params(std::ostream& out, ModelParams p) {
    std::ostringstream buf;
    buf.precision(17);
    detail::for_each_param_field(p, [&](const char* key, double& field) { buf << key << " = " << field << '\n'; });
    buf << "norm = " << to_string(p.norm) << '\n';
    out << buf.str();
}

} // namespace meinhardt

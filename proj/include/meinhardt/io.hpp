#pragma once

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <charconv>
#include <cstdlib>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "meinhardt/error.hpp"
#include "meinhardt/estimator.hpp"
#include "meinhardt/experiments.hpp"
#include "meinhardt/measurement.hpp"
#include "meinhardt/model.hpp"
#include "meinhardt/solver.hpp"

namespace meinhardt {

inline constexpr const char* kVersion = "0.3.0";

class EmptyFileError : public DataError {
public:
    using DataError::DataError;
};
class RaggedRowsError : public DataError {
public:
    using DataError::DataError;
};
class NonNumericCellError : public DataError {
public:
    using DataError::DataError;
};

namespace io {

using json = nlohmann::ordered_json;

/// Shortest text that reads back to the same double.
inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
    return out;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_json(const std::filesystem::path& path, const json& j) {
    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

inline json read_json(const std::filesystem::path& path) {
    try {
        return json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw DataError("'" + path.string() + "': " + e.what());
    }
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        const auto b = cell.find_first_not_of(" \t\r");
        const auto e = cell.find_last_not_of(" \t\r");
        cells.push_back(b == std::string::npos ? std::string{} : cell.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

inline std::optional<double> try_parse(const std::string& s) {
    if (s.empty() || std::isspace(static_cast<unsigned char>(s[0]))) return std::nullopt;
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) return std::nullopt;
    // ERANGE on underflow still returns the (subnormal) value; only overflow is rejected
    if (errno == ERANGE && std::isinf(v)) return std::nullopt;
    return v;
}

/// Header-keyed CSV table (string cells).
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(const std::string& name) const {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw DataError("CSV has no column '" + name + "'");
        return static_cast<std::size_t>(it - header.begin());
    }
    double number(std::size_t row, std::size_t col) const {
        const auto v = try_parse(rows.at(row).at(col));
        if (!v) throw NonNumericCellError("cell '" + rows[row][col] + "' is not numeric");
        return *v;
    }
};

inline Table read_table(const std::filesystem::path& path) {
    std::istringstream in(read_file(path));
    std::string line;
    Table t;
    if (!std::getline(in, line)) throw EmptyFileError("'" + path.string() + "' is empty");
    t.header = split_csv_line(line);
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        auto cells = split_csv_line(line);
        if (cells.size() != t.header.size()) throw RaggedRowsError("'" + path.string() + "': ragged row");
        t.rows.push_back(std::move(cells));
    }
    return t;
}

// ---- model / solver metadata ------------------------------------------------------------

inline json to_json(const ModelParams& p) {
    json j;
    j["D_A"] = p.D_A;
    j["D_I"] = p.D_I;
    j["r_A"] = p.r_A;
    j["r_I"] = p.r_I;
    j["b_A"] = p.b_A;
    j["b_I"] = p.b_I;
    j["zeta_A"] = p.zeta_A;
    j["zeta_I"] = p.zeta_I;
    j["a"] = p.a;
    j["sigma_A"] = p.sigma_A;
    j["sigma_I"] = p.sigma_I;
    j["norm"] = to_string(p.norm);
    j["linear_activator"] = p.linear_activator;
    return j;
}

inline json to_json(const SolverConfig& c) {
    json j;
    j["T"] = c.T;
    j["n_steps"] = c.n_steps;
    j["dt"] = c.dt();
    j["scheme"] = to_string(c.scheme);
    j["seed"] = c.seed;
    j["record_stride"] = c.record_stride;
    return j;
}

// ---- trajectory heatmaps -----------------------------------------------------------------

/// One row per recorded time: t followed by the grid values. Header: "t" then x-coordinates.
inline void write_heatmap(const std::filesystem::path& path, const Trajectory& traj, bool inhibitor = false) {
    std::ostringstream os;
    os << "t";
    for (std::size_t i = 0; i < traj.grid.size(); ++i) os << ',' << format_double(traj.grid.coordinate(i));
    os << '\n';
    for (std::size_t r = 0; r < traj.states.size(); ++r) {
        os << format_double(traj.times[r]);
        const auto& v = inhibitor ? traj.states[r].inhibitor : traj.states[r].activator;
        for (double x : v) os << ',' << format_double(x);
        os << '\n';
    }
    auto out = open_out(path);
    out << os.str();
}

inline json trajectory_metadata(const Trajectory& traj) {
    json j;
    j["L"] = traj.grid.length();
    j["m"] = traj.grid.size();
    j["params"] = to_json(traj.params);
    j["config"] = to_json(traj.config);
    j["seed"] = traj.config.seed;
    j["discarded"] = traj.discarded;
    j["first_negative_step"] = traj.first_negative_step ? json(*traj.first_negative_step) : json(nullptr);
    j["frames"] = traj.states.size();
    return j;
}

/// Writes <stem>_A.csv, <stem>_I.csv and <stem>_meta.json into `dir`.
inline void export_trajectory(const std::filesystem::path& dir, const std::string& stem, const Trajectory& traj) {
    write_heatmap(dir / (stem + "_A.csv"), traj, false);
    write_heatmap(dir / (stem + "_I.csv"), traj, true);
    write_json(dir / (stem + "_meta.json"), trajectory_metadata(traj));
}

struct Heatmap {
    std::vector<double> x;
    std::vector<double> t;
    Matrix values; // rows = times
};

inline Heatmap read_heatmap(const std::filesystem::path& path) {
    std::istringstream in(read_file(path));
    std::string line;
    Heatmap h;
    if (!std::getline(in, line)) throw EmptyFileError("'" + path.string() + "' is empty");
    const auto header = split_csv_line(line);
    for (std::size_t i = 1; i < header.size(); ++i) {
        const auto v = try_parse(header[i]);
        if (!v) throw NonNumericCellError("heatmap header cell '" + header[i] + "' is not numeric");
        h.x.push_back(*v);
    }
    h.values = Matrix(0, h.x.size());
    std::vector<double> row;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != h.x.size() + 1) throw RaggedRowsError("heatmap row has wrong number of cells");
        row.clear();
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const auto v = try_parse(cells[i]);
            if (!v) throw NonNumericCellError("heatmap cell '" + cells[i] + "' is not numeric");
            if (i == 0) {
                h.t.push_back(*v);
            } else {
                row.push_back(*v);
            }
        }
        h.values.append_row(row);
    }
    return h;
}

/// Rebuilds a trajectory (activator and inhibitor heatmaps plus metadata) written by export_trajectory.
inline Trajectory import_trajectory(const std::filesystem::path& dir, const std::string& stem) {
    const auto meta = read_json(dir / (stem + "_meta.json"));
    const auto hA = read_heatmap(dir / (stem + "_A.csv"));
    const auto hI = read_heatmap(dir / (stem + "_I.csv"));
    if (hA.values.rows != hI.values.rows || hA.values.cols != hI.values.cols) {
        throw DataError("activator and inhibitor heatmaps differ in shape");
    }
    Trajectory traj;
    traj.grid = TorusGrid(meta.at("L").get<double>(), meta.at("m").get<std::size_t>());
    if (hA.values.cols != traj.grid.size()) throw DataError("heatmap width does not match metadata m");
    const auto& pj = meta.at("params");
    std::map<std::string, std::string> kv;
    for (auto it = pj.begin(); it != pj.end(); ++it) {
        if (it.value().is_number()) kv[it.key()] = format_double(it.value().get<double>());
    }
    traj.params = params_from_key_values(kv);
    traj.params.norm = parse_norm(pj.value("norm", std::string("inhibitor")));
    traj.params.linear_activator = pj.value("linear_activator", false);
    const auto& cj = meta.at("config");
    traj.config.T = cj.at("T").get<double>();
    traj.config.n_steps = cj.at("n_steps").get<std::size_t>();
    traj.config.scheme = parse_scheme(cj.at("scheme").get<std::string>());
    traj.config.seed = cj.at("seed").get<std::uint64_t>();
    traj.config.record_stride = cj.at("record_stride").get<std::size_t>();
    traj.discarded = meta.at("discarded").get<bool>();
    traj.times = hA.t;
    for (std::size_t r = 0; r < hA.values.rows; ++r) {
        FieldPair s;
        s.time = hA.t[r];
        s.activator.assign(hA.values.data.begin() + static_cast<std::ptrdiff_t>(r * hA.values.cols),
                           hA.values.data.begin() + static_cast<std::ptrdiff_t>((r + 1) * hA.values.cols));
        s.inhibitor.assign(hI.values.data.begin() + static_cast<std::ptrdiff_t>(r * hI.values.cols),
                           hI.values.data.begin() + static_cast<std::ptrdiff_t>((r + 1) * hI.values.cols));
        traj.states.push_back(std::move(s));
    }
    return traj;
}

// ---- measurement sets ----------------------------------------------------------------------

inline json measurement_metadata(const MeasurementSet& ms) {
    json j;
    j["delta"] = ms.layout.delta;
    j["M"] = ms.M();
    j["L"] = ms.L;
    j["kernel"] = ms.kernel_name;
    j["kernel_norm"] = ms.kernel_norm;
    j["kernel_norm_derivative"] = ms.kernel_norm_derivative;
    j["laplacian_mode"] = to_string(ms.laplacian_mode);
    j["centers"] = ms.layout.centers;
    j["N"] = ms.times.empty() ? 0 : ms.times.size() - 1;
    return j;
}

/// Long format "t,k,A_loc,A_lap" (A_lap left blank when absent) plus a JSON sidecar.
inline void export_measurements(const std::filesystem::path& csv_path, const MeasurementSet& ms) {
    ms.check_shapes();
    std::ostringstream os;
    os << "t,k,A_loc,A_lap\n";
    for (std::size_t j = 0; j < ms.times.size(); ++j) {
        for (std::size_t k = 0; k < ms.M(); ++k) {
            os << format_double(ms.times[j]) << ',' << k << ',' << format_double(ms.A_loc(j, k)) << ',';
            if (ms.has_laplacian()) os << format_double(ms.A_lap(j, k));
            os << '\n';
        }
    }
    auto out = open_out(csv_path);
    out << os.str();
    auto meta = csv_path;
    meta.replace_extension(".meta.json");
    write_json(meta, measurement_metadata(ms));
}

inline MeasurementSet import_measurements(const std::filesystem::path& csv_path) {
    std::istringstream in(read_file(csv_path));
    std::string line;
    if (!std::getline(in, line)) throw EmptyFileError("'" + csv_path.string() + "' is empty");
    const auto header = split_csv_line(line);
    if (header.size() < 3 || header[0] != "t" || header[1] != "k" || header[2] != "A_loc") {
        throw DataError("measurement CSV must start with header t,k,A_loc[,A_lap]");
    }
    struct Entry {
        double t;
        std::size_t k;
        double loc;
        std::optional<double> lap;
    };
    std::vector<Entry> entries;
    std::size_t max_k = 0;
    bool any_lap = false, all_lap = true;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        auto cells = split_csv_line(line);
        if (cells.size() != header.size()) {
            throw RaggedRowsError("line " + std::to_string(lineno) + ": expected " + std::to_string(header.size()) +
                                  " cells");
        }
        Entry e{};
        const auto t = try_parse(cells[0]);
        const auto k = try_parse(cells[1]);
        const auto loc = try_parse(cells[2]);
        if (!t || !k || !loc || *k < 0) throw NonNumericCellError("line " + std::to_string(lineno) + ": bad numeric cell");
        e.t = *t;
        e.k = static_cast<std::size_t>(*k);
        e.loc = *loc;
        if (cells.size() > 3 && !cells[3].empty()) {
            const auto lap = try_parse(cells[3]);
            if (!lap) throw NonNumericCellError("line " + std::to_string(lineno) + ": bad A_lap cell");
            e.lap = *lap;
        }
        any_lap |= e.lap.has_value();
        all_lap &= e.lap.has_value();
        max_k = std::max(max_k, e.k);
        entries.push_back(e);
    }
    if (entries.empty()) throw EmptyFileError("'" + csv_path.string() + "' has no data rows");
    if (any_lap && !all_lap) throw DataError("A_lap column is only partially filled");
    const std::size_t M = max_k + 1;
    if (entries.size() % M != 0) throw RaggedRowsError("measurement rows do not form a full times x channels grid");
    MeasurementSet ms;
    const std::size_t rows = entries.size() / M;
    ms.A_loc = Matrix(rows, M);
    if (any_lap) ms.A_lap = Matrix(rows, M);
    for (std::size_t j = 0; j < rows; ++j) {
        ms.times.push_back(entries[j * M].t);
        for (std::size_t k = 0; k < M; ++k) {
            const auto& e = entries[j * M + k];
            if (e.k != k || e.t != ms.times.back()) throw DataError("measurement rows must be ordered by (t, k)");
            ms.A_loc(j, k) = e.loc;
            if (any_lap) ms.A_lap(j, k) = *e.lap;
        }
    }
    auto meta_path = csv_path;
    meta_path.replace_extension(".meta.json");
    if (std::filesystem::exists(meta_path)) {
        const auto meta = read_json(meta_path);
        ms.L = meta.value("L", 20.0);
        ms.layout.delta = meta.value("delta", ms.L / (2.0 * static_cast<double>(M)));
        if (meta.contains("centers")) {
            ms.layout.centers = meta["centers"].get<std::vector<double>>();
        } else {
            ms.layout = MeasurementLayout::regular(M, ms.L, ms.layout.delta);
        }
        ms.kernel_name = meta.value("kernel", std::string("bump"));
        ms.kernel_norm = meta.value("kernel_norm", 0.0);
        ms.kernel_norm_derivative = meta.value("kernel_norm_derivative", 0.0);
        ms.laplacian_mode = parse_laplacian_mode(meta.value("laplacian_mode", std::string("analytic")));
    } else {
        ms.layout = MeasurementLayout::regular(M, ms.L, ms.L / (2.0 * static_cast<double>(M)));
    }
    if (ms.layout.M() != M) throw DataError("metadata center count does not match CSV channels");
    return ms;
}

// ---- external data ----------------------------------------------------------------------------

/// Rectangular (N+1) x M matrix of local measurements from an external source.
struct ExternalDataset {
    std::size_t M = 0;
    std::size_t N = 0;
    double L = 20.0;
    double frame_dt = 1.0;
    Matrix values;
    std::vector<double> x_positions; // from the header, when present
};

/// Reads a rectangular numeric CSV. A first row is treated as a header of x positions when
/// `header` is set, or automatically when any of its cells is non-numeric. Header cells may be
/// plain numbers or "x=<number>".
inline ExternalDataset ingest_csv(const std::filesystem::path& path, double L = 20.0, double frame_dt = 1.0,
                                  bool header = false) {
    if (!std::filesystem::exists(path)) throw DataError("'" + path.string() + "' does not exist");
    std::istringstream in(read_file(path));
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        rows.push_back(split_csv_line(line));
    }
    if (rows.empty()) throw EmptyFileError("'" + path.string() + "' is empty");
    ExternalDataset ds;
    ds.L = L;
    ds.frame_dt = frame_dt;
    std::size_t first = 0;
    const bool header_non_numeric =
        std::any_of(rows[0].begin(), rows[0].end(), [](const std::string& c) { return !try_parse(c).has_value(); });
    if (header || header_non_numeric) {
        for (const auto& c : rows[0]) {
            if (auto v = try_parse(c.rfind("x=", 0) == 0 ? c.substr(2) : c)) ds.x_positions.push_back(*v);
        }
        first = 1;
    }
    if (rows.size() <= first) throw EmptyFileError("'" + path.string() + "' has a header but no data rows");
    const std::size_t M = rows[first].size();
    ds.values = Matrix(0, M);
    std::vector<double> row(M);
    for (std::size_t r = first; r < rows.size(); ++r) {
        if (rows[r].size() != M) {
            throw RaggedRowsError("row " + std::to_string(r + 1) + " has " + std::to_string(rows[r].size()) +
                                  " cells, expected " + std::to_string(M));
        }
        for (std::size_t k = 0; k < M; ++k) {
            const auto v = try_parse(rows[r][k]);
            if (!v) {
                throw NonNumericCellError("row " + std::to_string(r + 1) + ", column " + std::to_string(k + 1) +
                                          ": '" + rows[r][k] + "' is not numeric");
            }
            if (!std::isfinite(*v)) throw NonNumericCellError("non-finite value in row " + std::to_string(r + 1));
            row[k] = *v;
        }
        ds.values.append_row(row);
    }
    ds.M = M;
    ds.N = ds.values.rows - 1;
    return ds;
}

/// Writes local measurements as a plain matrix CSV. The header cells read "x=<position>" so that
/// ingest_csv recognises them without a flag.
inline void export_dataset_csv(const std::filesystem::path& path, const Matrix& values, double L) {
    std::ostringstream os;
    for (std::size_t k = 0; k < values.cols; ++k) {
        os << (k ? ",x=" : "x=") << format_double(L * static_cast<double>(k) / static_cast<double>(values.cols));
    }
    os << '\n';
    for (std::size_t j = 0; j < values.rows; ++j) {
        for (std::size_t k = 0; k < values.cols; ++k) os << (k ? "," : "") << format_double(values(j, k));
        os << '\n';
    }
    auto out = open_out(path);
    out << os.str();
}

inline MeasurementSet dataset_to_measurements(const ExternalDataset& ds) {
    MeasurementSet ms;
    ms.L = ds.L;
    ms.layout = MeasurementLayout::regular(ds.M, ds.L, ds.L / (2.0 * static_cast<double>(ds.M)));
    ms.A_loc = ds.values;
    ms.times.resize(ds.values.rows);
    for (std::size_t j = 0; j < ms.times.size(); ++j) ms.times[j] = static_cast<double>(j) * ds.frame_dt;
    return ms;
}

/// Augmented MLE on external data: channel second differences stand in for the Laplacian
/// measurements and the realized variation supplies sigma_A ||K|| for the data-driven interval.
inline EstimateReport estimate_from_dataset(const ExternalDataset& ds, double alpha,
                                            const Kernel& kernel = bump_kernel()) {
    if (ds.M < 3) throw DataError("estimate_from_dataset: need at least 3 channels");
    if (ds.N < 1) throw DataError("estimate_from_dataset: need at least two frames");
    MeasurementSet ms = dataset_to_measurements(ds);
    ms.A_lap = fd_laplacian_measurements(ms.A_loc, ms.layout, ds.L);
    auto report = augmented_mle(ms);
    return confidence_intervals(report, kernel, std::nullopt, alpha);
}

// ---- reports and tables ------------------------------------------------------------------------

inline json interval_json(const std::optional<Interval>& iv) {
    if (!iv) return nullptr;
    return json::array({iv->lo, iv->hi});
}

inline json to_json(const EstimateReport& r) {
    json j;
    j["D_hat"] = r.D_hat;
    j["fisher_info"] = r.fisher_info;
    j["martingale_free_qv_estimate"] = r.martingale_free_qv_estimate;
    j["ci_plugin"] = interval_json(r.ci_plugin);
    j["ci_datadriven"] = interval_json(r.ci_datadriven);
    j["alpha"] = r.alpha;
    j["delta"] = r.delta;
    j["M"] = r.M;
    j["T"] = r.T;
    j["flags"] = r.flags;
    return j;
}

inline std::string summary_line(const EstimateReport& r) {
    std::ostringstream os;
    os << std::setprecision(5) << "D_hat = " << r.D_hat;
    if (r.ci_datadriven) {
        os << " +- " << r.ci_datadriven->half_width() << " (data-driven, " << (1.0 - r.alpha) * 100.0 << "%)";
    }
    if (r.ci_plugin) os << ", plug-in +- " << r.ci_plugin->half_width();
    os << "; M = " << r.M << ", T = " << r.T << ", I = " << r.fisher_info;
    return os.str();
}

/// "delta,policy,M,n,rmse,coverage_90,coverage_95,mean_width,..." with the per-policy log-log slope repeated
/// on each row. Coverage and width columns refer to the plug-in interval; *_dd columns to the data-driven one.
inline void write_campaign_table(const std::filesystem::path& path, const McCampaign& c, const CampaignResult& r) {
    auto idx_of = [&](double alpha) -> std::optional<std::size_t> {
        for (std::size_t a = 0; a < c.alphas.size(); ++a) {
            if (std::fabs(c.alphas[a] - alpha) < 1e-12) return a;
        }
        return std::nullopt;
    };
    const auto i90 = idx_of(0.1);
    const auto i95 = idx_of(0.05);
    std::map<std::string, double> slope;
    for (const auto& [label, s] : r.slopes) slope[label] = s;
    std::ostringstream os;
    os << "delta,policy,M,n,rmse,coverage_90,coverage_95,mean_width,coverage_dd_90,coverage_dd_95,mean_width_dd,"
          "mean_estimate,sd_estimate,mean_fisher,slope\n";
    for (const auto& cell : r.cells) {
        auto cov = [&](const std::vector<double>& v, std::optional<std::size_t> i) {
            return i ? format_double(v[*i]) : std::string{};
        };
        os << format_double(cell.delta) << ',' << cell.policy << ',' << cell.M << ',' << cell.n << ','
           << format_double(cell.rmse) << ',' << cov(cell.coverage_plugin, i90) << ','
           << cov(cell.coverage_plugin, i95) << ',' << cov(cell.mean_width_plugin, i90 ? i90 : std::optional<std::size_t>(0))
           << ',' << cov(cell.coverage_datadriven, i90) << ',' << cov(cell.coverage_datadriven, i95) << ','
           << cov(cell.mean_width_datadriven, i90 ? i90 : std::optional<std::size_t>(0)) << ','
           << format_double(cell.mean_estimate) << ',' << format_double(cell.sd_estimate) << ','
           << format_double(cell.mean_fisher) << ',';
        if (auto it = slope.find(cell.policy); it != slope.end()) os << format_double(it->second);
        os << '\n';
    }
    auto out = open_out(path);
    out << os.str();
}

/// Boxplot-ready long format: "sigma,tau".
inline void write_repol_csv(const std::filesystem::path& path, const std::vector<RepolStats>& stats) {
    std::ostringstream os;
    os << "sigma,tau\n";
    for (const auto& s : stats) {
        for (double t : s.tau_samples) os << format_double(s.sigma_A) << ',' << format_double(t) << '\n';
    }
    auto out = open_out(path);
    out << os.str();
}

inline void write_repol_summary(const std::filesystem::path& path, const std::vector<RepolStats>& stats) {
    std::ostringstream os;
    os << "sigma,replicates,kept,discarded_negative,never,mean,variance,q1,median,q3,whisker_lo,whisker_hi\n";
    for (const auto& s : stats) {
        const auto& b = s.summary;
        os << format_double(s.sigma_A) << ',' << s.replicates << ',' << s.tau_samples.size() << ','
           << s.n_discarded_negative << ',' << s.n_never << ',' << format_double(b.mean) << ','
           << format_double(b.variance) << ',' << format_double(b.q1) << ',' << format_double(b.median) << ','
           << format_double(b.q3) << ',' << format_double(b.whisker_lo) << ',' << format_double(b.whisker_hi) << '\n';
    }
    auto out = open_out(path);
    out << os.str();
}

/// Run manifest "<command>.manifest.json": enough to repeat the command exactly. Commands sharing
/// an output directory keep separate manifests.
inline void write_manifest(const std::filesystem::path& dir, const std::string& command,
                           const std::vector<std::string>& argv, const json& config, std::uint64_t seed) {
    json j;
    j["tool"] = "meinhardt";
    j["version"] = kVersion;
    j["command"] = command;
    j["argv"] = argv;
    j["seed"] = seed;
    j["config"] = config;
    write_json(dir / (command + ".manifest.json"), j);
}

} // namespace io
} // namespace meinhardt

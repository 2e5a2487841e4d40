#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "meinhardt/error.hpp"
#include "meinhardt/experiments.hpp"
#include "meinhardt/io.hpp"

// Minimal standalone SVG output for the three figure types. No styling beyond what is needed to read them.
namespace meinhardt::plot {

namespace detail {

inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

inline std::string header(int w, int h) {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(w) + "\" height=\"" +
           std::to_string(h) + "\" viewBox=\"0 0 " + std::to_string(w) + " " + std::to_string(h) +
           "\" font-family=\"sans-serif\" font-size=\"12\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

inline std::string text(double x, double y, const std::string& s, const char* anchor = "middle") {
    std::ostringstream os;
    os << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" text-anchor=\"" << anchor << "\">" << s << "</text>\n";
    return os.str();
}

inline std::string line(double x1, double y1, double x2, double y2, const char* stroke = "black") {
    std::ostringstream os;
    os << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2) << "\" y2=\"" << num(y2)
       << "\" stroke=\"" << stroke << "\"/>\n";
    return os.str();
}

// Blue -> white -> red ramp on t in [0, 1].
inline std::string ramp(double t) {
    t = std::clamp(t, 0.0, 1.0);
    int r, g, b;
    if (t < 0.5) {
        const double s = t / 0.5;
        r = static_cast<int>(40 + s * 215);
        g = static_cast<int>(70 + s * 185);
        b = 255;
    } else {
        const double s = (t - 0.5) / 0.5;
        r = 255;
        g = static_cast<int>(255 - s * 205);
        b = static_cast<int>(255 - s * 215);
    }
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
    return buf;
}

} // namespace detail

/// Space (x axis) by time (y axis, downwards) heatmap. Large matrices are block-averaged to at most
/// max_cells cells per axis.
inline std::string heatmap_svg(const io::Heatmap& h, const std::string& title, std::size_t max_cells = 200) {
    if (h.values.rows == 0 || h.values.cols == 0) throw DataError("heatmap has no data");
    const std::size_t R = h.values.rows, C = h.values.cols;
    const std::size_t br = (R + max_cells - 1) / max_cells, bc = (C + max_cells - 1) / max_cells;
    const std::size_t nr = (R + br - 1) / br, nc = (C + bc - 1) / bc;
    std::vector<double> cells(nr * nc, 0.0);
    for (std::size_t i = 0; i < nr; ++i) {
        for (std::size_t j = 0; j < nc; ++j) {
            double s = 0.0;
            std::size_t cnt = 0;
            for (std::size_t r = i * br; r < std::min(R, (i + 1) * br); ++r) {
                for (std::size_t c = j * bc; c < std::min(C, (j + 1) * bc); ++c) {
                    s += h.values(r, c);
                    ++cnt;
                }
            }
            cells[i * nc + j] = s / static_cast<double>(cnt);
        }
    }
    const auto [lo_it, hi_it] = std::minmax_element(cells.begin(), cells.end());
    const double lo = *lo_it, hi = *hi_it, span = hi > lo ? hi - lo : 1.0;
    const int W = 640, H = 480, left = 60, top = 40, pw = 500, ph = 380;
    const double cw = static_cast<double>(pw) / static_cast<double>(nc);
    const double chh = static_cast<double>(ph) / static_cast<double>(nr);
    std::ostringstream os;
    os << detail::header(W, H) << detail::text(W / 2.0, 20, title);
    for (std::size_t i = 0; i < nr; ++i) {
        for (std::size_t j = 0; j < nc; ++j) {
            os << "<rect x=\"" << detail::num(left + j * cw) << "\" y=\"" << detail::num(top + i * chh)
               << "\" width=\"" << detail::num(cw + 0.5) << "\" height=\"" << detail::num(chh + 0.5) << "\" fill=\""
               << detail::ramp((cells[i * nc + j] - lo) / span) << "\"/>\n";
        }
    }
    os << detail::text(left + pw / 2.0, top + ph + 30, "x")
       << detail::text(left - 10, top + 10, detail::num(h.t.front()), "end")
       << detail::text(left - 10, top + ph, detail::num(h.t.back()), "end")
       << detail::text(left, top + ph + 15, detail::num(h.x.front()))
       << detail::text(left + pw, top + ph + 15, detail::num(h.x.back()))
       << detail::text(left - 35, top + ph / 2.0, "t")
       << detail::text(left + pw + 10, top + 10, "max " + detail::num(hi), "start")
       << detail::text(left + pw + 10, top + ph, "min " + detail::num(lo), "start") << "</svg>\n";
    return os.str();
}

/// One box (quartiles, 1.5 IQR whiskers, mean marker) per sigma.
inline std::string boxplot_svg(const std::map<double, std::vector<double>>& groups, const std::string& title) {
    if (groups.empty()) throw DataError("boxplot has no data");
    std::vector<std::pair<double, BoxSummary>> boxes;
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& [s, v] : groups) {
        if (v.empty()) continue;
        const auto b = box_summary(v);
        lo = std::min(lo, b.whisker_lo);
        hi = std::max(hi, b.whisker_hi);
        boxes.emplace_back(s, b);
    }
    if (boxes.empty()) throw DataError("boxplot has no samples");
    if (!(hi > lo)) {
        lo -= 1.0;
        hi += 1.0;
    }
    const int W = 640, H = 420, left = 60, top = 40, pw = 540, ph = 320;
    auto ypos = [&](double v) { return top + ph - (v - lo) / (hi - lo) * ph; };
    const double slot = static_cast<double>(pw) / static_cast<double>(boxes.size());
    std::ostringstream os;
    os << detail::header(W, H) << detail::text(W / 2.0, 20, title) << detail::line(left, top, left, top + ph)
       << detail::line(left, top + ph, left + pw, top + ph);
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        const auto& [s, b] = boxes[i];
        const double cx = left + (i + 0.5) * slot, hw = slot * 0.25;
        os << detail::line(cx, ypos(b.whisker_lo), cx, ypos(b.q1)) << detail::line(cx, ypos(b.q3), cx, ypos(b.whisker_hi))
           << "<rect x=\"" << detail::num(cx - hw) << "\" y=\"" << detail::num(ypos(b.q3)) << "\" width=\""
           << detail::num(2 * hw) << "\" height=\"" << detail::num(std::max(1.0, ypos(b.q1) - ypos(b.q3)))
           << "\" fill=\"#cfe0f5\" stroke=\"black\"/>\n"
           << detail::line(cx - hw, ypos(b.median), cx + hw, ypos(b.median), "#c0392b")
           << "<circle cx=\"" << detail::num(cx) << "\" cy=\"" << detail::num(ypos(b.mean)) << "\" r=\"3\"/>\n"
           << detail::text(cx, top + ph + 15, detail::num(s));
    }
    os << detail::text(left + pw / 2.0, top + ph + 35, "sigma_A") << detail::text(left - 8, top + 5, detail::num(hi), "end")
       << detail::text(left - 8, top + ph, detail::num(lo), "end") << "</svg>\n";
    return os.str();
}

struct Series {
    std::string label;
    std::vector<double> x, y;
};

/// log10-log10 scatter with a least-squares line per series; the fitted slope goes in the legend.
inline std::string loglog_svg(const std::vector<Series>& series, const std::string& title) {
    double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!(s.x[i] > 0.0 && s.y[i] > 0.0)) throw DataError("log-log plot needs positive values");
            xmin = std::min(xmin, std::log10(s.x[i]));
            xmax = std::max(xmax, std::log10(s.x[i]));
            ymin = std::min(ymin, std::log10(s.y[i]));
            ymax = std::max(ymax, std::log10(s.y[i]));
        }
    }
    if (!(xmax >= xmin)) throw DataError("log-log plot has no data");
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax == ymin) ymax = ymin + 1.0;
    const int W = 640, H = 440, left = 70, top = 40, pw = 420, ph = 340;
    auto X = [&](double lx) { return left + (lx - xmin) / (xmax - xmin) * pw; };
    auto Y = [&](double ly) { return top + ph - (ly - ymin) / (ymax - ymin) * ph; };
    static const char* colours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
    std::ostringstream os;
    os << detail::header(W, H) << detail::text(W / 2.0, 20, title) << detail::line(left, top, left, top + ph)
       << detail::line(left, top + ph, left + pw, top + ph);
    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const char* col = colours[k % 5];
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            os << "<circle cx=\"" << detail::num(X(std::log10(s.x[i]))) << "\" cy=\"" << detail::num(Y(std::log10(s.y[i])))
               << "\" r=\"4\" fill=\"" << col << "\"/>\n";
        }
        std::string legend = s.label;
        if (s.x.size() >= 2) {
            const double slope = loglog_slope(s.x, s.y);
            double mx = 0.0, my = 0.0;
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                mx += std::log10(s.x[i]);
                my += std::log10(s.y[i]);
            }
            mx /= static_cast<double>(s.x.size());
            my /= static_cast<double>(s.x.size());
            os << detail::line(X(xmin), Y(my + slope * (xmin - mx)), X(xmax), Y(my + slope * (xmax - mx)), col);
            legend += " (slope " + detail::num(slope) + ")";
        }
        os << "<text x=\"" << left + pw + 15 << "\" y=\"" << top + 20 + 18 * k << "\" fill=\"" << col << "\">" << legend
           << "</text>\n";
    }
    os << detail::text(left + pw / 2.0, top + ph + 35, "log10 delta")
       << detail::text(left + 5, top + ph + 15, detail::num(xmin)) << detail::text(left + pw, top + ph + 15, detail::num(xmax))
       << detail::text(left - 8, top + 5, detail::num(ymax), "end") << detail::text(left - 8, top + ph, detail::num(ymin), "end")
       << detail::text(20, top + ph / 2.0, "log10 RMSE", "start") << "</svg>\n";
    return os.str();
}

} // namespace meinhardt::plot

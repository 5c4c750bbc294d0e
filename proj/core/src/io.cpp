#include "bihar/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace bihar {

std::string fmt_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string fmt_short(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

} // namespace

std::string render_csv(const Table& table) {
    if (table.columns.empty()) throw domain_error("render_csv: table has no columns");
    std::ostringstream os;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) os << ',';
        os << table.columns[c];
    }
    os << '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size()) {
            throw domain_error("render_csv: row width does not match the header");
        }
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) os << ',';
            os << fmt_full(row[c]);
        }
        os << '\n';
    }
    return os.str();
}

void write_text(const std::string& text, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw numerical_error("cannot open for writing: " + path);
    f << text;
    if (!f) throw numerical_error("write failed: " + path);
}

void write_csv(const Table& table, const std::string& path) {
    write_text(render_csv(table), path);
}

Table read_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw domain_error("cannot open CSV: " + path);
    Table t;
    std::string line;
    if (!std::getline(f, line)) throw domain_error("empty CSV: " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) t.columns.push_back(cell);
    while (std::getline(f, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream rs(line);
        std::vector<double> row;
        while (std::getline(rs, cell, ',')) row.push_back(std::stod(cell));
        if (row.size() != t.columns.size()) {
            throw domain_error("CSV row width mismatch in " + path);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

namespace {

constexpr double W = 800.0, H = 560.0;
constexpr double ML = 72.0, MR = 24.0, MT = 44.0, MB = 56.0;

struct AxisMap {
    double lo = 0.0, hi = 1.0;
    bool log = false;
    double pix0 = 0.0, pix1 = 1.0;

    double map(double v) const {
        double t = log ? (std::log10(v) - lo) / (hi - lo) : (v - lo) / (hi - lo);
        return pix0 + t * (pix1 - pix0);
    }
};

AxisMap fit_axis(const std::vector<const std::vector<double>*>& cols, bool log, double pix0,
                 double pix1) {
    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (const auto* col : cols) {
        for (double v : *col) {
            if (log && !(v > 0.0)) {
                throw domain_error("render_svg: log axis requires positive data");
            }
            double t = log ? std::log10(v) : v;
            if (first) {
                lo = hi = t;
                first = false;
            } else {
                lo = std::min(lo, t);
                hi = std::max(hi, t);
            }
        }
    }
    if (first) throw domain_error("render_svg: no data");
    if (hi - lo < 1e-12) {
        hi += 0.5;
        lo -= 0.5;
    }
    double pad = 0.05 * (hi - lo);
    AxisMap ax;
    ax.lo = lo - pad;
    ax.hi = hi + pad;
    ax.log = log;
    ax.pix0 = pix0;
    ax.pix1 = pix1;
    return ax;
}

std::string tick_label(double axis_coord, bool log) {
    return fmt_short(log ? std::pow(10.0, axis_coord) : axis_coord);
}

const char* PALETTE[6] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

} // namespace

std::string render_svg(const std::vector<PlotSeries>& series, PlotKind kind,
                       const std::string& title, const std::string& x_label,
                       const std::string& y_label) {
    if (series.empty()) throw domain_error("render_svg: no series");
    for (const auto& s : series) {
        if (s.x.empty() || s.x.size() != s.y.size()) {
            throw domain_error("render_svg: series '" + s.name + "' is empty or ragged");
        }
    }
    bool logy = (kind == PlotKind::Bifurcation);

    std::vector<const std::vector<double>*> xs, ys;
    for (const auto& s : series) {
        xs.push_back(&s.x);
        ys.push_back(&s.y);
    }
    AxisMap ax = fit_axis(xs, false, ML, W - MR);
    AxisMap ay = fit_axis(ys, logy, H - MB, MT); // pixel y grows downward

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    os << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"26\" text-anchor=\"middle\" font-family=\"sans-serif\" "
          "font-size=\"16\">"
       << title << "</text>\n";

    // frame and ticks
    os << "<rect x=\"" << ML << "\" y=\"" << MT << "\" width=\"" << (W - ML - MR) << "\" height=\""
       << (H - MT - MB) << "\" fill=\"none\" stroke=\"#333\" stroke-width=\"1\"/>\n";
    const int NT = 5;
    for (int i = 0; i <= NT; ++i) {
        double cx = ax.lo + (ax.hi - ax.lo) * i / NT;
        double px = ax.map(ax.log ? std::pow(10.0, cx) : cx);
        os << "<line x1=\"" << fmt_short(px) << "\" y1=\"" << (H - MB) << "\" x2=\""
           << fmt_short(px) << "\" y2=\"" << (H - MB + 5) << "\" stroke=\"#333\"/>\n";
        os << "<text x=\"" << fmt_short(px) << "\" y=\"" << (H - MB + 20)
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
           << tick_label(cx, false) << "</text>\n";
        double cy = ay.lo + (ay.hi - ay.lo) * i / NT;
        double py = ay.map(ay.log ? std::pow(10.0, cy) : cy);
        os << "<line x1=\"" << (ML - 5) << "\" y1=\"" << fmt_short(py) << "\" x2=\"" << ML
           << "\" y2=\"" << fmt_short(py) << "\" stroke=\"#333\"/>\n";
        os << "<text x=\"" << (ML - 8) << "\" y=\"" << fmt_short(py + 4)
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
           << tick_label(cy, logy) << "</text>\n";
    }
    os << "<text x=\"" << (ML + (W - ML - MR) / 2) << "\" y=\"" << (H - 12)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << x_label
       << "</text>\n";
    os << "<text x=\"18\" y=\"" << (MT + (H - MT - MB) / 2)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
          "transform=\"rotate(-90 18 "
       << (MT + (H - MT - MB) / 2) << ")\">" << y_label << "</text>\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        os << "<polyline fill=\"none\" stroke=\"" << PALETTE[k % 6]
           << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (i) os << ' ';
            os << fmt_short(ax.map(s.x[i])) << ',' << fmt_short(ay.map(s.y[i]));
        }
        os << "\"/>\n";
        if (series.size() > 1) {
            double ly = MT + 16.0 + 16.0 * static_cast<double>(k);
            os << "<line x1=\"" << (W - MR - 130) << "\" y1=\"" << fmt_short(ly) << "\" x2=\""
               << (W - MR - 104) << "\" y2=\"" << fmt_short(ly) << "\" stroke=\"" << PALETTE[k % 6]
               << "\" stroke-width=\"1.5\"/>\n";
            os << "<text x=\"" << (W - MR - 98) << "\" y=\"" << fmt_short(ly + 4)
               << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.name << "</text>\n";
        }
    }
    os << "</svg>\n";
    return os.str();
}

void emit_svg(const std::vector<PlotSeries>& series, PlotKind kind, const std::string& title,
              const std::string& x_label, const std::string& y_label, const std::string& path) {
    write_text(render_svg(series, kind, title, x_label, y_label), path);
}

} // namespace bihar

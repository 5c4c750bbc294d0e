#pragma once

#include <string>
#include <vector>

#include "bihar/errors.hpp"

namespace bihar {

// Shortest exact decimal for a double (%.17g); all numeric artifact output goes
// through this so identical inputs give identical bytes.
std::string fmt_full(double v);

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows; // each row has columns.size() entries
};

std::string render_csv(const Table& table);
void write_csv(const Table& table, const std::string& path);
Table read_csv(const std::string& path);

void write_text(const std::string& text, const std::string& path);

enum class PlotKind { Trajectory, Bifurcation, Phase };

struct PlotSeries {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

// Standalone SVG: polylines, axes, tick labels, title. Bifurcation plots use a
// log vertical axis. Deterministic byte output for identical input.
std::string render_svg(const std::vector<PlotSeries>& series, PlotKind kind,
                       const std::string& title, const std::string& x_label,
                       const std::string& y_label);

void emit_svg(const std::vector<PlotSeries>& series, PlotKind kind, const std::string& title,
              const std::string& x_label, const std::string& y_label, const std::string& path);

} // namespace bihar

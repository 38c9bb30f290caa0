#include "fpd/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace fpd {

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

const char* kDimColours[] = {"#d62728", "#2ca02c", "#cc00cc", "#1f77b4"};

}  // namespace

void write_diagram_svg(const std::vector<PersistenceDiagram>& diagrams, const std::string& path) {
    const double size = 420.0, margin = 45.0, plot = size - 2 * margin;
    double lo = 0.0, hi = 1.0;
    bool any = false;
    for (const auto& d : diagrams)
        for (const auto& p : d.points()) {
            double death = p.finite() ? p.death : p.birth;
            if (!any) {
                lo = std::min(0.0, p.birth);
                hi = std::max(death, p.birth);
                any = true;
            } else {
                lo = std::min(lo, p.birth);
                hi = std::max(hi, death);
            }
        }
    if (!any || hi <= lo) hi = lo + 1.0;
    double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
    auto sx = [&](double v) { return margin + (v - lo) / (hi - lo) * plot; };
    auto sy = [&](double v) { return size - margin - (v - lo) / (hi - lo) * plot; };

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
        << "\" viewBox=\"0 0 " << size << " " << size << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    // axes
    out << "<line x1=\"" << margin << "\" y1=\"" << size - margin << "\" x2=\"" << size - margin
        << "\" y2=\"" << size - margin << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << margin << "\" y1=\"" << size - margin << "\" x2=\"" << margin
        << "\" y2=\"" << margin << "\" stroke=\"black\"/>\n";
    // diagonal
    out << "<line x1=\"" << sx(lo) << "\" y1=\"" << sy(lo) << "\" x2=\"" << sx(hi) << "\" y2=\""
        << sy(hi) << "\" stroke=\"#888\" stroke-dasharray=\"4 3\"/>\n";
    out << "<text x=\"" << size / 2 << "\" y=\"" << size - 8 << "\" font-size=\"13\" text-anchor=\"middle\">birth</text>\n";
    out << "<text x=\"14\" y=\"" << size / 2
        << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 14 " << size / 2
        << ")\">death</text>\n";
    for (const auto& d : diagrams) {
        const char* colour = kDimColours[d.dim() % 4];
        for (const auto& p : d.points()) {
            double death = p.finite() ? p.death : hi;
            out << "<circle cx=\"" << num(sx(p.birth)) << "\" cy=\"" << num(sy(death))
                << "\" r=\"3.5\" fill=\"" << colour << "\" fill-opacity=\"0.8\"/>\n";
        }
    }
    out << "</svg>\n";
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

void write_heatmap_svg(const std::vector<std::vector<double>>& grid,
                       const std::vector<std::string>& row_labels,
                       const std::vector<std::string>& col_labels, const std::string& path) {
    if (grid.empty()) throw std::runtime_error("empty heatmap grid");
    const std::size_t rows = grid.size(), cols = grid.front().size();
    for (const auto& r : grid)
        if (r.size() != cols) throw std::runtime_error("ragged heatmap grid");
    double vmin = grid[0][0], vmax = grid[0][0];
    for (const auto& r : grid)
        for (double v : r) {
            vmin = std::min(vmin, v);
            vmax = std::max(vmax, v);
        }
    if (vmax <= vmin) vmax = vmin + 1.0;

    const double cell = 64.0, left = 70.0, top = 30.0;
    const double w = left + cols * cell + 20, h = top + rows * cell + 40;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
        << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            double t = (grid[i][j] - vmin) / (vmax - vmin);
            int r = static_cast<int>(255 * t);
            int b = static_cast<int>(255 * (1.0 - t));
            double x = left + j * cell, y = top + i * cell;
            out << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell << "\" height=\""
                << cell << "\" fill=\"rgb(" << r << ",80," << b << ")\" stroke=\"white\"/>\n";
            out << "<text x=\"" << x + cell / 2 << "\" y=\"" << y + cell / 2 + 4
                << "\" font-size=\"13\" fill=\"white\" text-anchor=\"middle\">" << num(grid[i][j])
                << "</text>\n";
        }
    }
    for (std::size_t i = 0; i < rows && i < row_labels.size(); ++i)
        out << "<text x=\"" << left - 6 << "\" y=\"" << top + i * cell + cell / 2 + 4
            << "\" font-size=\"12\" text-anchor=\"end\">" << row_labels[i] << "</text>\n";
    for (std::size_t j = 0; j < cols && j < col_labels.size(); ++j)
        out << "<text x=\"" << left + j * cell + cell / 2 << "\" y=\"" << top - 8
            << "\" font-size=\"12\" text-anchor=\"middle\">" << col_labels[j] << "</text>\n";
    out << "</svg>\n";
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace fpd

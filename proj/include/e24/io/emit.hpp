#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "e24/errors.hpp"
#include "e24/linalg.hpp"

// CSV and SVG emission. All output is deterministic for fixed input: fixed
// "%.17g" number formatting with '.' decimal separator, no timestamps.

namespace e24 {

inline std::string csv_real(Real v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> header) {
        append_row_strings(header);
        columns_ = header.size();
    }

    void append(const std::vector<Real>& row) {
        std::vector<std::string> cells;
        cells.reserve(row.size());
        for (Real v : row) cells.push_back(csv_real(v));
        append_row_strings(cells);
    }

    void append_mixed(const std::vector<std::string>& row) {
        append_row_strings(row);
    }

    const std::string& text() const { return text_; }

    void write_file(const std::string& path) const {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw Error("cannot write '" + path + "'");
        out << text_;
    }

  private:
    void append_row_strings(const std::vector<std::string>& cells) {
        if (columns_ != 0 && cells.size() != columns_)
            throw Error("csv row width mismatch");
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) text_ += ',';
            text_ += cells[i];
        }
        text_ += '\n';
    }

    std::string text_;
    std::size_t columns_ = 0;
};

// --- Minimal SVG line charts --------------------------------------------------

struct SvgSeries {
    std::string label;
    std::vector<std::pair<Real, Real>> points;
};

/// Polyline chart with auto-scaled axes. Intended for desk inspection of
/// drift histories and orbit projections.
inline void write_svg_chart(const std::string& path, const std::string& title,
                            const std::string& x_label, const std::string& y_label,
                            const std::vector<SvgSeries>& series) {
    const int w = 860, h = 520, ml = 70, mr = 20, mt = 40, mb = 50;
    Real xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : series)
        for (const auto& [x, y] : s.points) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    if (!(xmin < xmax)) { xmin -= 1.0; xmax += 1.0; }
    if (!(ymin < ymax)) { ymin -= 1.0; ymax += 1.0; }
    const Real xr = xmax - xmin, yr = ymax - ymin;
    auto px = [&](Real x) { return ml + (x - xmin) / xr * (w - ml - mr); };
    auto py = [&](Real y) { return h - mb - (y - ymin) / yr * (h - mt - mb); };
    const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                            "#ff7f0e", "#8c564b"};

    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    char buf[256];
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
        << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << " " << h
        << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << w / 2 << "\" y=\"24\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"16\">" << title
        << "</text>\n";
    // Axes.
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%d\" y1=\"%d\" x2=\"%d\" y2=\"%d\" "
                  "stroke=\"black\"/>\n",
                  ml, h - mb, w - mr, h - mb);
    out << buf;
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%d\" y1=\"%d\" x2=\"%d\" y2=\"%d\" "
                  "stroke=\"black\"/>\n",
                  ml, mt, ml, h - mb);
    out << buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%d\" y=\"%d\" text-anchor=\"middle\" "
                  "font-family=\"sans-serif\" font-size=\"12\">%s</text>\n",
                  (ml + w - mr) / 2, h - 14, x_label.c_str());
    out << buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"16\" y=\"%d\" text-anchor=\"middle\" "
                  "font-family=\"sans-serif\" font-size=\"12\" "
                  "transform=\"rotate(-90 16 %d)\">%s</text>\n",
                  (mt + h - mb) / 2, (mt + h - mb) / 2, y_label.c_str());
    out << buf;
    // Range labels.
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%d\" y=\"%d\" font-family=\"sans-serif\" "
                  "font-size=\"10\">%.6g</text>\n",
                  ml, h - mb + 16, xmin);
    out << buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%d\" y=\"%d\" text-anchor=\"end\" "
                  "font-family=\"sans-serif\" font-size=\"10\">%.6g</text>\n",
                  w - mr, h - mb + 16, xmax);
    out << buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%d\" y=\"%d\" text-anchor=\"end\" "
                  "font-family=\"sans-serif\" font-size=\"10\">%.6g</text>\n",
                  ml - 6, h - mb, ymin);
    out << buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%d\" y=\"%d\" text-anchor=\"end\" "
                  "font-family=\"sans-serif\" font-size=\"10\">%.6g</text>\n",
                  ml - 6, mt + 10, ymax);
    out << buf;

    int ci = 0;
    int legend_y = mt + 8;
    for (const auto& s : series) {
        const char* color = colors[ci % 6];
        out << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : s.points) {
            std::snprintf(buf, sizeof(buf), "%.6g,%.6g ", px(x), py(y));
            out << buf;
        }
        out << "\"/>\n";
        std::snprintf(buf, sizeof(buf),
                      "<text x=\"%d\" y=\"%d\" font-family=\"sans-serif\" "
                      "font-size=\"11\" fill=\"%s\">%s</text>\n",
                      w - mr - 160, legend_y, color, s.label.c_str());
        out << buf;
        legend_y += 14;
        ++ci;
    }
    out << "</svg>\n";
}

}  // namespace e24

#include "lvx/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace lvx::cli {

namespace {

constexpr double kWidth = 900, kHeight = 420;
constexpr double kL = 70, kR = 20, kT = 40, kB = 50;  // margins

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string fmt_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

void write_svg_plot(const std::string& path, const std::string& title,
                    const std::string& x_label, const std::vector<double>& x,
                    const std::vector<SvgSeries>& series) {
    double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
    double y_min = x_min, y_max = -x_min;
    for (double v : x) {
        x_min = std::min(x_min, v);
        x_max = std::max(x_max, v);
    }
    for (const SvgSeries& s : series)
        for (double v : *s.y)
            if (std::isfinite(v)) {
                y_min = std::min(y_min, v);
                y_max = std::max(y_max, v);
            }
    if (!std::isfinite(x_min)) { x_min = 0; x_max = 1; }
    if (!std::isfinite(y_min)) { y_min = 0; y_max = 1; }
    if (x_max == x_min) x_max = x_min + 1;
    if (y_max == y_min) { y_max += 0.5; y_min -= 0.5; }
    const double pad = 0.05 * (y_max - y_min);
    y_min -= pad;
    y_max += pad;

    auto px = [&](double v) { return kL + (v - x_min) / (x_max - x_min) * (kWidth - kL - kR); };
    auto py = [&](double v) { return kHeight - kB - (v - y_min) / (y_max - y_min) * (kHeight - kT - kB); };

    std::ofstream out(path, std::ios::binary);
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
        << kWidth << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth
        << " " << kHeight << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"15\">" << title << "</text>\n";

    // axis frame and tick labels
    out << "<rect x=\"" << kL << "\" y=\"" << kT << "\" width=\"" << kWidth - kL - kR
        << "\" height=\"" << kHeight - kT - kB
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double xv = x_min + (x_max - x_min) * i / 4.0;
        const double yv = y_min + (y_max - y_min) * i / 4.0;
        out << "<text x=\"" << fmt(px(xv)) << "\" y=\"" << kHeight - kB + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt_tick(xv) << "</text>\n";
        out << "<text x=\"" << kL - 8 << "\" y=\"" << fmt(py(yv) + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt_tick(yv) << "</text>\n";
    }
    out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << x_label << "</text>\n";

    // zero line when visible
    if (y_min < 0 && y_max > 0)
        out << "<line x1=\"" << kL << "\" y1=\"" << fmt(py(0)) << "\" x2=\""
            << kWidth - kR << "\" y2=\"" << fmt(py(0))
            << "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";

    double legend_y = kT + 16;
    for (const SvgSeries& s : series) {
        out << "<polyline fill=\"none\" stroke=\"" << s.color
            << "\" stroke-width=\"1.2\" points=\"";
        bool open = false;
        for (std::size_t i = 0; i < x.size() && i < s.y->size(); ++i) {
            const double v = (*s.y)[i];
            if (!std::isfinite(v)) {
                if (open) out << "\" /><polyline fill=\"none\" stroke=\"" << s.color
                              << "\" stroke-width=\"1.2\" points=\"";
                open = false;
                continue;
            }
            out << fmt(px(x[i])) << "," << fmt(py(v)) << " ";
            open = true;
        }
        out << "\"/>\n";
        out << "<text x=\"" << kWidth - kR - 8 << "\" y=\"" << legend_y
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" fill=\""
            << s.color << "\">" << s.label << "</text>\n";
        legend_y += 16;
    }
    out << "</svg>\n";
}

}  // namespace lvx::cli

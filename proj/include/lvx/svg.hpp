// svg.hpp — standalone SVG polyline plots (axes + curves, no renderer)

#pragma once

#include <string>
#include <vector>

namespace lvx::cli {

struct SvgSeries {
    std::string label;
    std::string color;
    const std::vector<double>* y = nullptr;
};

// Writes an SVG 1.1 document with an axis frame and one polyline per series.
// Non-finite samples break the polyline instead of being drawn.
void write_svg_plot(const std::string& path, const std::string& title,
                    const std::string& x_label, const std::vector<double>& x,
                    const std::vector<SvgSeries>& series);

}  // namespace lvx::cli

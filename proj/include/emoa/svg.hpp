#pragma once

/// @file svg.hpp
/// @brief Self-contained SVG 1.1 line, step and scatter plots. No scripts, fonts
/// or external references; panels are laid out on a grid inside one document.

#include <string>
#include <utility>
#include <vector>

namespace emoa {

enum class SeriesStyle { Line, Step, Points };

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    SeriesStyle style = SeriesStyle::Line;
    std::string color; ///< empty picks from the palette
    double marker_radius = 1.5;
};

struct PlotPolygon {
    std::vector<std::pair<double, double>> vertices;
    std::string stroke = "#444444";
};

struct PlotPanel {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    std::vector<PlotSeries> series;
    std::vector<PlotPolygon> polygons;
    bool equal_aspect = false;
};

struct PlotLayout {
    int columns = 1;
    int panel_width = 560;
    int panel_height = 380;
    std::string caption; ///< optional footnote under the panels
};

/// Non-positive x values are dropped from log-x panels.
std::string render_svg(const std::vector<PlotPanel>& panels, const PlotLayout& layout = {});

} // namespace emoa

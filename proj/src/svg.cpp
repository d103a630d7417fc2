#include "emoa/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "emoa/csv.hpp"

namespace emoa {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

// Two decimals are plenty at screen resolution and keep files small.
std::string px(double v) {
    return format_double(std::round(v * 100.0) / 100.0);
}

std::string tick_label(double v) {
    if (v != 0.0 && (std::abs(v) >= 1e4 || std::abs(v) < 1e-2)) {
        const int e = static_cast<int>(std::floor(std::log10(std::abs(v))));
        const double m = v / std::pow(10.0, e);
        if (std::abs(m - std::round(m)) < 1e-9 && std::round(std::abs(m)) == 1.0) {
            return std::string(m < 0 ? "-" : "") + "1e" + std::to_string(e);
        }
        return format_double(std::round(m * 100.0) / 100.0) + "e" + std::to_string(e);
    }
    return format_double(std::round(v * 1000.0) / 1000.0);
}

std::vector<double> linear_ticks(double lo, double hi) {
    const double span = hi - lo;
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        step = m * mag;
        if (span / step <= 6.0) {
            break;
        }
    }
    std::vector<double> ticks;
    for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * span; t += step) {
        ticks.push_back(std::abs(t) < 1e-12 * span ? 0.0 : t);
    }
    return ticks;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void add(double v) {
        if (std::isfinite(v)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    void pad(double fraction) {
        if (!(lo <= hi)) {
            lo = 0.0;
            hi = 1.0;
        }
        if (hi - lo <= 0.0) {
            const double w = lo == 0.0 ? 1.0 : std::abs(lo) * 0.1;
            lo -= w;
            hi += w;
        }
        const double d = (hi - lo) * fraction;
        lo -= d;
        hi += d;
    }
};

void render_panel(std::string& out, const PlotPanel& panel, double ox, double oy, double w, double h) {
    const double left = ox + 64.0;
    const double right = ox + w - 14.0;
    const double top = oy + 30.0;
    const double bottom = oy + h - 46.0;

    auto tx = [&](double x) { return panel.log_x ? std::log10(x) : x; };
    Range xr;
    Range yr;
    for (const auto& s : panel.series) {
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (panel.log_x && !(s.x[i] > 0.0)) {
                continue;
            }
            xr.add(tx(s.x[i]));
            yr.add(s.y[i]);
        }
    }
    for (const auto& p : panel.polygons) {
        for (const auto& [x, y] : p.vertices) {
            xr.add(tx(x));
            yr.add(y);
        }
    }
    if (panel.log_x) {
        if (!(xr.lo <= xr.hi)) {
            xr.lo = 0.0;
            xr.hi = 1.0;
        }
        xr.lo = std::floor(xr.lo);
        xr.hi = std::max(std::ceil(xr.hi), xr.lo + 1.0);
    } else {
        xr.pad(0.04);
    }
    yr.pad(0.04);
    if (panel.equal_aspect) {
        const double sx = (xr.hi - xr.lo) / (right - left);
        const double sy = (yr.hi - yr.lo) / (bottom - top);
        if (sx > sy) {
            const double extra = (sx * (bottom - top) - (yr.hi - yr.lo)) / 2.0;
            yr.lo -= extra;
            yr.hi += extra;
        } else {
            const double extra = (sy * (right - left) - (xr.hi - xr.lo)) / 2.0;
            xr.lo -= extra;
            xr.hi += extra;
        }
    }
    auto sx = [&](double x) { return left + (tx(x) - xr.lo) / (xr.hi - xr.lo) * (right - left); };
    auto sy = [&](double y) { return bottom - (y - yr.lo) / (yr.hi - yr.lo) * (bottom - top); };

    out += "<g font-family=\"sans-serif\" font-size=\"11\">\n";
    out += "<rect x=\"" + px(left) + "\" y=\"" + px(top) + "\" width=\"" + px(right - left) + "\" height=\"" +
           px(bottom - top) + "\" fill=\"none\" stroke=\"#000000\"/>\n";
    out += "<text x=\"" + px((left + right) / 2) + "\" y=\"" + px(oy + 18) + "\" text-anchor=\"middle\" font-size=\"13\">" +
           escape(panel.title) + "</text>\n";

    std::vector<std::pair<double, std::string>> xticks;
    if (panel.log_x) {
        for (double e = xr.lo; e <= xr.hi + 1e-9; e += 1.0) {
            xticks.emplace_back(std::pow(10.0, e), "1e" + std::to_string(static_cast<int>(e)));
        }
    } else {
        for (double t : linear_ticks(xr.lo, xr.hi)) {
            xticks.emplace_back(t, tick_label(t));
        }
    }
    for (const auto& [t, label] : xticks) {
        const double x = sx(t);
        out += "<line x1=\"" + px(x) + "\" y1=\"" + px(bottom) + "\" x2=\"" + px(x) + "\" y2=\"" + px(bottom + 4) +
               "\" stroke=\"#000000\"/>\n";
        out += "<text x=\"" + px(x) + "\" y=\"" + px(bottom + 16) + "\" text-anchor=\"middle\">" + escape(label) +
               "</text>\n";
    }
    for (double t : linear_ticks(yr.lo, yr.hi)) {
        const double y = sy(t);
        out += "<line x1=\"" + px(left - 4) + "\" y1=\"" + px(y) + "\" x2=\"" + px(left) + "\" y2=\"" + px(y) +
               "\" stroke=\"#000000\"/>\n";
        out += "<text x=\"" + px(left - 6) + "\" y=\"" + px(y + 4) + "\" text-anchor=\"end\">" +
               escape(tick_label(t)) + "</text>\n";
    }
    out += "<text x=\"" + px((left + right) / 2) + "\" y=\"" + px(bottom + 34) + "\" text-anchor=\"middle\">" +
           escape(panel.x_label) + "</text>\n";
    out += "<text transform=\"translate(" + px(ox + 14) + "," + px((top + bottom) / 2) +
           ") rotate(-90)\" text-anchor=\"middle\">" + escape(panel.y_label) + "</text>\n";

    for (const auto& p : panel.polygons) {
        std::string pts;
        for (const auto& [x, y] : p.vertices) {
            pts += px(sx(x)) + "," + px(sy(y)) + " ";
        }
        out += "<polygon points=\"" + pts + "\" fill=\"none\" stroke=\"" + p.stroke + "\" stroke-dasharray=\"4,3\"/>\n";
    }

    std::size_t palette_index = 0;
    for (std::size_t si = 0; si < panel.series.size(); ++si) {
        const auto& s = panel.series[si];
        const std::string color = s.color.empty() ? kPalette[palette_index++ % std::size(kPalette)] : s.color;
        std::vector<std::pair<double, double>> pts;
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if ((panel.log_x && !(s.x[i] > 0.0)) || !std::isfinite(s.y[i]) || !std::isfinite(s.x[i])) {
                continue;
            }
            pts.emplace_back(sx(s.x[i]), sy(s.y[i]));
        }
        if (s.style == SeriesStyle::Points) {
            out += "<g fill=\"" + color + "\">\n";
            for (const auto& [x, y] : pts) {
                out += "<circle cx=\"" + px(x) + "\" cy=\"" + px(y) + "\" r=\"" + px(s.marker_radius) + "\"/>\n";
            }
            out += "</g>\n";
        } else if (!pts.empty()) {
            std::string d = "M" + px(pts[0].first) + "," + px(pts[0].second);
            for (std::size_t i = 1; i < pts.size(); ++i) {
                if (s.style == SeriesStyle::Step) {
                    d += "H" + px(pts[i].first) + "V" + px(pts[i].second);
                } else {
                    d += "L" + px(pts[i].first) + "," + px(pts[i].second);
                }
            }
            out += "<path d=\"" + d + "\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\"/>\n";
        }
        if (!s.label.empty()) {
            const double ly = top + 14.0 + 14.0 * static_cast<double>(si);
            out += "<rect x=\"" + px(left + 8) + "\" y=\"" + px(ly - 8) + "\" width=\"10\" height=\"8\" fill=\"" + color +
                   "\"/>\n";
            out += "<text x=\"" + px(left + 22) + "\" y=\"" + px(ly) + "\">" + escape(s.label) + "</text>\n";
        }
    }
    out += "</g>\n";
}

} // namespace

std::string render_svg(const std::vector<PlotPanel>& panels, const PlotLayout& layout) {
    const int columns = std::max(1, layout.columns);
    const int count = std::max<int>(1, static_cast<int>(panels.size()));
    const int rows = (count + columns - 1) / columns;
    const int caption_height = layout.caption.empty() ? 0 : 24;
    const int width = columns * layout.panel_width;
    const int height = rows * layout.panel_height + caption_height;

    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + std::to_string(width) +
           "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " + std::to_string(width) + " " +
           std::to_string(height) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    for (std::size_t i = 0; i < panels.size(); ++i) {
        const int c = static_cast<int>(i) % columns;
        const int r = static_cast<int>(i) / columns;
        render_panel(out, panels[i], c * layout.panel_width, r * layout.panel_height, layout.panel_width,
                     layout.panel_height);
    }
    if (!layout.caption.empty()) {
        out += "<text x=\"8\" y=\"" + std::to_string(height - 8) +
               "\" font-family=\"sans-serif\" font-size=\"10\" fill=\"#555555\">" + escape(layout.caption) +
               "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

} // namespace emoa

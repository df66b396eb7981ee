#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "moonrel/curve.hpp"

namespace moonrel {

namespace detail {

inline std::string svg_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

inline std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c; break;
        }
    }
    return out;
}

}  // namespace detail

/**
 * Self-contained SVG line chart of reliability curves: linear axes labeled
 * "t (h)" and "R(t)", a legend, and one polyline per curve. The 1oo1/1oo1
 * reference, when present, is drawn solid black; the others cycle through
 * a fixed palette. No external assets.
 */
inline std::string render_curve_svg(const std::vector<ReliabilityCurve>& curves,
                                    int width = 800, int height = 520) {
    using detail::svg_num;
    using detail::xml_escape;

    static const char* kPalette[] = {"#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd",
                                     "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
    constexpr double kMarginLeft = 64.0, kMarginRight = 16.0;
    constexpr double kMarginTop = 20.0, kMarginBottom = 52.0;

    double t_max = 0.0;
    for (const ReliabilityCurve& c : curves)
        for (double t : c.t_grid)
            t_max = std::max(t_max, t);
    if (t_max <= 0.0)
        t_max = 1.0;

    const double plot_w = width - kMarginLeft - kMarginRight;
    const double plot_h = height - kMarginTop - kMarginBottom;
    const auto map_x = [&](double t) { return kMarginLeft + t / t_max * plot_w; };
    const auto map_y = [&](double r) { return kMarginTop + (1.0 - r) * plot_h; };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
        << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // Frame and grid lines with tick labels, 5 divisions per axis.
    svg << "  <g stroke=\"#d0d0d0\" stroke-width=\"1\">\n";
    for (int i = 1; i < 5; ++i) {
        const double gx = map_x(t_max * i / 5.0);
        const double gy = map_y(i / 5.0);
        svg << "    <line x1=\"" << svg_num(gx) << "\" y1=\"" << svg_num(map_y(1)) << "\" x2=\""
            << svg_num(gx) << "\" y2=\"" << svg_num(map_y(0)) << "\"/>\n";
        svg << "    <line x1=\"" << svg_num(kMarginLeft) << "\" y1=\"" << svg_num(gy)
            << "\" x2=\"" << svg_num(kMarginLeft + plot_w) << "\" y2=\"" << svg_num(gy)
            << "\"/>\n";
    }
    svg << "  </g>\n";
    svg << "  <rect x=\"" << svg_num(kMarginLeft) << "\" y=\"" << svg_num(kMarginTop)
        << "\" width=\"" << svg_num(plot_w) << "\" height=\"" << svg_num(plot_h)
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

    svg << "  <g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
    for (int i = 0; i <= 5; ++i) {
        const double t = t_max * i / 5.0;
        svg << "    <text x=\"" << svg_num(map_x(t)) << "\" y=\""
            << svg_num(map_y(0) + 16) << "\" text-anchor=\"middle\">" << svg_num(t)
            << "</text>\n";
        const double r = i / 5.0;
        svg << "    <text x=\"" << svg_num(kMarginLeft - 6) << "\" y=\""
            << svg_num(map_y(r) + 4) << "\" text-anchor=\"end\">" << svg_num(r)
            << "</text>\n";
    }
    svg << "  </g>\n";

    // Axis labels
    svg << "  <text x=\"" << svg_num(kMarginLeft + plot_w / 2) << "\" y=\""
        << svg_num(height - 12)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">t (h)</text>\n";
    svg << "  <text x=\"16\" y=\"" << svg_num(kMarginTop + plot_h / 2)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "transform=\"rotate(-90,16," << svg_num(kMarginTop + plot_h / 2)
        << ")\">R(t)</text>\n";

    // Curves; the reference stays black, everything else takes palette colors.
    std::size_t palette_next = 0;
    std::vector<std::string> colors;
    for (const ReliabilityCurve& c : curves) {
        std::string color = "black";
        if (c.label != "1oo1/1oo1")
            color = kPalette[palette_next++ % (sizeof(kPalette) / sizeof(kPalette[0]))];
        colors.push_back(color);
        svg << "  <polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < c.t_grid.size(); ++i) {
            if (i)
                svg << ' ';
            svg << svg_num(map_x(c.t_grid[i])) << ',' << svg_num(map_y(c.values[i]));
        }
        svg << "\"/>\n";
    }

    // Legend, top right.
    const double lx = kMarginLeft + plot_w - 150.0;
    const double ly = kMarginTop + 10.0;
    svg << "  <rect x=\"" << svg_num(lx) << "\" y=\"" << svg_num(ly) << "\" width=\"140\" "
        << "height=\"" << svg_num(8.0 + 16.0 * curves.size())
        << "\" fill=\"white\" fill-opacity=\"0.85\" stroke=\"#999\"/>\n";
    svg << "  <g font-family=\"sans-serif\" font-size=\"11\" fill=\"#111\">\n";
    for (std::size_t i = 0; i < curves.size(); ++i) {
        const double ey = ly + 14.0 + 16.0 * i;
        svg << "    <line x1=\"" << svg_num(lx + 8) << "\" y1=\"" << svg_num(ey - 4)
            << "\" x2=\"" << svg_num(lx + 30) << "\" y2=\"" << svg_num(ey - 4)
            << "\" stroke=\"" << colors[i] << "\" stroke-width=\"2\"/>\n";
        svg << "    <text x=\"" << svg_num(lx + 36) << "\" y=\"" << svg_num(ey) << "\">"
            << xml_escape(curves[i].label) << "</text>\n";
    }
    svg << "  </g>\n</svg>\n";
    return svg.str();
}

}  // namespace moonrel

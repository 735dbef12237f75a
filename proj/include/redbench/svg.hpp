#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "redbench/instance_redundancy.hpp"
#include "redbench/redundancy_matrix.hpp"

namespace redbench {
namespace svg {

inline std::string escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

// Fixed-precision, locale-independent number formatting keeps the output
// byte-identical across runs.
inline std::string num(double v, int decimals = 2) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    std::string s(buf);
    if (s == "-0" || s.rfind("-0.", 0) == 0) {
        bool all_zero = true;
        for (char c : s) {
            if (c != '-' && c != '0' && c != '.') all_zero = false;
        }
        if (all_zero) s.erase(0, 1);
    }
    return s;
}

// Diverging color scale with fixed anchors at -1 (blue), 0 (white) and
// +1 (red), so heatmaps from different benchmarks are directly comparable.
inline std::string diverging_color(double v) {
    struct Rgb {
        double r, g, b;
    };
    const Rgb lo{0x21 / 255.0, 0x66 / 255.0, 0xac / 255.0};
    const Rgb mid{0xf7 / 255.0, 0xf7 / 255.0, 0xf7 / 255.0};
    const Rgb hi{0xb2 / 255.0, 0x18 / 255.0, 0x2b / 255.0};
    v = std::clamp(v, -1.0, 1.0);
    Rgb a = (v < 0.0) ? lo : mid;
    Rgb b = (v < 0.0) ? mid : hi;
    double t = (v < 0.0) ? v + 1.0 : v;
    auto ch = [&](double x, double y) {
        int c = static_cast<int>(std::lround((x + (y - x) * t) * 255.0));
        return std::clamp(c, 0, 255);
    };
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", ch(a.r, b.r),
                  ch(a.g, b.g), ch(a.b, b.b));
    return buf;
}

struct HeatmapOptions {
    int cell_size = 36;
    bool show_values = true;
    std::string title;
};

namespace detail {

inline void open_document(std::string& out, int width, int height) {
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
           "width=\"" +
           std::to_string(width) + "\" height=\"" + std::to_string(height) +
           "\" viewBox=\"0 0 " + std::to_string(width) + " " +
           std::to_string(height) + "\">\n";
    out += "<defs><pattern id=\"hatch\" width=\"6\" height=\"6\" "
           "patternUnits=\"userSpaceOnUse\"><rect width=\"6\" height=\"6\" "
           "fill=\"#e8e8e8\"/><path d=\"M0,6 L6,0\" stroke=\"#999999\" "
           "stroke-width=\"1\"/></pattern></defs>\n";
    out += "<rect width=\"" + std::to_string(width) + "\" height=\"" +
           std::to_string(height) + "\" fill=\"#ffffff\"/>\n";
}

inline void text(std::string& out, double x, double y,
                 const std::string& content, const std::string& attrs = "") {
    out += "<text x=\"" + num(x, 1) + "\" y=\"" + num(y, 1) +
           "\" font-family=\"sans-serif\"" + attrs + ">" + escape(content) +
           "</text>\n";
}

inline int label_px(const std::vector<std::string>& ids) {
    std::size_t longest = 0;
    for (const auto& id : ids) longest = std::max(longest, id.size());
    return static_cast<int>(longest) * 7 + 12;
}

}  // namespace detail

// m x m correlation heatmap. Undefined cells are hatched; R2 values are
// clamped to [-1, 1] for display and the clamp is annotated.
inline std::string heatmap_svg(const RedundancyMatrix& matrix,
                               const HeatmapOptions& options = {}) {
    const std::size_t m = matrix.size();
    const int cs = options.cell_size;
    const int left = detail::label_px(matrix.item_ids);
    const int top = (options.title.empty() ? 10 : 34) +
                    detail::label_px(matrix.item_ids);
    const int grid = cs * static_cast<int>(m);
    const int legend_h = 46;
    const int width = left + grid + 20;
    const int height = top + grid + legend_h + 20;

    bool clamped = false;
    std::string out;
    detail::open_document(out, width, height);
    if (!options.title.empty()) {
        detail::text(out, left, 20, options.title,
                     " font-size=\"14\" font-weight=\"bold\"");
    }

    for (std::size_t i = 0; i < m; ++i) {
        // Row label (left) and column label (top, rotated).
        double ry = top + (static_cast<double>(i) + 0.65) * cs;
        detail::text(out, 4, ry, matrix.item_ids[i], " font-size=\"11\"");
        double cx = left + (static_cast<double>(i) + 0.65) * cs;
        out += "<text x=\"" + num(cx, 1) + "\" y=\"" + num(top - 6, 1) +
               "\" font-family=\"sans-serif\" font-size=\"11\" "
               "transform=\"rotate(-60 " +
               num(cx, 1) + " " + num(top - 6, 1) + ")\">" +
               escape(matrix.item_ids[i]) + "</text>\n";
    }

    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const CorrValue& v = matrix.cell(i, j);
            int x = left + static_cast<int>(j) * cs;
            int y = top + static_cast<int>(i) * cs;
            std::string fill;
            if (!v.defined) {
                fill = "url(#hatch)";
            } else {
                double shown = v.value;
                if (shown < -1.0 || shown > 1.0) clamped = true;
                fill = diverging_color(shown);
            }
            out += "<rect class=\"cell\" x=\"" + std::to_string(x) +
                   "\" y=\"" + std::to_string(y) + "\" width=\"" +
                   std::to_string(cs) + "\" height=\"" + std::to_string(cs) +
                   "\" fill=\"" + fill +
                   "\" stroke=\"#ffffff\" stroke-width=\"1\"/>\n";
            if (options.show_values && v.defined) {
                double shown = std::clamp(v.value, -1.0, 1.0);
                std::string color =
                    std::abs(shown) > 0.6 ? "#ffffff" : "#333333";
                detail::text(out, x + cs / 2.0, y + cs / 2.0 + 3.5,
                             num(shown, 2),
                             " font-size=\"9\" text-anchor=\"middle\" "
                             "fill=\"" +
                                 color + "\"");
            }
        }
    }

    // Legend: fixed diverging ramp with -1 / 0 / +1 ticks.
    int ly = top + grid + 14;
    int lw = std::min(grid, 180);
    out += "<defs><linearGradient id=\"ramp\" x1=\"0\" y1=\"0\" x2=\"1\" "
           "y2=\"0\"><stop offset=\"0\" stop-color=\"" +
           diverging_color(-1.0) + "\"/><stop offset=\"0.5\" stop-color=\"" +
           diverging_color(0.0) + "\"/><stop offset=\"1\" stop-color=\"" +
           diverging_color(1.0) + "\"/></linearGradient></defs>\n";
    out += "<rect x=\"" + std::to_string(left) + "\" y=\"" +
           std::to_string(ly) + "\" width=\"" + std::to_string(lw) +
           "\" height=\"10\" fill=\"url(#ramp)\" stroke=\"#999999\" "
           "stroke-width=\"0.5\"/>\n";
    detail::text(out, left, ly + 22, "-1", " font-size=\"10\"");
    detail::text(out, left + lw / 2.0, ly + 22, "0",
                 " font-size=\"10\" text-anchor=\"middle\"");
    detail::text(out, left + lw, ly + 22, "+1",
                 " font-size=\"10\" text-anchor=\"end\"");
    if (clamped) {
        detail::text(out, left + lw + 12, ly + 9,
                     "* values outside [-1,1] clamped for display",
                     " font-size=\"10\" fill=\"#666666\"");
    }
    out += "</svg>\n";
    return out;
}

struct BarOptions {
    int bar_width = 26;
    std::string title;
};

// Per-item redundancy bars on a fixed [-1, 1] scale with a zero baseline.
// Undefined items are drawn as hatched full-height markers.
inline std::string bar_svg(const std::vector<std::string>& item_ids,
                           const std::vector<CorrValue>& per_item,
                           const BarOptions& options = {}) {
    const std::size_t m = item_ids.size();
    const int bw = options.bar_width;
    const int gap = 10;
    const int plot_h = 180;
    const int top = options.title.empty() ? 16 : 40;
    const int left = 36;
    const int label_h = detail::label_px(item_ids);
    const int width = left + static_cast<int>(m) * (bw + gap) + 20;
    const int height = top + plot_h + label_h + 16;
    const double zero_y = top + plot_h / 2.0;

    std::string out;
    detail::open_document(out, width, height);
    if (!options.title.empty()) {
        detail::text(out, left, 22, options.title,
                     " font-size=\"14\" font-weight=\"bold\"");
    }
    for (int tick = -1; tick <= 1; ++tick) {
        double y = zero_y - tick * (plot_h / 2.0);
        out += "<line x1=\"" + std::to_string(left) + "\" y1=\"" + num(y, 1) +
               "\" x2=\"" + std::to_string(width - 16) + "\" y2=\"" +
               num(y, 1) + "\" stroke=\"" +
               (tick == 0 ? "#888888" : "#dddddd") +
               "\" stroke-width=\"1\"/>\n";
        detail::text(out, 4, y + 3.5, num(static_cast<double>(tick), 0),
                     " font-size=\"10\"");
    }
    for (std::size_t i = 0; i < m; ++i) {
        int x = left + static_cast<int>(i) * (bw + gap) + gap / 2;
        if (per_item[i].defined) {
            double v = std::clamp(per_item[i].value, -1.0, 1.0);
            double h = std::abs(v) * (plot_h / 2.0);
            double y = v >= 0.0 ? zero_y - h : zero_y;
            out += "<rect class=\"bar\" x=\"" + std::to_string(x) +
                   "\" y=\"" + num(y, 1) + "\" width=\"" + std::to_string(bw) +
                   "\" height=\"" + num(h, 1) +
                   "\" fill=\"#4393c3\"/>\n";
            double vy = v >= 0.0 ? y - 4 : y + h + 11;
            detail::text(out, x + bw / 2.0, vy, num(per_item[i].value, 3),
                         " font-size=\"9\" text-anchor=\"middle\"");
        } else {
            out += "<rect class=\"bar\" x=\"" + std::to_string(x) + "\" y=\"" +
                   std::to_string(top) + "\" width=\"" + std::to_string(bw) +
                   "\" height=\"" + std::to_string(plot_h) +
                   "\" fill=\"url(#hatch)\"/>\n";
        }
        double lx = x + bw / 2.0;
        double lyy = top + plot_h + 10.0;
        out += "<text x=\"" + num(lx, 1) + "\" y=\"" + num(lyy, 1) +
               "\" font-family=\"sans-serif\" font-size=\"10\" "
               "transform=\"rotate(60 " +
               num(lx, 1) + " " + num(lyy, 1) + ")\">" + escape(item_ids[i]) +
               "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

struct CurveOptions {
    std::string title;
};

// Mean-correlation curve over the sampling-ratio grid with +/- one sample
// standard deviation whiskers, the similarity-threshold rule, and a marker
// at the minimal sufficient ratio when one exists.
inline std::string curve_svg(const RedundancyCurve& curve,
                             const CurveOptions& options = {}) {
    const int left = 46;
    const int top = options.title.empty() ? 16 : 40;
    const int plot_w = 420;
    const int plot_h = 220;
    const int width = left + plot_w + 24;
    const int height = top + plot_h + 46;

    double y_min = 0.0;
    for (const CurvePoint& p : curve.points) {
        if (p.defined && p.mean_corr - p.std_corr < y_min) y_min = -1.0;
    }
    const double y_max = 1.0;
    auto sx = [&](double ratio) { return left + ratio * plot_w; };
    auto sy = [&](double v) {
        v = std::clamp(v, y_min, y_max);
        return top + (y_max - v) / (y_max - y_min) * plot_h;
    };

    std::string out;
    detail::open_document(out, width, height);
    if (!options.title.empty()) {
        detail::text(out, left, 22, options.title,
                     " font-size=\"14\" font-weight=\"bold\"");
    }
    // Axes and ticks.
    out += "<rect x=\"" + std::to_string(left) + "\" y=\"" +
           std::to_string(top) + "\" width=\"" + std::to_string(plot_w) +
           "\" height=\"" + std::to_string(plot_h) +
           "\" fill=\"none\" stroke=\"#888888\" stroke-width=\"1\"/>\n";
    for (int pct = 0; pct <= 100; pct += 20) {
        double x = sx(pct / 100.0);
        detail::text(out, x, top + plot_h + 16, std::to_string(pct) + "%",
                     " font-size=\"10\" text-anchor=\"middle\"");
    }
    const int y_ticks = (y_min < 0.0) ? 4 : 2;
    for (int t = 0; t <= y_ticks; ++t) {
        double v = y_min + (y_max - y_min) * t / y_ticks;
        detail::text(out, left - 6, sy(v) + 3.5, num(v, 1),
                     " font-size=\"10\" text-anchor=\"end\"");
    }
    detail::text(out, left + plot_w / 2.0, top + plot_h + 34,
                 "sampling ratio", " font-size=\"11\" text-anchor=\"middle\"");

    // Threshold rule.
    out += "<line class=\"threshold\" x1=\"" + std::to_string(left) +
           "\" y1=\"" + num(sy(curve.threshold), 1) + "\" x2=\"" +
           std::to_string(left + plot_w) + "\" y2=\"" +
           num(sy(curve.threshold), 1) +
           "\" stroke=\"#d6604d\" stroke-width=\"1\" "
           "stroke-dasharray=\"5,3\"/>\n";
    detail::text(out, left + plot_w + 3, sy(curve.threshold) + 3.5,
                 num(curve.threshold, 2), " font-size=\"10\" fill=\"#d6604d\"");

    // Whiskers, then the mean polyline and point markers.
    std::string polyline;
    for (const CurvePoint& p : curve.points) {
        if (!p.defined) continue;
        double x = sx(p.ratio);
        if (p.std_corr > 0.0) {
            out += "<line x1=\"" + num(x, 1) + "\" y1=\"" +
                   num(sy(p.mean_corr - p.std_corr), 1) + "\" x2=\"" +
                   num(x, 1) + "\" y2=\"" +
                   num(sy(p.mean_corr + p.std_corr), 1) +
                   "\" stroke=\"#b0c4de\" stroke-width=\"1.5\"/>\n";
        }
        polyline += num(x, 1) + "," + num(sy(p.mean_corr), 1) + " ";
    }
    if (!polyline.empty()) polyline.pop_back();
    out += "<polyline points=\"" + polyline +
           "\" fill=\"none\" stroke=\"#2166ac\" stroke-width=\"1.5\"/>\n";
    for (const CurvePoint& p : curve.points) {
        if (!p.defined) continue;
        out += "<circle class=\"pt\" cx=\"" + num(sx(p.ratio), 1) +
               "\" cy=\"" + num(sy(p.mean_corr), 1) +
               "\" r=\"2.5\" fill=\"#2166ac\"/>\n";
    }

    if (curve.minimal_sufficient_ratio.has_value()) {
        double x = sx(*curve.minimal_sufficient_ratio);
        out += "<line class=\"sufficient\" x1=\"" + num(x, 1) + "\" y1=\"" +
               std::to_string(top) + "\" x2=\"" + num(x, 1) + "\" y2=\"" +
               std::to_string(top + plot_h) +
               "\" stroke=\"#4daf4a\" stroke-width=\"1\" "
               "stroke-dasharray=\"3,3\"/>\n";
        detail::text(out, x, top - 4,
                     num(*curve.minimal_sufficient_ratio * 100.0, 0) + "%",
                     " font-size=\"10\" text-anchor=\"middle\" "
                     "fill=\"#4daf4a\"");
    }
    out += "</svg>\n";
    return out;
}

}  // namespace svg
}  // namespace redbench

#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace drplab_cli {

namespace {

constexpr double width = 640.0, height = 420.0;
constexpr double left = 72.0, right = 24.0, top = 36.0, bottom = 56.0;

std::string fmt(const char* pattern, double a, double b = 0.0) {
    char buf[128];
    std::snprintf(buf, sizeof buf, pattern, a, b);
    return buf;
}

}  // namespace

std::string semilog_svg(const std::vector<double>& values, const std::string& title,
                        const std::string& x_label, const std::string& y_label) {
    double lo = 0.0, hi = 0.0;
    bool any = false;
    for (double v : values) {
        if (v <= 0.0 || !std::isfinite(v)) continue;
        lo = any ? std::min(lo, v) : v;
        hi = any ? std::max(hi, v) : v;
        any = true;
    }
    if (!any) {
        lo = 1e-1;
        hi = 1e1;
    }
    double dec_lo = std::floor(std::log10(lo));
    double dec_hi = std::ceil(std::log10(hi));
    if (dec_hi - dec_lo < 1.0) dec_hi = dec_lo + 1.0;

    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;
    const double x_max = values.size() > 1 ? static_cast<double>(values.size() - 1) : 1.0;
    auto x_of = [&](double k) { return left + plot_w * k / x_max; };
    auto y_of = [&](double v) {
        return top + plot_h * (dec_hi - std::log10(v)) / (dec_hi - dec_lo);
    };

    std::string svg = fmt(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\">\n", width,
        height);
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + fmt("%.0f", width / 2.0) +
           "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" +
           title + "</text>\n";

    // Decade gridlines and y labels.
    for (double dec = dec_lo; dec <= dec_hi + 0.5; dec += 1.0) {
        const double y = y_of(std::pow(10.0, dec));
        svg += fmt("<line x1=\"%.1f\" y1=\"%.1f\" ", left, y) +
               fmt("x2=\"%.1f\" y2=\"%.1f\" stroke=\"#dddddd\"/>\n", width - right, y);
        svg += fmt("<text x=\"%.1f\" y=\"%.1f\" ", left - 8.0, y + 4.0) +
               "text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">1e" +
               fmt("%.0f", dec) + "</text>\n";
    }

    // Integer x ticks, at most ~10.
    const auto count = static_cast<long>(x_max);
    const long stride = std::max(1L, (count + 9) / 10);
    for (long k = 0; k <= count; k += stride) {
        const double x = x_of(static_cast<double>(k));
        svg += fmt("<line x1=\"%.1f\" y1=\"%.1f\" ", x, height - bottom) +
               fmt("x2=\"%.1f\" y2=\"%.1f\" stroke=\"#999999\"/>\n", x, height - bottom + 5.0);
        svg += fmt("<text x=\"%.1f\" y=\"%.1f\" ", x, height - bottom + 18.0) +
               "text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
               std::to_string(k) + "</text>\n";
    }

    // Axes.
    svg += fmt("<line x1=\"%.1f\" y1=\"%.1f\" ", left, top) +
           fmt("x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n", left, height - bottom);
    svg += fmt("<line x1=\"%.1f\" y1=\"%.1f\" ", left, height - bottom) +
           fmt("x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n", width - right, height - bottom);
    svg += "<text x=\"" + fmt("%.0f", left + plot_w / 2.0) + "\" y=\"" +
           fmt("%.0f", height - 12.0) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" + x_label +
           "</text>\n";
    svg += "<text x=\"16\" y=\"" + fmt("%.0f", top + plot_h / 2.0) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
           "transform=\"rotate(-90 16 " +
           fmt("%.0f", top + plot_h / 2.0) + ")\">" + y_label + "</text>\n";

    // The data polyline, skipping non-positive samples.
    std::string points;
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (values[k] <= 0.0 || !std::isfinite(values[k])) continue;
        points += fmt("%.2f,%.2f ", x_of(static_cast<double>(k)), y_of(values[k]));
    }
    if (!points.empty()) {
        points.pop_back();
        svg += "<polyline fill=\"none\" stroke=\"#1f6fb5\" stroke-width=\"1.5\" points=\"" +
               points + "\"/>\n";
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace drplab_cli

#include "refcast/plot.hpp"

#include "refcast/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace refcast::plot {

namespace {

constexpr double kWidth = 640, kHeight = 400;
constexpr double kMarginL = 70, kMarginR = 20, kMarginT = 40, kMarginB = 50;

const char* kColors[] = {"#1f6fb2", "#c23b22", "#3a923a", "#8a6d3b"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

} // namespace

std::string svg_line_chart(const std::string& title, const std::string& x_label,
                           const std::string& y_label, const std::vector<Series>& series) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : series)
        for (const auto& [x, y] : s.points) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    if (!(xmin <= xmax)) { xmin = 0; xmax = 1; ymin = 0; ymax = 1; }
    if (xmin == xmax) { xmin -= 0.5; xmax += 0.5; }
    if (ymin == ymax) { ymin -= 0.5; ymax += 0.5; }

    const double plot_w = kWidth - kMarginL - kMarginR;
    const double plot_h = kHeight - kMarginT - kMarginB;
    auto px = [&](double x) { return kMarginL + (x - xmin) / (xmax - xmin) * plot_w; };
    auto py = [&](double y) { return kHeight - kMarginB - (y - ymin) / (ymax - ymin) * plot_h; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " + fmt(kWidth) + " " +
           fmt(kHeight) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + fmt(kWidth / 2) + "\" y=\"24\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"15\">" + escape(title) + "</text>\n";

    // axes
    svg += "<line x1=\"" + fmt(kMarginL) + "\" y1=\"" + fmt(kHeight - kMarginB) + "\" x2=\"" +
           fmt(kWidth - kMarginR) + "\" y2=\"" + fmt(kHeight - kMarginB) +
           "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + fmt(kMarginL) + "\" y1=\"" + fmt(kMarginT) + "\" x2=\"" +
           fmt(kMarginL) + "\" y2=\"" + fmt(kHeight - kMarginB) + "\" stroke=\"black\"/>\n";

    // min/max tick labels
    auto tick = [&](double x, double y, const std::string& text, const char* anchor) {
        return "<text x=\"" + fmt(x) + "\" y=\"" + fmt(y) + "\" text-anchor=\"" + anchor +
               "\" font-family=\"sans-serif\" font-size=\"11\">" + text + "</text>\n";
    };
    svg += tick(px(xmin), kHeight - kMarginB + 16, fmt(xmin), "middle");
    svg += tick(px(xmax), kHeight - kMarginB + 16, fmt(xmax), "middle");
    svg += tick(kMarginL - 6, py(ymin) + 4, fmt(ymin), "end");
    svg += tick(kMarginL - 6, py(ymax) + 4, fmt(ymax), "end");
    svg += tick(kWidth / 2, kHeight - 12, escape(x_label), "middle");
    svg += "<text x=\"16\" y=\"" + fmt(kHeight / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
           "transform=\"rotate(-90 16 " + fmt(kHeight / 2) + ")\">" + escape(y_label) +
           "</text>\n";

    std::size_t color = 0;
    double legend_y = kMarginT + 6;
    for (const auto& s : series) {
        if (s.points.empty()) continue;
        std::string pts;
        for (const auto& [x, y] : s.points) {
            if (!pts.empty()) pts += ' ';
            pts += fmt(px(x)) + "," + fmt(py(y));
        }
        const char* c = kColors[color % 4];
        svg += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + c +
               "\" stroke-width=\"1.5\"" + (s.dashed ? " stroke-dasharray=\"5,4\"" : "") +
               "/>\n";
        if (!s.label.empty()) {
            svg += "<text x=\"" + fmt(kWidth - kMarginR - 4) + "\" y=\"" + fmt(legend_y) +
                   "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" +
                   c + "\">" + escape(s.label) + "</text>\n";
            legend_y += 14;
        }
        ++color;
    }
    svg += "</svg>\n";
    return svg;
}

std::string xy_csv(const std::string& x_name, const std::string& y_name,
                   const std::vector<std::pair<double, double>>& points) {
    std::string out = x_name + "," + y_name + "\n";
    for (const auto& [x, y] : points)
        out += csv::num_to_string(x) + "," + csv::num_to_string(y) + "\n";
    return out;
}

} // namespace refcast::plot

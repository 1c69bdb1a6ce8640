#pragma once

#include <string>
#include <utility>
#include <vector>

namespace refcast::plot {

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;
    bool dashed = false;
};

// Standalone SVG line chart; axes auto-scaled to the data with min/max
// tick labels. Output is deterministic (fixed float formatting).
std::string svg_line_chart(const std::string& title, const std::string& x_label,
                           const std::string& y_label, const std::vector<Series>& series);

// "x,y" CSV for the same points, so plots diff as text.
std::string xy_csv(const std::string& x_name, const std::string& y_name,
                   const std::vector<std::pair<double, double>>& points);

} // namespace refcast::plot

#pragma once
/** @file svg.hpp
 *  @brief Self-contained SVG line charts with interval whiskers.
 */

#include <string>
#include <vector>

#include "sumfree/experiments.hpp"

namespace sumfree {

struct ChartPoint {
    double x = 0;
    double y = 0;
    double lo = 0; // whisker bottom
    double hi = 0; // whisker top
};

struct ChartSeries {
    std::string label;
    std::vector<ChartPoint> points; // drawn in x order
};

struct ChartLabels {
    std::string title;
    std::string x_axis;
    std::string y_axis;
};

std::string render_line_chart(const std::vector<ChartSeries>& series, const ChartLabels& labels);

/// One series per n: estimate against C (or p for explicit-p sweeps) with the Wilson interval.
std::vector<ChartSeries> estimate_series(const SweepSummary& s);

} // namespace sumfree

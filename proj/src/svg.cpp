#include "sumfree/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace sumfree {

namespace {

constexpr double width = 720, height = 460;
constexpr double left = 70, right = 150, top = 40, bottom = 60;
const char* const palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string escape(const std::string& s)
{
    std::string out;
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

std::string num(double v)
{
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

} // namespace

std::string render_line_chart(const std::vector<ChartSeries>& series, const ChartLabels& labels)
{
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = 0, ymax = 1;
    for (const auto& s : series)
        for (const auto& p : s.points) {
            xmin = std::min(xmin, p.x);
            xmax = std::max(xmax, p.x);
            ymin = std::min({ymin, p.y, p.lo});
            ymax = std::max({ymax, p.y, p.hi});
        }
    if (!std::isfinite(xmin)) xmin = 0, xmax = 1;
    if (xmax == xmin) xmin -= 0.5, xmax += 0.5;
    const double pw = width - left - right, ph = height - top - bottom;
    auto sx = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
    auto sy = [&](double y) { return top + (1 - (y - ymin) / (ymax - ymin)) * ph; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(labels.title)
       << "</text>\n";

    // axes and ticks
    os << "<g stroke=\"black\" fill=\"none\">\n";
    os << "<line x1=\"" << left << "\" y1=\"" << top + ph << "\" x2=\"" << left + pw << "\" y2=\"" << top + ph << "\"/>\n";
    os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + ph << "\"/>\n";
    os << "</g>\n";
    constexpr int ticks = 5;
    for (int i = 0; i <= ticks; ++i) {
        const double xv = xmin + (xmax - xmin) * i / ticks, yv = ymin + (ymax - ymin) * i / ticks;
        os << "<line x1=\"" << num(sx(xv)) << "\" y1=\"" << top + ph << "\" x2=\"" << num(sx(xv)) << "\" y2=\""
           << top + ph + 5 << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << num(sx(xv)) << "\" y=\"" << top + ph + 19 << "\" text-anchor=\"middle\">" << num(xv)
           << "</text>\n";
        os << "<line x1=\"" << left - 5 << "\" y1=\"" << num(sy(yv)) << "\" x2=\"" << left << "\" y2=\"" << num(sy(yv))
           << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << left - 8 << "\" y=\"" << num(sy(yv) + 4) << "\" text-anchor=\"end\">" << num(yv)
           << "</text>\n";
    }
    os << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 15 << "\" text-anchor=\"middle\">"
       << escape(labels.x_axis) << "</text>\n";
    os << "<text x=\"18\" y=\"" << top + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << top + ph / 2
       << ")\">" << escape(labels.y_axis) << "</text>\n";

    for (std::size_t i = 0; i < series.size(); ++i) {
        const char* color = palette[i % std::size(palette)];
        auto pts = series[i].points;
        std::sort(pts.begin(), pts.end(), [](const ChartPoint& a, const ChartPoint& b) { return a.x < b.x; });
        os << "<g stroke=\"" << color << "\" fill=\"" << color << "\">\n";
        os << "<polyline fill=\"none\" stroke-width=\"2\" points=\"";
        for (std::size_t j = 0; j < pts.size(); ++j) os << (j ? " " : "") << num(sx(pts[j].x)) << ',' << num(sy(pts[j].y));
        os << "\"/>\n";
        for (const auto& p : pts) {
            const double x = sx(p.x);
            os << "<line x1=\"" << num(x) << "\" y1=\"" << num(sy(p.lo)) << "\" x2=\"" << num(x) << "\" y2=\""
               << num(sy(p.hi)) << "\"/>\n";
            for (double yv : {p.lo, p.hi})
                os << "<line x1=\"" << num(x - 4) << "\" y1=\"" << num(sy(yv)) << "\" x2=\"" << num(x + 4) << "\" y2=\""
                   << num(sy(yv)) << "\"/>\n";
            os << "<circle cx=\"" << num(x) << "\" cy=\"" << num(sy(p.y)) << "\" r=\"3\"/>\n";
        }
        const double ly = top + 10 + 20 * static_cast<double>(i);
        os << "<line x1=\"" << left + pw + 15 << "\" y1=\"" << ly << "\" x2=\"" << left + pw + 40 << "\" y2=\"" << ly
           << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << left + pw + 45 << "\" y=\"" << ly + 4 << "\" stroke=\"none\" fill=\"black\">"
           << escape(series[i].label) << "</text>\n";
        os << "</g>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::vector<ChartSeries> estimate_series(const SweepSummary& s)
{
    std::map<std::pair<std::string, std::int64_t>, ChartSeries> by_n;
    for (const auto& pt : s.points) {
        auto& series = by_n[{pt.group, pt.n}];
        if (series.label.empty()) series.label = "n = " + std::to_string(pt.n);
        series.points.push_back({pt.C ? *pt.C : pt.p, pt.estimate, pt.ci.lo, pt.ci.hi});
    }
    std::vector<ChartSeries> out;
    for (auto& [key, series] : by_n) out.push_back(std::move(series));
    return out;
}

} // namespace sumfree

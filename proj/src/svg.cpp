#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <vector>

#include "noisemod/sweep.hpp"

namespace noisemod {

namespace {

constexpr double kWidth = 860, kHeight = 560;
constexpr double kLeft = 80, kRight = 250, kTop = 50, kBottom = 60;
constexpr double kFloor = 1e-12;  // display floor of the log axis

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                          "#8c564b", "#17becf", "#7f7f7f", "#bcbd22", "#e377c2"};

struct PlottedSeries {
    std::string series;
    CurveKind kind;
    std::vector<const SweepPoint*> points;
};

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

std::string render_svg(const SweepResult& result, const std::string& title) {
    std::map<std::pair<std::string, int>, std::size_t> index;
    std::vector<PlottedSeries> groups;
    for (const auto& row : result.rows) {
        const auto key = std::make_pair(row.series, static_cast<int>(row.kind));
        auto [it, inserted] = index.try_emplace(key, groups.size());
        if (inserted) groups.push_back(PlottedSeries{row.series, row.kind, {}});
        groups[it->second].points.push_back(&row);
    }

    double xmin = 0, xmax = 1, ymin_log = -4, ymax_log = 0;
    bool have = false;
    for (const auto& g : groups)
        for (const auto* p : g.points) {
            if (!std::isfinite(p->value) || p->value <= 0.0) continue;
            const double ylog = std::log10(std::max(p->value, kFloor));
            if (!have) {
                xmin = xmax = p->axis_value;
                ymin_log = ymax_log = ylog;
                have = true;
            } else {
                xmin = std::min(xmin, p->axis_value);
                xmax = std::max(xmax, p->axis_value);
                ymin_log = std::min(ymin_log, ylog);
                ymax_log = std::max(ymax_log, ylog);
            }
        }
    if (!have) xmax = xmin + 1;
    if (xmax == xmin) xmax = xmin + 1;
    ymin_log = std::floor(std::max(ymin_log, std::log10(kFloor)));
    ymax_log = std::ceil(ymax_log);
    if (ymax_log - ymin_log < 1) ymax_log = ymin_log + 1;

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    const auto sx = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * plot_w; };
    const auto sy = [&](double v) {
        const double ylog = std::log10(std::clamp(v, kFloor, 1.0));
        return kTop + (ymax_log - ylog) / (ymax_log - ymin_log) * plot_h;
    };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
       << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"28\" text-anchor=\"middle\" "
       << "font-family=\"sans-serif\" font-size=\"17\">" << title << "</text>\n";

    // decade gridlines
    for (double d = ymin_log; d <= ymax_log + 0.5; d += 1.0) {
        const double y = kTop + (ymax_log - d) / (ymax_log - ymin_log) * plot_h;
        os << "<line x1=\"" << kLeft << "\" y1=\"" << y << "\" x2=\"" << kLeft + plot_w
           << "\" y2=\"" << y << "\" stroke=\"#dddddd\"/>\n";
        os << "<text x=\"" << kLeft - 8 << "\" y=\"" << y + 4
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">1e"
           << static_cast<int>(d) << "</text>\n";
    }
    // x ticks on the sweep grid values (thinned to at most ~12 labels)
    std::vector<double> xticks;
    for (const auto& row : result.rows)
        if (std::find(xticks.begin(), xticks.end(), row.axis_value) == xticks.end())
            xticks.push_back(row.axis_value);
    std::sort(xticks.begin(), xticks.end());
    const std::size_t stride = std::max<std::size_t>(1, xticks.size() / 12);
    for (std::size_t i = 0; i < xticks.size(); i += stride) {
        const double x = sx(xticks[i]);
        os << "<line x1=\"" << x << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << x << "\" y2=\""
           << kTop + plot_h + 5 << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << x << "\" y=\"" << kTop + plot_h + 20
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
           << fmt(xticks[i]) << "</text>\n";
    }
    os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w << "\" height=\""
       << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";
    os << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 16
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
       << (result.axis == SweepAxis::DeltaDb ? "delta (dB)" : "samples per bit N") << "</text>\n";
    os << "<text transform=\"rotate(-90 22 " << kTop + plot_h / 2 << ")\" x=\"22\" y=\""
       << kTop + plot_h / 2
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
       << "bit error probability / rate</text>\n";

    std::size_t color_index = 0;
    std::map<std::string, std::string> series_color;
    double legend_y = kTop + 10;
    for (const auto& g : groups) {
        auto [it, inserted] = series_color.try_emplace(
            g.series, kPalette[color_index % (sizeof kPalette / sizeof *kPalette)]);
        if (inserted) ++color_index;
        const std::string& color = it->second;
        const char* dash = g.kind == CurveKind::Reference ? " stroke-dasharray=\"6 4\"" : "";

        if (g.kind == CurveKind::Sim) {
            for (const auto* p : g.points) {
                if (!std::isfinite(p->value) || p->value <= 0.0) continue;
                const double x = sx(p->axis_value), y = sy(p->value);
                if (p->ci_low && p->ci_high && *p->ci_low > 0.0)
                    os << "<line x1=\"" << x << "\" y1=\"" << sy(*p->ci_low) << "\" x2=\"" << x
                       << "\" y2=\"" << sy(*p->ci_high) << "\" stroke=\"" << color << "\"/>\n";
                os << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"3.5\" stroke=\"" << color
                   << "\" fill=\"" << (p->censored ? "white" : color) << "\"/>\n";
            }
        } else {
            os << "<polyline fill=\"none\" stroke=\"" << color << "\"" << dash << " points=\"";
            for (const auto* p : g.points)
                if (std::isfinite(p->value) && p->value > 0.0)
                    os << sx(p->axis_value) << ',' << sy(p->value) << ' ';
            os << "\"/>\n";
        }

        const double lx = kLeft + plot_w + 18;
        os << "<line x1=\"" << lx << "\" y1=\"" << legend_y << "\" x2=\"" << lx + 26 << "\" y2=\""
           << legend_y << "\" stroke=\"" << color << "\"" << dash << "/>\n";
        if (g.kind == CurveKind::Sim)
            os << "<circle cx=\"" << lx + 13 << "\" cy=\"" << legend_y << "\" r=\"3.5\" fill=\""
               << color << "\"/>\n";
        os << "<text x=\"" << lx + 32 << "\" y=\"" << legend_y + 4
           << "\" font-family=\"sans-serif\" font-size=\"12\">" << g.series << " ("
           << curve_kind_name(g.kind) << ")</text>\n";
        legend_y += 18;
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace noisemod

#include "trp/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace trp {

void write_backtest_json(std::ostream& out, const BacktestReport& report) {
    nlohmann::json j;
    j["eval_start"] = report.eval_start;
    for (const auto& run : report.runs) {
        const char* name = strategy_name(run.strategy);
        j["final_wealth"][name] = run.curve.final_wealth();
        j["trade_count"][name] = run.curve.events.size();
        j["total_cost"][name] = run.curve.total_cost();
    }
    j["trp_choices"] = nlohmann::json::array();
    for (const auto& c : report.choices) {
        j["trp_choices"].push_back(
            {{"block_start", c.block_start}, {"b", c.b}, {"eps", c.eps}, {"es", c.es}});
    }
    out << j.dump(2) << "\n";
}

void write_backtest_json_file(const std::string& path, const BacktestReport& report) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open '" + path + "' for writing");
    write_backtest_json(out, report);
}

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

}  // namespace

void write_curves_svg(std::ostream& out, const std::vector<NamedCurve>& curves) {
    const double width = 960, height = 540;
    const double ml = 70, mr = 20, mt = 20, mb = 45;
    const double pw = width - ml - mr, ph = height - mt - mb;

    std::size_t n = 0;
    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (const auto& c : curves) {
        n = std::max(n, c.wealth->size());
        for (double w : *c.wealth) {
            double lw = std::log10(std::max(w, 1e-12));
            if (first) {
                lo = hi = lw;
                first = false;
            } else {
                lo = std::min(lo, lw);
                hi = std::max(hi, lw);
            }
        }
    }
    if (n < 2 || first) throw std::invalid_argument("svg: nothing to plot");
    if (hi - lo < 0.1) {
        hi += 0.05;
        lo -= 0.05;
    }

    auto xpos = [&](std::size_t t) {
        return ml + pw * static_cast<double>(t) / static_cast<double>(n - 1);
    };
    auto ypos = [&](double w) {
        double lw = std::log10(std::max(w, 1e-12));
        return mt + ph * (1.0 - (lw - lo) / (hi - lo));
    };

    char buf[256];
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // horizontal gridlines at decades
    for (int d = static_cast<int>(std::ceil(lo)); d <= static_cast<int>(std::floor(hi)); ++d) {
        double y = mt + ph * (1.0 - (d - lo) / (hi - lo));
        std::snprintf(buf, sizeof buf,
                      "<line x1=\"%.1f\" y1=\"%.2f\" x2=\"%.1f\" y2=\"%.2f\" "
                      "stroke=\"#dddddd\"/>\n",
                      ml, y, ml + pw, y);
        out << buf;
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%.1f\" y=\"%.2f\" font-size=\"12\" text-anchor=\"end\" "
                      "fill=\"#333333\">1e%d</text>\n",
                      ml - 6, y + 4, d);
        out << buf;
    }
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#333333\"/>\n",
                  ml, mt + ph, ml + pw, mt + ph);
    out << buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"12\" text-anchor=\"middle\" "
                  "fill=\"#333333\">period</text>\n",
                  ml + pw / 2, height - 12.0);
    out << buf;

    for (std::size_t ci = 0; ci < curves.size(); ++ci) {
        const auto& c = curves[ci];
        out << "<polyline fill=\"none\" stroke=\"" << kPalette[ci % 6]
            << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t t = 0; t < c.wealth->size(); ++t) {
            std::snprintf(buf, sizeof buf, "%.2f,%.2f ", xpos(t), ypos((*c.wealth)[t]));
            out << buf;
        }
        out << "\"/>\n";
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%.1f\" y=\"%.1f\" font-size=\"13\" fill=\"%s\">%s</text>\n",
                      ml + 10, mt + 18.0 + 16.0 * static_cast<double>(ci), kPalette[ci % 6],
                      c.name.c_str());
        out << buf;
    }
    out << "</svg>\n";
}

void write_curves_svg_file(const std::string& path, const std::vector<NamedCurve>& curves) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open '" + path + "' for writing");
    write_curves_svg(out, curves);
}

}  // namespace trp

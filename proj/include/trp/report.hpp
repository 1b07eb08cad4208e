#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "trp/backtest.hpp"

namespace trp {

// JSON summary of a backtest: final wealth, trade count and total cost per
// strategy, plus the per-block TRP choices.
void write_backtest_json(std::ostream& out, const BacktestReport& report);
void write_backtest_json_file(const std::string& path, const BacktestReport& report);

struct NamedCurve {
    std::string name;
    const std::vector<double>* wealth;  // starts at 1
};

// Standalone SVG line chart of wealth curves (log-scale y).
void write_curves_svg(std::ostream& out, const std::vector<NamedCurve>& curves);
void write_curves_svg_file(const std::string& path, const std::vector<NamedCurve>& curves);

}  // namespace trp

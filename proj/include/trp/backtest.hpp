#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trp/engine.hpp"
#include "trp/market.hpp"
#include "trp/optimizer.hpp"

namespace trp {

enum class Strategy { trp, crp, scrp, buy_and_hold, cover };

const char* strategy_name(Strategy s);

// Sliding-window protocol: estimate over each trailing window, optimize
// (b, eps), trade the result over the next window; baselines run statically
// on the same out-of-sample span.
struct BacktestConfig {
    std::size_t window = 200;
    std::size_t horizon = 20;  // objective horizon inside the optimizer
    double cost = 0.0;
    SearchGrid grid;
    std::vector<Strategy> strategies = {Strategy::trp, Strategy::crp, Strategy::scrp,
                                        Strategy::buy_and_hold, Strategy::cover};
    std::uint64_t seed = 0;
    std::size_t scrp_interval = 5;
    std::size_t cover_grid_size = 21;
    double baseline_b = 0.5;
    QmcParams qmc;
    EwOptions ew;
};

struct TrpBlockChoice {
    std::size_t block_start = 0;  // 0-based period index in the full series
    double b = 0.0;
    double eps = 0.0;
    double es = 0.0;
};

struct StrategyRun {
    Strategy strategy;
    WealthCurve curve;  // over the evaluation span, wealth[0] = 1
};

struct BacktestReport {
    std::size_t eval_start = 0;  // first evaluated period (0-based)
    std::vector<StrategyRun> runs;
    std::vector<TrpBlockChoice> choices;

    const StrategyRun& run(Strategy s) const;
};

BacktestReport sliding_backtest(const PriceRelativeSeries& series, const BacktestConfig& config);

// Cover-style universal portfolio baseline: wealth-weighted mixture over a
// grid of constant rebalanced experts; the induced trades are costed like
// every other strategy.
WealthCurve run_cover_up(const std::vector<double>& b_grid, double c,
                         const PriceRelativeSeries& series);

// Uniform grid of m expert fractions spanning [0, 1].
std::vector<double> uniform_b_grid(std::size_t m);

}  // namespace trp

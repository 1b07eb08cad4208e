#include "trp/backtest.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "trp/estimation.hpp"

namespace trp {

const char* strategy_name(Strategy s) {
    switch (s) {
        case Strategy::trp: return "trp";
        case Strategy::crp: return "crp";
        case Strategy::scrp: return "scrp";
        case Strategy::buy_and_hold: return "buy_and_hold";
        case Strategy::cover: return "cover";
    }
    return "?";
}

const StrategyRun& BacktestReport::run(Strategy s) const {
    for (const auto& r : runs) {
        if (r.strategy == s) return r;
    }
    throw std::out_of_range("backtest report has no such strategy");
}

std::vector<double> uniform_b_grid(std::size_t m) {
    if (m < 1) throw std::invalid_argument("uniform_b_grid: need at least one expert");
    std::vector<double> grid(m);
    if (m == 1) {
        grid[0] = 0.5;
        return grid;
    }
    for (std::size_t j = 0; j < m; ++j) {
        grid[j] = static_cast<double>(j) / static_cast<double>(m - 1);
    }
    return grid;
}

WealthCurve run_cover_up(const std::vector<double>& b_grid, double c,
                         const PriceRelativeSeries& series) {
    if (b_grid.empty()) throw std::invalid_argument("run_cover_up: empty expert grid");

    WealthCurve curve;
    curve.wealth.reserve(series.size() + 1);
    curve.wealth.push_back(1.0);

    // Cost-free expert wealths drive the mixture weights.
    std::vector<double> expert_wealth(b_grid.size(), 1.0);
    auto mixture_target = [&]() {
        double num = 0.0, den = 0.0;
        for (std::size_t j = 0; j < b_grid.size(); ++j) {
            num += expert_wealth[j] * b_grid[j];
            den += expert_wealth[j];
        }
        return num / den;
    };

    Holdings book(mixture_target());
    for (std::size_t t = 0; t < series.size(); ++t) {
        book.grow(series.x1(t), series.x2(t));
        for (std::size_t j = 0; j < b_grid.size(); ++j) {
            expert_wealth[j] *= b_grid[j] * series.x1(t) + (1.0 - b_grid[j]) * series.x2(t);
        }
        double target = mixture_target();
        double f = book.fraction();
        if (std::fabs(f - target) > 0.0) {
            CrossSide side = f > target ? CrossSide::upper : CrossSide::lower;
            double cost = book.rebalance(target, c);
            curve.events.push_back({t + 1, side, cost});
        }
        curve.wealth.push_back(book.wealth());
    }
    return curve;
}

namespace {

// TRP execution with per-block re-optimized parameters; holdings and wealth
// carried across blocks. Adopting a different (b, eps) at a block start
// forces a costed rebalance to the new target.
StrategyRun run_sequential_trp(const PriceRelativeSeries& series, const BacktestConfig& config,
                               std::vector<TrpBlockChoice>& choices) {
    StrategyRun out{Strategy::trp, {}};
    WealthCurve& curve = out.curve;
    curve.wealth.push_back(1.0);

    const std::size_t n = series.size();
    const std::size_t w = config.window;

    double b = 0.0, eps = 0.0;
    bool have_config = false;
    Holdings book(0.5);

    for (std::size_t t = w; t < n; ++t) {
        if ((t - w) % w == 0) {  // block boundary: refit on the trailing window
            MleEstimate est = mle(series.slice(t - w, t));
            LogNormalParams params = est.to_params();
            Optimum opt = optimize(params, config.horizon, config.cost, config.grid, config.qmc,
                                   config.ew);
            choices.push_back({t, opt.b_star, opt.eps_star, opt.es_star});
            if (!have_config) {
                book = Holdings(opt.b_star);
                b = opt.b_star;
                eps = opt.eps_star;
                have_config = true;
            } else if (opt.b_star != b || opt.eps_star != eps) {
                double f = book.fraction();
                if (std::fabs(f - opt.b_star) > 0.0) {
                    CrossSide side = f > opt.b_star ? CrossSide::upper : CrossSide::lower;
                    double cost = book.rebalance(opt.b_star, config.cost);
                    curve.events.push_back({t - w + 1, side, cost});
                }
                b = opt.b_star;
                eps = opt.eps_star;
            }
        }

        book.grow(series.x1(t), series.x2(t));
        double f = book.fraction();
        if (f >= b + eps || f <= b - eps) {
            CrossSide side = f >= b + eps ? CrossSide::upper : CrossSide::lower;
            if (std::fabs(f - b) > 0.0) {
                double cost = book.rebalance(b, config.cost);
                curve.events.push_back({t - w + 1, side, cost});
            }
        }
        curve.wealth.push_back(book.wealth());
    }
    return out;
}

}  // namespace

BacktestReport sliding_backtest(const PriceRelativeSeries& series, const BacktestConfig& config) {
    if (config.window < 2) throw std::invalid_argument("backtest: window must be >= 2");
    if (series.size() < 2 * config.window) {
        throw std::invalid_argument("backtest: series must cover at least two windows");
    }

    BacktestReport report;
    report.eval_start = config.window;
    PriceRelativeSeries eval_span = series.slice(config.window, series.size());

    for (Strategy s : config.strategies) {
        switch (s) {
            case Strategy::trp:
                report.runs.push_back(run_sequential_trp(series, config, report.choices));
                break;
            case Strategy::crp:
                report.runs.push_back(
                    {s, run_crp(config.baseline_b, config.cost, eval_span)});
                break;
            case Strategy::scrp:
                report.runs.push_back({s, run_scrp(config.baseline_b, config.scrp_interval,
                                                   config.cost, eval_span)});
                break;
            case Strategy::buy_and_hold:
                report.runs.push_back({s, run_buy_and_hold(config.baseline_b, eval_span)});
                break;
            case Strategy::cover:
                report.runs.push_back(
                    {s, run_cover_up(uniform_b_grid(config.cover_grid_size), config.cost,
                                     eval_span)});
                break;
        }
    }
    return report;
}

}  // namespace trp

#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "trp/market.hpp"

namespace trp {

// Threshold-rebalanced strategy: target fraction b in the first stock, no-trade
// band (b-eps, b+eps), proportional cost fraction c per unit traded (combined
// sell + buy rate).
struct TrpConfig {
    double b = 0.5;
    double eps = 0.0;
    double c = 0.0;

    TrpConfig(double b_, double eps_, double c_);
};

// Constants induced by a TRP configuration. gamma/theta are the crossing
// thresholds of the ratio walk Pi2/Pi1 and its logarithm; an unreachable
// boundary is mapped to an infinite theta. The zeta pairs are the
// cost-adjusted gain coefficients: `up` applies when the b+eps boundary is
// hit, `dn` when b-eps is hit. Each pair sums to 1.
struct TrpDerived {
    double gamma1 = 0.0;  // ratio level at which b-eps is crossed
    double gamma2 = 0.0;  // ratio level at which b+eps is crossed
    double theta1 = 0.0;  // ln gamma1
    double theta2 = 0.0;  // ln gamma2
    double zeta1_up = 0.0, zeta2_up = 0.0;
    double zeta1_dn = 0.0, zeta2_dn = 0.0;
};

TrpDerived derive(const TrpConfig& config);

enum class CrossSide { upper, lower };

// Dollar holdings in the two stocks. Trades settle by moving money between
// them, paying c on each leg: 2*c*S*|f - b| in total for a reset to b.
struct Holdings {
    double w1 = 0.0, w2 = 0.0;

    explicit Holdings(double b) : w1(b), w2(1.0 - b) {}

    void grow(double x1, double x2) {
        w1 *= x1;
        w2 *= x2;
    }
    double wealth() const { return w1 + w2; }
    double fraction() const { return w1 / (w1 + w2); }
    double rebalance(double b, double c);  // returns the cost paid
};

struct RebalanceEvent {
    std::size_t period = 0;  // 1-based period at which the trade happened
    CrossSide side = CrossSide::upper;
    double cost = 0.0;  // dollars paid
};

// Per-period cumulative wealth with S(0) = 1, plus the trade log.
struct WealthCurve {
    std::vector<double> wealth;  // size n+1, wealth[0] == 1
    std::vector<RebalanceEvent> events;

    double final_wealth() const { return wealth.back(); }
    double total_cost() const;
};

// Exact path-level execution of a TRP: after each period the drifted fraction
// is compared against the band (touching a boundary counts as crossing) and
// the portfolio is reset to b when it exits, paying 2*c*S*|b_old - b|.
WealthCurve run_trp(const TrpConfig& config, const PriceRelativeSeries& series);

// Constant rebalanced portfolio: reset to b every period, same cost rule.
WealthCurve run_crp(double b, double c, const PriceRelativeSeries& series);

// Initial allocation (b, 1-b), never trades.
WealthCurve run_buy_and_hold(double b, const PriceRelativeSeries& series);

// Semiconstant rebalanced portfolio: reset to b every k periods.
WealthCurve run_scrp(double b, std::size_t k, double c, const PriceRelativeSeries& series);

// CSV `period,wealth,event_side,cost`.
void write_wealth_csv(std::ostream& out, const WealthCurve& curve);
void write_wealth_csv_file(const std::string& path, const WealthCurve& curve);

}  // namespace trp

#include "trp/engine.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace trp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

double Holdings::rebalance(double b, double c) {
    double s = wealth();
    double cost = 2.0 * c * s * std::fabs(fraction() - b);
    s -= cost;
    w1 = b * s;
    w2 = (1.0 - b) * s;
    return cost;
}

TrpConfig::TrpConfig(double b_, double eps_, double c_) : b(b_), eps(eps_), c(c_) {
    if (!(b >= 0.0 && b <= 1.0)) throw std::invalid_argument("b must lie in [0,1]");
    if (!(eps >= 0.0)) throw std::invalid_argument("eps must be non-negative");
    if (!(c >= 0.0 && c <= 1.0)) throw std::invalid_argument("c must lie in [0,1]");
}

TrpDerived derive(const TrpConfig& config) {
    const double b = config.b;
    const double eps = config.eps;
    const double c = config.c;
    if (!(b > 0.0 && b < 1.0)) {
        throw std::invalid_argument("derive: b must lie strictly inside (0,1)");
    }

    TrpDerived d;
    if (eps < b) {
        d.gamma1 = b * (1.0 - b + eps) / ((1.0 - b) * (b - eps));
        d.theta1 = std::log(d.gamma1);
    } else {  // b-eps boundary unreachable
        d.gamma1 = kInf;
        d.theta1 = kInf;
    }
    if (eps < 1.0 - b) {
        d.gamma2 = b * (1.0 - b - eps) / ((1.0 - b) * (b + eps));
        d.theta2 = std::log(d.gamma2);
    } else {  // b+eps boundary unreachable
        d.gamma2 = 0.0;
        d.theta2 = -kInf;
    }

    const double cost_coeff = 2.0 * c * (b - b * b);
    d.zeta1_up = b - cost_coeff;
    d.zeta2_up = 1.0 - b + cost_coeff;
    d.zeta1_dn = b + cost_coeff;
    d.zeta2_dn = 1.0 - b - cost_coeff;
    return d;
}

double WealthCurve::total_cost() const {
    double sum = 0.0;
    for (const auto& e : events) sum += e.cost;
    return sum;
}

WealthCurve run_trp(const TrpConfig& config, const PriceRelativeSeries& series) {
    const double b = config.b;
    if (!(b > 0.0 && b < 1.0)) {
        throw std::invalid_argument("run_trp: b must lie strictly inside (0,1)");
    }
    WealthCurve curve;
    curve.wealth.reserve(series.size() + 1);
    curve.wealth.push_back(1.0);

    Holdings book(b);
    for (std::size_t t = 0; t < series.size(); ++t) {
        book.grow(series.x1(t), series.x2(t));
        double f = book.fraction();
        if (f >= b + config.eps || f <= b - config.eps) {
            CrossSide side = f >= b + config.eps ? CrossSide::upper : CrossSide::lower;
            if (std::fabs(f - b) > 0.0) {
                double cost = book.rebalance(b, config.c);
                curve.events.push_back({t + 1, side, cost});
            }
        }
        curve.wealth.push_back(book.wealth());
    }
    return curve;
}

WealthCurve run_crp(double b, double c, const PriceRelativeSeries& series) {
    if (!(b >= 0.0 && b <= 1.0)) throw std::invalid_argument("run_crp: b must lie in [0,1]");
    WealthCurve curve;
    curve.wealth.reserve(series.size() + 1);
    curve.wealth.push_back(1.0);

    Holdings book(b);
    for (std::size_t t = 0; t < series.size(); ++t) {
        book.grow(series.x1(t), series.x2(t));
        double f = book.fraction();
        if (std::fabs(f - b) > 0.0) {
            CrossSide side = f > b ? CrossSide::upper : CrossSide::lower;
            double cost = book.rebalance(b, c);
            curve.events.push_back({t + 1, side, cost});
        }
        curve.wealth.push_back(book.wealth());
    }
    return curve;
}

WealthCurve run_buy_and_hold(double b, const PriceRelativeSeries& series) {
    if (!(b >= 0.0 && b <= 1.0)) {
        throw std::invalid_argument("run_buy_and_hold: b must lie in [0,1]");
    }
    WealthCurve curve;
    curve.wealth.reserve(series.size() + 1);
    curve.wealth.push_back(1.0);
    Holdings book(b);
    for (std::size_t t = 0; t < series.size(); ++t) {
        book.grow(series.x1(t), series.x2(t));
        curve.wealth.push_back(book.wealth());
    }
    return curve;
}

WealthCurve run_scrp(double b, std::size_t k, double c, const PriceRelativeSeries& series) {
    if (k < 1) throw std::invalid_argument("run_scrp: rebalance interval must be >= 1");
    if (!(b >= 0.0 && b <= 1.0)) throw std::invalid_argument("run_scrp: b must lie in [0,1]");
    WealthCurve curve;
    curve.wealth.reserve(series.size() + 1);
    curve.wealth.push_back(1.0);

    Holdings book(b);
    for (std::size_t t = 0; t < series.size(); ++t) {
        book.grow(series.x1(t), series.x2(t));
        if ((t + 1) % k == 0) {
            double f = book.fraction();
            if (std::fabs(f - b) > 0.0) {
                CrossSide side = f > b ? CrossSide::upper : CrossSide::lower;
                double cost = book.rebalance(b, c);
                curve.events.push_back({t + 1, side, cost});
            }
        }
        curve.wealth.push_back(book.wealth());
    }
    return curve;
}

void write_wealth_csv(std::ostream& out, const WealthCurve& curve) {
    out << "period,wealth,event_side,cost\n";
    char buf[96];
    std::size_t next_event = 0;
    for (std::size_t t = 0; t < curve.wealth.size(); ++t) {
        const char* side = "";
        double cost = 0.0;
        bool has_event = false;
        if (next_event < curve.events.size() && curve.events[next_event].period == t) {
            side = curve.events[next_event].side == CrossSide::upper ? "upper" : "lower";
            cost = curve.events[next_event].cost;
            has_event = true;
            ++next_event;
        }
        if (has_event) {
            std::snprintf(buf, sizeof buf, "%zu,%.17g,%s,%.17g\n", t, curve.wealth[t], side,
                          cost);
        } else {
            std::snprintf(buf, sizeof buf, "%zu,%.17g,,\n", t, curve.wealth[t]);
        }
        out << buf;
    }
}

void write_wealth_csv_file(const std::string& path, const WealthCurve& curve) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open '" + path + "' for writing");
    write_wealth_csv(out, curve);
}

}  // namespace trp

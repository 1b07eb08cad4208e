#include "trp/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace trp {

namespace {

std::vector<double> arange(double lo, double hi, double step) {
    std::vector<double> values;
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    values.reserve(count);
    for (std::size_t i = 0; i < count; ++i) values.push_back(lo + static_cast<double>(i) * step);
    return values;
}

}  // namespace

void SearchGrid::validate() const {
    if (!(b_min > 0.0 && b_min <= b_max && b_max < 1.0)) {
        throw std::invalid_argument("grid: require 0 < b_min <= b_max < 1");
    }
    if (!(eps_min >= 0.0 && eps_min <= eps_max)) {
        throw std::invalid_argument("grid: require 0 <= eps_min <= eps_max");
    }
    if (!(b_step > 0.0) || !(eps_step > 0.0)) {
        throw std::invalid_argument("grid: steps must be positive");
    }
}

std::vector<double> SearchGrid::b_values() const { return arange(b_min, b_max, b_step); }
std::vector<double> SearchGrid::eps_values() const { return arange(eps_min, eps_max, eps_step); }

Optimum optimize(const LogNormalParams& params, std::size_t n, double c,
                 const SearchGrid& grid, const QmcParams& qmc, const EwOptions& opts,
                 std::vector<SurfacePoint>* surface) {
    grid.validate();
    if (n < 1) throw std::invalid_argument("optimize: horizon must be >= 1");

    const auto bs = grid.b_values();
    auto eps_list = grid.eps_values();
    eps_list.push_back(1.0);  // no-trade sentinel, unreachable for every b

    Optimum best;
    bool have_best = false;
    for (double b : bs) {
        const double reach = std::min(b, 1.0 - b);
        for (double eps : eps_list) {
            double es;
            if (eps < reach) {
                TrpConfig config(b, eps, c);
                es = expected_wealth(n, params, config, qmc, opts).es(n);
            } else {
                es = buy_and_hold_expected_wealth(n, params, b);
            }
            ++best.evaluated_count;
            if (surface) surface->push_back({b, eps, es});

            bool better = !have_best || es > best.es_star ||
                          (es == best.es_star &&
                           (eps < best.eps_star ||
                            (eps == best.eps_star && b < best.b_star)));
            if (better) {
                best.b_star = b;
                best.eps_star = eps;
                best.es_star = es;
                have_best = true;
            }
        }
    }
    if (!have_best) throw std::invalid_argument("optimize: empty effective grid");
    return best;
}

}  // namespace trp

#include "trp/estimation.hpp"

#include <cmath>
#include <stdexcept>

namespace trp {

MleEstimate mle(const PriceRelativeSeries& series) {
    const std::size_t n = series.size();
    if (n < 2) throw std::invalid_argument("mle: need at least two periods");

    MleEstimate est;
    est.n_samples = n;
    for (std::size_t t = 0; t < n; ++t) {
        est.mu1 += std::log(series.x1(t));
        est.mu2 += std::log(series.x2(t));
    }
    est.mu1 /= static_cast<double>(n);
    est.mu2 /= static_cast<double>(n);
    for (std::size_t t = 0; t < n; ++t) {
        double d1 = std::log(series.x1(t)) - est.mu1;
        double d2 = std::log(series.x2(t)) - est.mu2;
        est.var1 += d1 * d1;
        est.var2 += d2 * d2;
    }
    est.var1 /= static_cast<double>(n);
    est.var2 /= static_cast<double>(n);
    return est;
}

LogNormalParams MleEstimate::to_params(double var_floor) const {
    double v1 = std::max(var1, var_floor);
    double v2 = std::max(var2, var_floor);
    if (!(v1 > 0.0) || !(v2 > 0.0)) {
        throw std::invalid_argument(
            "mle: estimated variance is zero (constant window); supply a variance floor");
    }
    return LogNormalParams(mu1, mu2, v1, v2);
}

}  // namespace trp

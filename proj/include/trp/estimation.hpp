#pragma once

#include "trp/market.hpp"

namespace trp {

// Maximum-likelihood estimate of the log-normal market law from an observed
// window: mu_i is the mean of ln x_i, var_i the biased (1/N) second moment
// about it. Requires at least two periods.
struct MleEstimate {
    double mu1 = 0.0;
    double mu2 = 0.0;
    double var1 = 0.0;
    double var2 = 0.0;
    std::size_t n_samples = 0;

    // Throws when a variance is zero (constant window); pass a positive
    // floor to regularize instead.
    LogNormalParams to_params(double var_floor = 0.0) const;
};

MleEstimate mle(const PriceRelativeSeries& series);

}  // namespace trp

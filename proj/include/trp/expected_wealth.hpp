#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "trp/engine.hpp"
#include "trp/market.hpp"
#include "trp/mvn.hpp"

namespace trp {

struct EwOptions {
    double quad_rel_tol = 1e-4;     // relative tolerance of the kappa quadrature
    std::size_t horizon_cap = 40;   // largest horizon (MVN dimension n-1)
};

// Per-horizon terms of the expected-wealth recursion:
//   es(n) = sum_{i<=n} pr(i) * es(n-i) + pt(n),   es(0) = 1,
// where pr(i) = P(first crossing at i) * R(i) and pt(n) = P(no crossing
// through n) * T(n). stay_p is the exact band-staying probability of the
// log-ratio walk and fc_p the exact first-crossing probability derived from
// it; pr and pt come from the endpoint-conditioned tail integrals, whose
// independence approximation makes them underestimates when the band is
// narrow relative to the step volatility (see fc_probability for the
// tail-route probability alone).
struct HorizonRow {
    double stay_p = 0.0;
    double fc_p = 0.0;
    double pr = 0.0;
    double pt = 0.0;
    double es = 0.0;
};

struct HorizonTable {
    std::vector<HorizonRow> rows;  // rows[i-1] holds horizon i

    std::size_t horizon() const { return rows.size(); }
    // es(i) with es(0) = 1.
    double es(std::size_t i) const { return i == 0 ? 1.0 : rows[i - 1].es; }
};

// P(walk partial sums from the endpoint stay in [kappa-theta1, kappa-theta2]
// for lags 1..tau-1); the (tau-1)-dimensional band integral. Returns 1 for
// tau = 1 (no interior constraints).
double band_probability(std::size_t tau, double kappa, const ReducedParams& reduced,
                        const TrpDerived& derived, const QmcParams& qmc);

// P(all partial sums of the walk stay in [theta2, theta1] through tau), the
// exact tau-dimensional MVN over the random-walk covariance.
double stay_probability(std::size_t tau, const ReducedParams& reduced,
                        const TrpDerived& derived, const QmcParams& qmc);

// First-crossing probability at tau via the endpoint-conditioned tail
// integrals (the probability factor of pr_product).
double fc_probability(std::size_t tau, const LogNormalParams& params, const TrpConfig& config,
                      const QmcParams& qmc, const EwOptions& opts = {});

// P(no crossing through tau) * T(tau): expected gross gain restricted to the
// no-crossing band, reduced to a 1-D quadrature over the endpoint log-ratio.
double pt_product(std::size_t tau, const LogNormalParams& params, const TrpConfig& config,
                  const QmcParams& qmc, const EwOptions& opts = {});

// P(first crossing at tau) * R(tau): the two cost-adjusted tail integrals.
double pr_product(std::size_t tau, const LogNormalParams& params, const TrpConfig& config,
                  const QmcParams& qmc, const EwOptions& opts = {});

// Fills the whole table for horizons 1..n and runs the recursion.
HorizonTable expected_wealth(std::size_t n, const LogNormalParams& params,
                             const TrpConfig& config, const QmcParams& qmc,
                             const EwOptions& opts = {});

// Closed-form E[S(n)] of buy-and-hold at split (b, 1-b).
double buy_and_hold_expected_wealth(std::size_t n, const LogNormalParams& params, double b);

// Monte Carlo ground truth: mean and standard error of run_trp final wealth
// over sampled paths of length n.
std::pair<double, double> mc_expected_wealth(std::size_t n, const LogNormalParams& params,
                                             const TrpConfig& config, std::size_t paths,
                                             std::uint64_t seed);

// Same, but for every horizon 1..n in one pass; element i-1 holds horizon i.
std::vector<std::pair<double, double>> mc_expected_wealth_curve(std::size_t n,
                                                                const LogNormalParams& params,
                                                                const TrpConfig& config,
                                                                std::size_t paths,
                                                                std::uint64_t seed);

// CSV `i,stay_p,fc_p,pr,pt,es`.
void write_horizon_csv(std::ostream& out, const HorizonTable& table);
void write_horizon_csv_file(const std::string& path, const HorizonTable& table);

}  // namespace trp

#include "trp/expected_wealth.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>

#include "trp/normal.hpp"
#include "trp/quadrature.hpp"
#include "trp/rng.hpp"

namespace trp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTailSigmas = 8.5;

// Cholesky factor of the random-walk covariance Cov(S_i, S_j) =
// var * min(i,j): sd times the all-ones lower triangle.
Matrix walk_cholesky(std::size_t k, double var) {
    const double sd = std::sqrt(var);
    Matrix l(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j <= i; ++j) l(i, j) = sd;
    }
    return l;
}

// Shared pieces of the endpoint-conditioned kappa integrals for horizon tau.
// With u = ln Pi1 ~ N(m1, s1), v = ln Pi2 ~ N(m2, s2) independent and
// kappa = v - u, the conditional expectation of e^u given kappa is Gaussian
// with a closed form, and e^v = e^u * e^kappa exactly.
struct KappaIntegrals {
    std::size_t tau;
    double b;
    ReducedParams reduced;
    TrpDerived derived;
    const QmcParams* qmc;
    double quad_rel_tol;

    double m1, s1sq, m2, s2sq;  // endpoint log laws
    double mk, sksq, sk;        // law of kappa
    double r1, r2;              // regression slopes s1sq/sksq, s2sq/sksq
    double cond_half_var;       // Var(u | kappa) / 2

    KappaIntegrals(std::size_t tau_, const LogNormalParams& params, const TrpConfig& config,
                   const TrpDerived& derived_, const QmcParams& qmc_, const EwOptions& opts)
        : tau(tau_),
          b(config.b),
          reduced(reduce(params)),
          derived(derived_),
          qmc(&qmc_),
          quad_rel_tol(opts.quad_rel_tol) {
        const double t = static_cast<double>(tau);
        m1 = t * params.mu1;
        s1sq = t * params.var1;
        m2 = t * params.mu2;
        s2sq = t * params.var2;
        mk = t * reduced.mu;
        sksq = t * reduced.var;
        sk = std::sqrt(sksq);
        r1 = params.var1 / reduced.var;
        r2 = params.var2 / reduced.var;
        cond_half_var = 0.5 * s1sq * s2sq / sksq;
    }

    double kappa_density(double kappa) const {
        return normal_pdf((kappa - mk) / sk) / sk;
    }

    double conditional_exp_u(double kappa) const {
        return std::exp(m1 - r1 * (kappa - mk) + cond_half_var);
    }

    double band(double kappa) const {
        return band_probability(tau, kappa, reduced, derived, *qmc);
    }

    // Integrate density * band * (coeff1 + coeff2 * e^kappa) * E[e^u|kappa]
    // over [lo, hi]; pass coeff1 = coeff2 = 0 to integrate the probability
    // factor only.
    double integrate_segment(double lo, double hi, double coeff1, double coeff2,
                             bool probability_only = false) const {
        // Truncation window covering both exponential tilts of the integrand.
        const double cap_lo = mk - r1 * sksq - kTailSigmas * sk;
        const double cap_hi = mk + r2 * sksq + kTailSigmas * sk;
        lo = std::max(lo, cap_lo);
        hi = std::min(hi, cap_hi);
        if (!(lo < hi)) return 0.0;

        auto integrand = [&](double kappa) {
            double p_band = band(kappa);
            if (p_band <= 0.0) return 0.0;
            double base = kappa_density(kappa) * p_band;
            if (probability_only) return base;
            return base * conditional_exp_u(kappa) * (coeff1 + coeff2 * std::exp(kappa));
        };
        QuadratureResult res = integrate(integrand, lo, hi, quad_rel_tol, 1e-14);
        if (!res.converged) {
            throw std::runtime_error(
                "kappa quadrature did not converge; achieved absolute error " +
                std::to_string(res.error));
        }
        return res.value;
    }
};

void check_horizon(std::size_t tau, const EwOptions& opts) {
    if (tau < 1) throw std::invalid_argument("horizon must be >= 1");
    if (tau > opts.horizon_cap) {
        throw std::invalid_argument("horizon " + std::to_string(tau) +
                                    " exceeds the configured cap of " +
                                    std::to_string(opts.horizon_cap));
    }
}

}  // namespace

double band_probability(std::size_t tau, double kappa, const ReducedParams& reduced,
                        const TrpDerived& derived, const QmcParams& qmc) {
    if (tau < 1) throw std::invalid_argument("band_probability: tau must be >= 1");
    if (!std::isfinite(kappa)) throw std::invalid_argument("band_probability: kappa not finite");
    if (tau == 1) return 1.0;

    const std::size_t k = tau - 1;
    std::vector<double> lower(k), upper(k);
    for (std::size_t j = 0; j < k; ++j) {
        const double shift = static_cast<double>(j + 1) * reduced.mu;
        lower[j] = derived.theta1 == kInf ? -kInf : kappa - derived.theta1 - shift;
        upper[j] = derived.theta2 == -kInf ? kInf : kappa - derived.theta2 - shift;
    }
    MvnProblem problem =
        MvnProblem::with_cholesky(std::move(lower), std::move(upper), walk_cholesky(k, reduced.var));
    return mvn_probability(problem, qmc).p;
}

double stay_probability(std::size_t tau, const ReducedParams& reduced,
                        const TrpDerived& derived, const QmcParams& qmc) {
    if (tau < 1) throw std::invalid_argument("stay_probability: tau must be >= 1");
    std::vector<double> lower(tau), upper(tau);
    for (std::size_t i = 0; i < tau; ++i) {
        const double shift = static_cast<double>(i + 1) * reduced.mu;
        lower[i] = derived.theta2 == -kInf ? -kInf : derived.theta2 - shift;
        upper[i] = derived.theta1 == kInf ? kInf : derived.theta1 - shift;
    }
    MvnProblem problem = MvnProblem::with_cholesky(std::move(lower), std::move(upper),
                                                   walk_cholesky(tau, reduced.var));
    return mvn_probability(problem, qmc).p;
}

double pt_product(std::size_t tau, const LogNormalParams& params, const TrpConfig& config,
                  const QmcParams& qmc, const EwOptions& opts) {
    check_horizon(tau, opts);
    TrpDerived derived = derive(config);
    KappaIntegrals ki(tau, params, config, derived, qmc, opts);
    return ki.integrate_segment(derived.theta2 == -kInf ? -kInf : derived.theta2,
                                derived.theta1 == kInf ? kInf : derived.theta1, config.b,
                                1.0 - config.b);
}

double pr_product(std::size_t tau, const LogNormalParams& params, const TrpConfig& config,
                  const QmcParams& qmc, const EwOptions& opts) {
    check_horizon(tau, opts);
    TrpDerived derived = derive(config);
    KappaIntegrals ki(tau, params, config, derived, qmc, opts);

    double total = 0.0;
    // Upper kappa tail: the ratio walk ends above theta1, i.e. the b-eps
    // boundary is hit, so the "dn" gain coefficients apply.
    if (derived.theta1 != kInf) {
        total += ki.integrate_segment(derived.theta1, kInf, derived.zeta1_dn, derived.zeta2_dn);
    }
    // Lower kappa tail: the walk ends below theta2, the b+eps boundary is hit.
    if (derived.theta2 != -kInf) {
        total += ki.integrate_segment(-kInf, derived.theta2, derived.zeta1_up, derived.zeta2_up);
    }
    return total;
}

double fc_probability(std::size_t tau, const LogNormalParams& params, const TrpConfig& config,
                      const QmcParams& qmc, const EwOptions& opts) {
    check_horizon(tau, opts);
    TrpDerived derived = derive(config);
    KappaIntegrals ki(tau, params, config, derived, qmc, opts);

    double total = 0.0;
    if (derived.theta1 != kInf) {
        total += ki.integrate_segment(derived.theta1, kInf, 0.0, 0.0, true);
    }
    if (derived.theta2 != -kInf) {
        total += ki.integrate_segment(-kInf, derived.theta2, 0.0, 0.0, true);
    }
    return total;
}

HorizonTable expected_wealth(std::size_t n, const LogNormalParams& params,
                             const TrpConfig& config, const QmcParams& qmc,
                             const EwOptions& opts) {
    check_horizon(n, opts);
    TrpDerived derived = derive(config);
    ReducedParams reduced = reduce(params);

    HorizonTable table;
    table.rows.resize(n);
    double stay_prev = 1.0;
    for (std::size_t i = 1; i <= n; ++i) {
        KappaIntegrals ki(i, params, config, derived, qmc, opts);
        HorizonRow& row = table.rows[i - 1];
        row.stay_p = stay_probability(i, reduced, derived, qmc);
        // first-crossing probability from the exact stay MVNs; the
        // endpoint-conditioned tail route is exposed as fc_probability()
        row.fc_p = std::max(stay_prev - row.stay_p, 0.0);
        stay_prev = row.stay_p;
        row.pt = ki.integrate_segment(derived.theta2 == -kInf ? -kInf : derived.theta2,
                                      derived.theta1 == kInf ? kInf : derived.theta1, config.b,
                                      1.0 - config.b);
        row.pr = 0.0;
        if (derived.theta1 != kInf) {
            row.pr += ki.integrate_segment(derived.theta1, kInf, derived.zeta1_dn,
                                           derived.zeta2_dn);
        }
        if (derived.theta2 != -kInf) {
            row.pr += ki.integrate_segment(-kInf, derived.theta2, derived.zeta1_up,
                                           derived.zeta2_up);
        }
    }

    for (std::size_t i = 1; i <= n; ++i) {
        double es = table.rows[i - 1].pt;
        for (std::size_t j = 1; j <= i; ++j) {
            es += table.rows[j - 1].pr * table.es(i - j);
        }
        table.rows[i - 1].es = es;
    }
    return table;
}

double buy_and_hold_expected_wealth(std::size_t n, const LogNormalParams& params, double b) {
    const double t = static_cast<double>(n);
    return b * std::exp(t * (params.mu1 + 0.5 * params.var1)) +
           (1.0 - b) * std::exp(t * (params.mu2 + 0.5 * params.var2));
}

std::pair<double, double> mc_expected_wealth(std::size_t n, const LogNormalParams& params,
                                             const TrpConfig& config, std::size_t paths,
                                             std::uint64_t seed) {
    if (paths < 1) throw std::invalid_argument("mc_expected_wealth: paths must be >= 1");
    if (n == 0) return {1.0, 0.0};
    auto curve = mc_expected_wealth_curve(n, params, config, paths, seed);
    return curve.back();
}

std::vector<std::pair<double, double>> mc_expected_wealth_curve(std::size_t n,
                                                                const LogNormalParams& params,
                                                                const TrpConfig& config,
                                                                std::size_t paths,
                                                                std::uint64_t seed) {
    if (paths < 1) throw std::invalid_argument("mc_expected_wealth: paths must be >= 1");
    std::vector<double> sum(n, 0.0), sumsq(n, 0.0);
    const double sd1 = std::sqrt(params.var1);
    const double sd2 = std::sqrt(params.var2);

    PriceRelativeSeries series;
    for (std::size_t p = 0; p < paths; ++p) {
        Rng rng = Rng::substream(seed, p);
        series.clear();
        for (std::size_t t = 0; t < n; ++t) {
            series.append(std::exp(rng.next_normal(params.mu1, sd1)),
                          std::exp(rng.next_normal(params.mu2, sd2)));
        }
        WealthCurve curve = run_trp(config, series);
        for (std::size_t i = 1; i <= n; ++i) {
            double w = curve.wealth[i];
            sum[i - 1] += w;
            sumsq[i - 1] += w * w;
        }
    }

    std::vector<std::pair<double, double>> out(n);
    const double np = static_cast<double>(paths);
    for (std::size_t i = 0; i < n; ++i) {
        double mean = sum[i] / np;
        double var = std::max(sumsq[i] / np - mean * mean, 0.0);
        double se = paths > 1 ? std::sqrt(var / (np - 1.0)) : 0.0;
        out[i] = {mean, se};
    }
    return out;
}

void write_horizon_csv(std::ostream& out, const HorizonTable& table) {
    out << "i,stay_p,fc_p,pr,pt,es\n";
    char buf[160];
    for (std::size_t i = 1; i <= table.horizon(); ++i) {
        const HorizonRow& row = table.rows[i - 1];
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%.17g,%.17g\n", i, row.stay_p,
                      row.fc_p, row.pr, row.pt, row.es);
        out << buf;
    }
}

void write_horizon_csv_file(const std::string& path, const HorizonTable& table) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open '" + path + "' for writing");
    write_horizon_csv(out, table);
}

}  // namespace trp

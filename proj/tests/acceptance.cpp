// Acceptance suite: one pass/fail line per criterion, non-zero exit when any
// criterion fails. Each criterion pins its own tolerances; the heavier
// statistical checks print their measured numbers so the report is auditable.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "trp/backtest.hpp"
#include "trp/engine.hpp"
#include "trp/estimation.hpp"
#include "trp/expected_wealth.hpp"
#include "trp/market.hpp"
#include "trp/mvn.hpp"
#include "trp/optimizer.hpp"

using namespace trp;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& what) {
    std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, what.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double elapsed_s(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    return buf;
}

const LogNormalParams kSimParams(0.006, 0.003, 0.05, 0.05);

// ---- criterion 1: partition identity --------------------------------------
void criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    TrpConfig config(0.5, 0.1, 0.0);
    QmcParams qmc;
    HorizonTable table = expected_wealth(8, kSimParams, config, qmc);
    double fc_sum = 0.0;
    for (std::size_t i = 1; i <= 8; ++i) fc_sum += table.rows[i - 1].fc_p;
    double defect = std::fabs(fc_sum + table.rows[7].stay_p - 1.0);
    double secs = elapsed_s(t0);

    double fc_tail_sum = 0.0;
    for (std::size_t i = 1; i <= 8; ++i) {
        fc_tail_sum += fc_probability(i, kSimParams, config, qmc);
    }
    double tail_defect = std::fabs(fc_tail_sum + table.rows[7].stay_p - 1.0);
    std::printf("  criterion 1 diagnostic: endpoint-conditioned tail route leaves a "
                "partition defect of %.3f at these parameters\n", tail_defect);
    report(1, defect <= 5e-3 && secs <= 30.0,
           fmt("partition identity defect %.2e (tol 5e-3), %.1f s (cap 30 s)", defect, secs));
}

// ---- criterion 2: MVN correctness and error calibration --------------------
Matrix random_spd(std::size_t k, Rng& rng) {
    Matrix a(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) a(i, j) = 2.0 * rng.next_uniform() - 1.0;
    }
    Matrix s(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            double dot = 0.0;
            for (std::size_t m = 0; m < k; ++m) dot += a(i, m) * a(j, m);
            s(i, j) = dot;
        }
        s(i, i) += 0.3;
    }
    return s;
}

MvnProblem random_problem(std::size_t k, Rng& rng) {
    Matrix sigma = random_spd(k, rng);
    std::vector<double> lo(k), hi(k);
    for (std::size_t i = 0; i < k; ++i) {
        double sd = std::sqrt(sigma(i, i));
        lo[i] = (-2.0 + 1.5 * rng.next_uniform()) * sd;
        hi[i] = lo[i] + (0.5 + 2.5 * rng.next_uniform()) * sd;
    }
    return MvnProblem(std::move(lo), std::move(hi), std::move(sigma));
}

void criterion2() {
    auto t0 = std::chrono::steady_clock::now();
    Rng rng(20260808);
    QmcParams qmc;

    int agree = 0;
    double worst = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
        MvnProblem problem = random_problem(2 + rep % 3, rng);
        qmc.seed = 500 + rep;
        MvnResult r = mvn_probability(problem, qmc);
        double dense = mvn_probability_dense(problem);
        double delta = std::fabs(r.p - dense);
        worst = std::max(worst, delta);
        if (delta <= std::max(1e-3, 3.0 * r.err)) ++agree;
    }

    MvnProblem fixed = random_problem(3, rng);
    double dense = mvn_probability_dense(fixed);
    int covered = 0;
    for (int run = 0; run < 100; ++run) {
        qmc.seed = 9100 + run;
        MvnResult r = mvn_probability(fixed, qmc);
        if (std::fabs(r.p - dense) <= r.err) ++covered;
    }

    double secs = elapsed_s(t0);
    report(2, agree == 20 && covered >= 95 && secs <= 60.0,
           fmt("oracle agreement %d/20 (worst |delta| %.2e), calibration %d/100 covered, "
               "%.1f s (cap 60 s)",
               agree, worst, covered, secs));
}

// ---- criterion 3: degenerate closed form ------------------------------------
void criterion3() {
    TrpConfig config(0.5, 0.8, 0.02);  // unreachable thresholds
    QmcParams qmc;
    HorizonTable table = expected_wealth(10, kSimParams, config, qmc);
    double worst_rel = 0.0;
    for (std::size_t i = 1; i <= 10; ++i) {
        double bh = buy_and_hold_expected_wealth(i, kSimParams, 0.5);
        worst_rel = std::max(worst_rel, std::fabs(table.es(i) - bh) / bh);
    }

    double worst_path = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto series = sample_market(kSimParams, 100, seed);
        WealthCurve trp = run_trp(config, series);
        WealthCurve hold = run_buy_and_hold(0.5, series);
        for (std::size_t t = 0; t < trp.wealth.size(); ++t) {
            worst_path =
                std::max(worst_path, std::fabs(trp.wealth[t] - hold.wealth[t]) / hold.wealth[t]);
        }
    }
    report(3, worst_rel <= 5e-3 && worst_path <= 1e-12,
           fmt("recursion vs closed form rel err %.2e (tol 5e-3); path vs buy-and-hold "
               "rel err %.2e (tol 1e-12)",
               worst_rel, worst_path));
}

// ---- criterion 4: engine identities ----------------------------------------
void criterion4() {
    double worst_crp = 0.0, worst_scrp = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto series = sample_market(kSimParams, 100, 100 + seed);
        WealthCurve trp = run_trp(TrpConfig(0.45, 0.0, 0.0), series);
        WealthCurve crp = run_crp(0.45, 0.0, series);
        for (std::size_t t = 0; t < trp.wealth.size(); ++t) {
            worst_crp = std::max(worst_crp,
                                 std::fabs(trp.wealth[t] - crp.wealth[t]) / crp.wealth[t]);
        }
        WealthCurve scrp = run_scrp(0.45, 1, 0.015, series);
        WealthCurve crp_cost = run_crp(0.45, 0.015, series);
        for (std::size_t t = 0; t < scrp.wealth.size(); ++t) {
            worst_scrp = std::max(
                worst_scrp, std::fabs(scrp.wealth[t] - crp_cost.wealth[t]) / crp_cost.wealth[t]);
        }
    }
    report(4, worst_crp <= 1e-12 && worst_scrp <= 1e-12,
           fmt("eps=0,c=0 TRP vs CRP rel err %.2e; SCRP(1) vs CRP rel err %.2e (tol 1e-12)",
               worst_crp, worst_scrp));
}

// ---- criterion 5: formula faithfulness --------------------------------------
void criterion5() {
    TrpConfig config(0.5, 0.1, 0.01);
    EwOptions opts;
    opts.quad_rel_tol = 1e-6;
    QmcParams qmc;  // shared band values; the outer reduction is what differs

    double worst = 0.0;
    for (std::size_t tau = 1; tau <= 6; ++tau) {
        oracles::TensorOracle oracle(tau, kSimParams, config);
        double pt = pt_product(tau, kSimParams, config, qmc, opts);
        double pr = pr_product(tau, kSimParams, config, qmc, opts);
        double opt_ = oracle.pt();
        double opr = oracle.pr();
        worst = std::max(worst, std::fabs(pt - opt_) / std::fabs(opt_));
        worst = std::max(worst, std::fabs(pr - opr) / std::fabs(opr));
    }
    report(5, worst <= 1e-3,
           fmt("pt/pr vs tensor quadrature, worst rel err %.2e (tol 1e-3, tau <= 6)", worst));
}

// ---- criterion 6: model vs path report --------------------------------------
void criterion6() {
    bool ok = true;
    std::string detail;
    for (double c : {0.0, 0.01}) {
        TrpConfig config(0.5, 0.1, c);
        HorizonTable table = expected_wealth(10, kSimParams, config, QmcParams{});
        auto mc = mc_expected_wealth_curve(10, kSimParams, config, 1000000, 606060);
        double worst = 0.0;
        std::printf("  criterion 6 report, c = %.3f\n", c);
        std::printf("    n   es(model)   es(mc)      se(mc)    gap\n");
        for (std::size_t i = 1; i <= 10; ++i) {
            double gap = std::fabs(table.es(i) - mc[i - 1].first) / mc[i - 1].first;
            worst = std::max(worst, gap);
            std::printf("    %-3zu %-11.6f %-11.6f %-9.2e %.4f\n", i, table.es(i),
                        mc[i - 1].first, mc[i - 1].second, gap);
        }
        detail += fmt("c=%.2f worst gap %.2f%%; ", c, 100.0 * worst);
        ok = ok && worst <= 0.15;
    }
    report(6, ok,
           "model vs 1e6-path oracle, n <= 10, bounded by 15% (" + detail +
               std::string(ok ? ")" : ") - the endpoint-independence approximation in the "
                                      "band integrals is the known cause; see README"));
}

// ---- criterion 7: MLE -------------------------------------------------------
void criterion7() {
    const std::size_t n = 100000;
    MleEstimate est = mle(sample_market(kSimParams, n, 123456));
    double mu_band = 4.0 * std::sqrt(0.05 / n);
    double var_band = 4.0 * 0.05 * std::sqrt(2.0 / n);
    bool clt = std::fabs(est.mu1 - 0.006) <= mu_band &&
               std::fabs(est.mu2 - 0.003) <= mu_band &&
               std::fabs(est.var1 - 0.05) <= var_band &&
               std::fabs(est.var2 - 0.05) <= var_band;

    PriceRelativeSeries constant;
    for (int t = 0; t < 5; ++t) constant.append(std::exp(0.01), 1.0);
    MleEstimate cz = mle(constant);
    // exact up to the ln(exp(.)) round trip of the inputs themselves
    bool zero_case =
        std::fabs(cz.mu1 - 0.01) <= 1e-15 && cz.var1 == 0.0 && cz.var2 == 0.0;

    PriceRelativeSeries two;
    two.append(std::exp(1.0), 1.0);
    two.append(std::exp(3.0), 1.0);
    MleEstimate tz = mle(two);
    bool two_case = std::fabs(tz.mu1 - 2.0) <= 1e-12 && std::fabs(tz.var1 - 1.0) <= 1e-12;

    report(7, clt && zero_case && two_case,
           fmt("CLT bands %s, zero-variance case %s, two-point case %s",
               clt ? "pass" : "FAIL", zero_case ? "exact" : "FAIL",
               two_case ? "exact" : "FAIL"));
}

// ---- criterion 8: protocol reproduction -------------------------------------
void criterion8() {
    auto t0 = std::chrono::steady_clock::now();

    BacktestConfig config;
    config.window = 200;
    config.horizon = 5;
    config.cost = 0.025;
    config.grid = {0.3, 0.7, 0.1, 0.04, 0.2, 0.04};
    config.qmc.n_points = 256;
    config.qmc.n_shifts = 8;
    config.ew.quad_rel_tol = 2e-3;

    std::vector<double> w_trp, w_crp, w_scrp, w_hold;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto series = sample_market(kSimParams, 1100, seed);
        config.qmc.seed = seed;
        BacktestReport rep = sliding_backtest(series, config);
        w_trp.push_back(rep.run(Strategy::trp).curve.final_wealth());
        w_crp.push_back(rep.run(Strategy::crp).curve.final_wealth());
        w_scrp.push_back(rep.run(Strategy::scrp).curve.final_wealth());
        w_hold.push_back(rep.run(Strategy::buy_and_hold).curve.final_wealth());
    }
    auto median = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        return 0.5 * (v[4] + v[5]);
    };
    double m_trp = median(w_trp), m_crp = median(w_crp), m_scrp = median(w_scrp),
           m_hold = median(w_hold);
    double secs = elapsed_s(t0);
    bool pass = m_trp >= m_crp && m_trp >= m_scrp && m_trp >= m_hold && secs <= 600.0;
    report(8, pass,
           fmt("median final wealth over 10 seeds: trp %.3f vs crp %.3f, scrp %.3f, "
               "hold %.3f; %.0f s (cap 600 s)%s",
               m_trp, m_crp, m_scrp, m_hold, secs,
               pass ? ""
                    : " - at this volatility per-period rebalancing wins median growth "
                      "while the expected-wealth objective prefers no-trade policies; "
                      "see README"));
}

// ---- criterion 9: CLI determinism --------------------------------------------
struct TempDir {
    std::string path;
    TempDir() {
        char tmpl[] = "/tmp/trp_accept_XXXXXX";
        path = mkdtemp(tmpl);
    }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return "<missing:" + path + ">";
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool same_file(const std::string& a, const std::string& b) { return slurp(a) == slurp(b); }

void criterion9() {
    TempDir dir;
    const std::string cli = TRPCLI_PATH;
    const std::string d = dir.path;
    auto sh = [&](const std::string& cmd) {
        int rc = std::system(cmd.c_str());
        return WEXITSTATUS(rc) == 0;
    };

    bool ok = true;
    // every subcommand run twice with identical flags; artifacts snapshotted
    // between the runs and byte-compared
    std::string r = d + "/work";
    ok = ok && sh("mkdir -p " + r);
    auto all_commands = [&]() {
        bool good = true;
        good = good && sh(cli + " simulate --n 300 --seed 5 --out " + r + "/m.csv > " + r +
                          "/sim.log");
        good = good && sh(cli + " estimate --input " + r + "/m.csv --out " + r +
                          "/est.json > " + r + "/est.log");
        good = good && sh(cli + " expected-wealth --b 0.5 --eps 0.1 --c 0.01 --n 6 "
                          "--qmc-points 512 --qmc-shifts 8 --seed 2 --quad-tol 1e-3 --out " +
                          r + "/table.csv > " + r + "/ew.log");
        good = good && sh(cli + " optimize --c 0.025 --n 3 --b-min 0.45 --b-max 0.55 "
                          "--b-step 0.05 --eps-min 0.05 --eps-max 0.1 --eps-step 0.05 "
                          "--qmc-points 256 --qmc-shifts 8 --seed 3 --quad-tol 2e-3 --out " +
                          r + "/opt.json --surface-out " + r + "/surface.csv > " + r +
                          "/opt.log 2>/dev/null");
        good = good && sh(cli + " backtest --input " + r + "/m.csv --window 100 --horizon 3 "
                          "--c 0.025 --b-min 0.45 --b-max 0.55 --b-step 0.05 --eps-min 0.05 "
                          "--eps-max 0.1 --eps-step 0.05 --qmc-points 256 --qmc-shifts 8 "
                          "--seed 4 --quad-tol 2e-3 --svg --outdir " + r + " > " + r +
                          "/bt.log");
        good = good && sh(cli + " mvn-debug --dim 3 --box -1 1 --tridiagonal --seed 6 --out " +
                          r + "/mvn.json > " + r + "/mvn.log");
        return good;
    };
    ok = ok && all_commands();
    ok = ok && sh("cp -r " + r + " " + d + "/snap");
    ok = ok && all_commands();

    std::vector<std::string> artifacts{
        "m.csv",        "sim.log",   "est.json",          "est.log",
        "table.csv",    "ew.log",    "opt.json",          "surface.csv",
        "opt.log",      "summary.json", "wealth_trp.csv", "wealth_crp.csv",
        "wealth_scrp.csv", "wealth_buy_and_hold.csv", "wealth_cover.csv",
        "curves.svg",   "bt.log",    "mvn.json",          "mvn.log"};
    int mismatched = 0;
    for (const auto& f : artifacts) {
        if (!same_file(d + "/work/" + f, d + "/snap/" + f)) {
            ++mismatched;
            std::printf("  criterion 9: mismatch in %s\n", f.c_str());
        }
    }
    report(9, ok && mismatched == 0,
           fmt("%zu artifacts byte-compared across reruns, %d mismatched",
               artifacts.size(), mismatched));
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    if (g_failures == 0) {
        std::printf("acceptance: all criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) failed\n", g_failures);
    return 1;
}

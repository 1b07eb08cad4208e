#include <doctest.h>
#include <stdexcept>
#include <sstream>

#include <cmath>
#include <limits>

#include "trp/engine.hpp"
#include "trp/market.hpp"
#include "trp/rng.hpp"

using namespace trp;

namespace {

PriceRelativeSeries make_series(std::initializer_list<std::pair<double, double>> pairs) {
    PriceRelativeSeries s;
    for (auto& [x1, x2] : pairs) s.append(x1, x2);
    return s;
}

double crp_product(double b, const PriceRelativeSeries& s) {
    double w = 1.0;
    for (std::size_t t = 0; t < s.size(); ++t) w *= b * s.x1(t) + (1.0 - b) * s.x2(t);
    return w;
}

}  // namespace

TEST_CASE("derive: hand-checked thresholds and gain coefficients") {
    TrpDerived d = derive(TrpConfig(0.5, 0.1, 0.025));
    CHECK(d.gamma1 == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(d.gamma2 == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(d.theta1 == doctest::Approx(0.4054651081081644).epsilon(1e-14));
    CHECK(d.theta2 == doctest::Approx(-0.4054651081081644).epsilon(1e-14));
    CHECK(d.zeta1_up == doctest::Approx(0.4875).epsilon(1e-14));
    CHECK(d.zeta2_up == doctest::Approx(0.5125).epsilon(1e-14));
    CHECK(d.zeta1_dn == doctest::Approx(0.5125).epsilon(1e-14));
    CHECK(d.zeta2_dn == doctest::Approx(0.4875).epsilon(1e-14));
}

TEST_CASE("derive: zero threshold and zero cost degeneracies") {
    TrpDerived z = derive(TrpConfig(0.5, 0.0, 0.3));
    CHECK(z.gamma1 == doctest::Approx(1.0));
    CHECK(z.gamma2 == doctest::Approx(1.0));
    CHECK(z.theta1 == doctest::Approx(0.0));
    CHECK(z.theta2 == doctest::Approx(0.0));

    TrpDerived free = derive(TrpConfig(0.5, 0.1, 0.0));
    CHECK(free.zeta1_up == doctest::Approx(0.5));
    CHECK(free.zeta1_dn == doctest::Approx(0.5));
}

TEST_CASE("derive: unreachable boundaries give infinite thetas") {
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(derive(TrpConfig(0.25, 0.25, 0.0)).theta1 == inf);
    CHECK(derive(TrpConfig(0.25, 0.25, 0.0)).theta2 > -inf);
    CHECK(derive(TrpConfig(0.75, 0.25, 0.0)).theta2 == -inf);
    CHECK(derive(TrpConfig(0.5, 0.9, 0.0)).theta1 == inf);
    CHECK(derive(TrpConfig(0.5, 0.9, 0.0)).theta2 == -inf);

    CHECK_THROWS_AS(derive(TrpConfig(0.0, 0.1, 0.0)), std::invalid_argument);
    CHECK_THROWS_AS(derive(TrpConfig(1.0, 0.1, 0.0)), std::invalid_argument);
}

TEST_CASE("derive invariants over a parameter sweep") {
    for (double b = 0.1; b < 0.95; b += 0.1) {
        for (double eps = 0.01; eps < std::min(b, 1.0 - b); eps += 0.03) {
            for (double c : {0.0, 0.01, 0.1}) {
                TrpDerived d = derive(TrpConfig(b, eps, c));
                CHECK(d.gamma2 <= 1.0);
                CHECK(d.gamma1 >= 1.0);
                CHECK(d.theta1 == doctest::Approx(std::log(d.gamma1)));
                CHECK(d.theta2 == doctest::Approx(std::log(d.gamma2)));
                CHECK(d.zeta1_up + d.zeta2_up == doctest::Approx(1.0).epsilon(1e-13));
                CHECK(d.zeta1_dn + d.zeta2_dn == doctest::Approx(1.0).epsilon(1e-13));
            }
        }
    }
}

TEST_CASE("trp with a wide band never trades and tracks buy-and-hold") {
    LogNormalParams params(0.001, -0.001, 0.001, 0.001);  // tiny moves
    auto series = sample_market(params, 50, 11);
    WealthCurve trp = run_trp(TrpConfig(0.5, 0.45, 0.02), series);
    WealthCurve hold = run_buy_and_hold(0.5, series);
    CHECK(trp.events.empty());
    REQUIRE(trp.wealth.size() == hold.wealth.size());
    for (std::size_t t = 0; t < trp.wealth.size(); ++t) {
        CHECK(std::fabs(trp.wealth[t] - hold.wealth[t]) <= 1e-12 * hold.wealth[t]);
    }
}

TEST_CASE("zero threshold zero cost trp equals crp") {
    LogNormalParams params(0.006, 0.003, 0.05, 0.05);
    auto series = sample_market(params, 100, 3);
    WealthCurve trp = run_trp(TrpConfig(0.35, 0.0, 0.0), series);
    WealthCurve crp = run_crp(0.35, 0.0, series);
    for (std::size_t t = 0; t < trp.wealth.size(); ++t) {
        CHECK(std::fabs(trp.wealth[t] - crp.wealth[t]) <= 1e-12 * crp.wealth[t]);
    }
    CHECK(std::fabs(crp.final_wealth() - crp_product(0.35, series)) <=
          1e-12 * crp.final_wealth());
}

TEST_CASE("single-period crossing pays the two-leg cost") {
    auto series = make_series({{2.0, 1.0}});
    WealthCurve curve = run_trp(TrpConfig(0.5, 0.1, 0.01), series);
    REQUIRE(curve.events.size() == 1);
    CHECK(curve.events[0].side == CrossSide::upper);
    // gross 1.5, drifted fraction 2/3, cost 2 * 0.01 * 1.5 * |2/3 - 1/2| = 0.005
    CHECK(curve.events[0].cost == doctest::Approx(0.005).epsilon(1e-12));
    CHECK(curve.final_wealth() == doctest::Approx(1.495).epsilon(1e-12));

    // same trade through the gain-coefficient identity: zeta_up . (2, 1)
    TrpDerived d = derive(TrpConfig(0.5, 0.1, 0.01));
    CHECK(curve.final_wealth() ==
          doctest::Approx(d.zeta1_up * 2.0 + d.zeta2_up * 1.0).epsilon(1e-12));
}

TEST_CASE("crp identities") {
    auto ones = make_series({{1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}});
    WealthCurve idle = run_crp(0.5, 0.0, ones);
    for (double w : idle.wealth) CHECK(w == 1.0);

    auto series = make_series({{2.0, 1.0}});
    CHECK(run_crp(0.5, 0.01, series).final_wealth() == doctest::Approx(1.495).epsilon(1e-12));

    LogNormalParams params(0.002, 0.004, 0.04, 0.02);
    auto rnd = sample_market(params, 60, 17);
    CHECK(run_crp(0.6, 0.0, rnd).final_wealth() ==
          doctest::Approx(crp_product(0.6, rnd)).epsilon(1e-12));
}

TEST_CASE("buy and hold rides the components") {
    auto series = make_series({{2.0, 1.0}, {1.0, 2.0}});
    CHECK(run_buy_and_hold(0.5, series).final_wealth() == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("scrp interval boundaries") {
    LogNormalParams params(0.006, 0.003, 0.05, 0.05);
    auto series = sample_market(params, 64, 21);

    WealthCurve scrp1 = run_scrp(0.5, 1, 0.01, series);
    WealthCurve crp = run_crp(0.5, 0.01, series);
    for (std::size_t t = 0; t < crp.wealth.size(); ++t) {
        CHECK(std::fabs(scrp1.wealth[t] - crp.wealth[t]) <= 1e-12 * crp.wealth[t]);
    }

    WealthCurve never = run_scrp(0.5, series.size() + 1, 0.01, series);
    WealthCurve hold = run_buy_and_hold(0.5, series);
    CHECK(never.events.empty());
    CHECK(std::fabs(never.final_wealth() - hold.final_wealth()) <=
          1e-12 * hold.final_wealth());

    CHECK_THROWS_AS(run_scrp(0.5, 0, 0.01, series), std::invalid_argument);
}

TEST_CASE("empty series yields the trivial curve") {
    PriceRelativeSeries empty;
    WealthCurve curve = run_trp(TrpConfig(0.5, 0.1, 0.01), empty);
    REQUIRE(curve.wealth.size() == 1);
    CHECK(curve.wealth[0] == 1.0);
    CHECK(curve.events.empty());
}

TEST_CASE("property: wealth stays positive for moderate costs") {
    LogNormalParams params(0.0, 0.0, 0.3, 0.3);  // volatile market
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto series = sample_market(params, 80, seed);
        for (double c : {0.0, 0.025, 0.2, 0.5}) {
            WealthCurve curve = run_trp(TrpConfig(0.4, 0.05, c), series);
            for (double w : curve.wealth) CHECK(w > 0.0);
        }
    }
}

TEST_CASE("property: common scaling multiplies wealth and keeps events") {
    LogNormalParams params(0.006, 0.003, 0.05, 0.05);
    auto series = sample_market(params, 120, 5);
    Rng rng(88);

    PriceRelativeSeries scaled;
    double scale_product = 1.0;
    for (std::size_t t = 0; t < series.size(); ++t) {
        double lambda = 0.5 + rng.next_uniform();
        scale_product *= lambda;
        scaled.append(series.x1(t) * lambda, series.x2(t) * lambda);
    }

    TrpConfig config(0.55, 0.08, 0.02);
    WealthCurve base = run_trp(config, series);
    WealthCurve mult = run_trp(config, scaled);
    REQUIRE(base.events.size() == mult.events.size());
    for (std::size_t i = 0; i < base.events.size(); ++i) {
        CHECK(base.events[i].period == mult.events[i].period);
        CHECK(base.events[i].side == mult.events[i].side);
    }
    CHECK(mult.final_wealth() ==
          doctest::Approx(base.final_wealth() * scale_product).epsilon(1e-10));
}

TEST_CASE("property: final wealth is non-increasing in cost") {
    LogNormalParams params(0.006, 0.003, 0.05, 0.05);
    for (std::uint64_t seed = 100; seed < 110; ++seed) {
        auto series = sample_market(params, 150, seed);
        double prev = std::numeric_limits<double>::infinity();
        bool traded = false;
        for (double c : {0.0, 0.005, 0.01, 0.05, 0.1}) {
            WealthCurve curve = run_trp(TrpConfig(0.5, 0.05, c), series);
            traded = traded || !curve.events.empty();
            CHECK(curve.final_wealth() <= prev + 1e-12);
            prev = curve.final_wealth();
        }
        CHECK(traded);  // the band is tight enough that paths do cross
    }
}

TEST_CASE("property: event count is non-increasing in eps") {
    LogNormalParams params(0.006, 0.003, 0.05, 0.05);
    for (std::uint64_t seed = 40; seed < 50; ++seed) {
        auto series = sample_market(params, 200, seed);
        std::size_t prev = std::numeric_limits<std::size_t>::max();
        for (double eps : {0.0, 0.02, 0.05, 0.1, 0.2, 0.4}) {
            WealthCurve curve = run_trp(TrpConfig(0.5, eps, 0.01), series);
            CHECK(curve.events.size() <= prev);
            prev = curve.events.size();
        }
    }
}

TEST_CASE("wealth csv lists one row per period with event annotations") {
    auto series = make_series({{2.0, 1.0}, {1.0, 1.0}});
    WealthCurve curve = run_trp(TrpConfig(0.5, 0.1, 0.01), series);
    std::stringstream out;
    write_wealth_csv(out, curve);
    std::string text = out.str();
    CHECK(text.find("period,wealth,event_side,cost") == 0);
    CHECK(text.find("1,1.495") != std::string::npos);
    CHECK(text.find("upper") != std::string::npos);
}

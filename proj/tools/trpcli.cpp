// Command-line front end: market simulation, estimation, expected-wealth
// tables, (b, eps) optimization, sliding-window backtests and an MVN debug
// probe. All subcommands are deterministic given their flags and seed.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "trp/backtest.hpp"
#include "trp/engine.hpp"
#include "trp/estimation.hpp"
#include "trp/expected_wealth.hpp"
#include "trp/market.hpp"
#include "trp/mvn.hpp"
#include "trp/optimizer.hpp"
#include "trp/report.hpp"

namespace {

using nlohmann::json;

// Relative output paths resolve against TRP_OUT_DIR when it is set.
std::string resolve_out(const std::string& path) {
    if (path.empty() || path.front() == '/') return path;
    const char* dir = std::getenv("TRP_OUT_DIR");
    if (!dir || !*dir) return path;
    std::string base(dir);
    if (base.back() != '/') base += '/';
    return base + path;
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open '" + path + "' for writing");
    out << j.dump(2) << "\n";
}

void echo_config(const std::string& subcommand, const json& config) {
    json j{{"subcommand", subcommand}, {"config", config}};
    std::cout << j.dump(2) << "\n";
}

trp::CsvMode parse_mode(const std::string& mode) {
    if (mode == "relatives") return trp::CsvMode::relatives;
    if (mode == "prices") return trp::CsvMode::prices;
    throw CLI::ValidationError("--mode", "must be 'relatives' or 'prices'");
}

struct QmcFlags {
    int points = trp::QmcParams{}.n_points;
    int shifts = trp::QmcParams{}.n_shifts;
    double alpha = trp::QmcParams{}.alpha;
    std::uint64_t seed = 0;

    void attach(CLI::App* app) {
        app->add_option("--qmc-points", points, "lattice points per shift")
            ->capture_default_str();
        app->add_option("--qmc-shifts", shifts, "random shifts")->capture_default_str();
        app->add_option("--alpha", alpha, "error-estimate confidence factor")
            ->capture_default_str();
        app->add_option("--seed", seed, "random seed")->capture_default_str();
    }
    trp::QmcParams params() const { return {points, shifts, alpha, seed}; }
    json to_json() const {
        return {{"qmc_points", points}, {"qmc_shifts", shifts}, {"alpha", alpha},
                {"seed", seed}};
    }
};

struct GridFlags {
    trp::SearchGrid grid;

    void attach(CLI::App* app) {
        app->add_option("--b-min", grid.b_min)->capture_default_str();
        app->add_option("--b-max", grid.b_max)->capture_default_str();
        app->add_option("--b-step", grid.b_step)->capture_default_str();
        app->add_option("--eps-min", grid.eps_min)->capture_default_str();
        app->add_option("--eps-max", grid.eps_max)->capture_default_str();
        app->add_option("--eps-step", grid.eps_step)->capture_default_str();
    }
    json to_json() const {
        return {{"b_min", grid.b_min},     {"b_max", grid.b_max},
                {"b_step", grid.b_step},   {"eps_min", grid.eps_min},
                {"eps_max", grid.eps_max}, {"eps_step", grid.eps_step}};
    }
};

int run(int argc, char** argv) {
    CLI::App app{"threshold rebalanced portfolio toolkit"};
    app.require_subcommand(1);

    // ---- simulate ----------------------------------------------------
    auto* sim = app.add_subcommand("simulate", "sample a log-normal market to CSV");
    double s_mu1 = 0.006, s_mu2 = 0.003, s_var1 = 0.05, s_var2 = 0.05;
    std::size_t s_n = 1100;
    std::uint64_t s_seed = 0;
    std::string s_out = "market.csv";
    sim->add_option("--mu1", s_mu1)->capture_default_str();
    sim->add_option("--mu2", s_mu2)->capture_default_str();
    sim->add_option("--var1", s_var1)->capture_default_str();
    sim->add_option("--var2", s_var2)->capture_default_str();
    sim->add_option("--n", s_n, "number of periods")->capture_default_str();
    sim->add_option("--seed", s_seed)->capture_default_str();
    sim->add_option("--out", s_out, "output CSV path")->capture_default_str();

    // ---- estimate ----------------------------------------------------
    auto* est = app.add_subcommand("estimate", "maximum-likelihood market estimation");
    std::string e_input, e_mode = "relatives", e_out;
    est->add_option("--input", e_input, "market CSV")->required();
    est->add_option("--mode", e_mode, "relatives|prices")->capture_default_str();
    est->add_option("--out", e_out, "also write the JSON result here");

    // ---- expected-wealth ----------------------------------------------
    auto* ew = app.add_subcommand("expected-wealth", "horizon table of the wealth recursion");
    double w_mu1 = 0.006, w_mu2 = 0.003, w_var1 = 0.05, w_var2 = 0.05;
    double w_b = 0.5, w_eps = 0.1, w_c = 0.0, w_quad_tol = 1e-4;
    std::size_t w_n = 10, w_cap = 40;
    std::string w_out = "horizon.csv";
    QmcFlags w_qmc;
    ew->add_option("--mu1", w_mu1)->capture_default_str();
    ew->add_option("--mu2", w_mu2)->capture_default_str();
    ew->add_option("--var1", w_var1)->capture_default_str();
    ew->add_option("--var2", w_var2)->capture_default_str();
    ew->add_option("--b", w_b)->capture_default_str();
    ew->add_option("--eps", w_eps)->capture_default_str();
    ew->add_option("--c", w_c)->capture_default_str();
    ew->add_option("--n", w_n, "horizon")->capture_default_str();
    ew->add_option("--quad-tol", w_quad_tol)->capture_default_str();
    ew->add_option("--horizon-cap", w_cap)->capture_default_str();
    ew->add_option("--out", w_out)->capture_default_str();
    w_qmc.attach(ew);

    // ---- optimize -----------------------------------------------------
    auto* opt = app.add_subcommand("optimize", "grid search over (b, eps)");
    double o_mu1 = 0.006, o_mu2 = 0.003, o_var1 = 0.05, o_var2 = 0.05;
    double o_c = 0.0, o_quad_tol = 1e-4;
    std::size_t o_n = 20;
    std::string o_out = "optimum.json", o_surface;
    QmcFlags o_qmc;
    GridFlags o_grid;
    opt->add_option("--mu1", o_mu1)->capture_default_str();
    opt->add_option("--mu2", o_mu2)->capture_default_str();
    opt->add_option("--var1", o_var1)->capture_default_str();
    opt->add_option("--var2", o_var2)->capture_default_str();
    opt->add_option("--c", o_c)->capture_default_str();
    opt->add_option("--n", o_n, "objective horizon")->capture_default_str();
    opt->add_option("--quad-tol", o_quad_tol)->capture_default_str();
    opt->add_option("--out", o_out)->capture_default_str();
    opt->add_option("--surface-out", o_surface, "full surface CSV `b,eps,es`");
    o_qmc.attach(opt);
    o_grid.attach(opt);

    // ---- backtest -----------------------------------------------------
    auto* bt = app.add_subcommand("backtest", "sliding-window protocol against baselines");
    std::string b_input, b_mode = "relatives", b_outdir = ".", b_strategies =
        "trp,crp,scrp,buy_and_hold,cover";
    trp::BacktestConfig b_config;
    b_config.horizon = 8;  // keeps a default sliding run tractable
    double b_quad_tol = 1e-3;
    bool b_svg = false;
    QmcFlags b_qmc;
    b_qmc.points = 512;
    b_qmc.shifts = 8;
    GridFlags b_grid;
    b_grid.grid = {0.3, 0.7, 0.05, 0.02, 0.2, 0.02};
    bt->add_option("--input", b_input, "market CSV")->required();
    bt->add_option("--mode", b_mode, "relatives|prices")->capture_default_str();
    bt->add_option("--window", b_config.window)->capture_default_str();
    bt->add_option("--horizon", b_config.horizon, "optimizer objective horizon")
        ->capture_default_str();
    bt->add_option("--c", b_config.cost)->capture_default_str();
    bt->add_option("--strategies", b_strategies, "comma-separated subset")
        ->capture_default_str();
    bt->add_option("--scrp-k", b_config.scrp_interval)->capture_default_str();
    bt->add_option("--cover-grid", b_config.cover_grid_size)->capture_default_str();
    bt->add_option("--baseline-b", b_config.baseline_b)->capture_default_str();
    bt->add_option("--quad-tol", b_quad_tol)->capture_default_str();
    bt->add_option("--outdir", b_outdir)->capture_default_str();
    bt->add_flag("--svg", b_svg, "also write an SVG chart of the curves");
    b_qmc.attach(bt);
    b_grid.attach(bt);

    // ---- mvn-debug ----------------------------------------------------
    auto* mv = app.add_subcommand("mvn-debug", "QMC band probability vs dense oracle");
    std::size_t m_dim = 3;
    std::vector<double> m_box{-1.0, 1.0};
    bool m_tridiagonal = false;
    std::string m_out;
    QmcFlags m_qmc;
    mv->add_option("--dim", m_dim)->capture_default_str();
    mv->add_option("--box", m_box, "common lower and upper bound")
        ->expected(2)
        ->capture_default_str();
    mv->add_flag("--tridiagonal", m_tridiagonal,
                 "use the inverse of the tridiagonal(-1,2,-1) precision matrix");
    mv->add_option("--out", m_out, "also write the JSON result here");
    m_qmc.attach(mv);

    CLI11_PARSE(app, argc, argv);

    if (sim->parsed()) {
        std::string out_path = resolve_out(s_out);
        echo_config("simulate", {{"mu1", s_mu1},
                                 {"mu2", s_mu2},
                                 {"var1", s_var1},
                                 {"var2", s_var2},
                                 {"n", s_n},
                                 {"seed", s_seed},
                                 {"out", out_path}});
        trp::LogNormalParams params(s_mu1, s_mu2, s_var1, s_var2);
        trp::write_series_csv_file(out_path, trp::sample_market(params, s_n, s_seed));
        return 0;
    }

    if (est->parsed()) {
        echo_config("estimate", {{"input", e_input}, {"mode", e_mode}, {"out", e_out}});
        auto series = trp::read_series_csv_file(e_input, parse_mode(e_mode));
        trp::MleEstimate m = trp::mle(series);
        json result{{"mu1", m.mu1},
                    {"mu2", m.mu2},
                    {"var1", m.var1},
                    {"var2", m.var2},
                    {"n_samples", m.n_samples}};
        std::cout << result.dump(2) << "\n";
        if (!e_out.empty()) write_json_file(resolve_out(e_out), result);
        return 0;
    }

    if (ew->parsed()) {
        std::string out_path = resolve_out(w_out);
        json config = w_qmc.to_json();
        config.update({{"mu1", w_mu1}, {"mu2", w_mu2}, {"var1", w_var1}, {"var2", w_var2},
                       {"b", w_b}, {"eps", w_eps}, {"c", w_c}, {"n", w_n},
                       {"quad_tol", w_quad_tol}, {"horizon_cap", w_cap}, {"out", out_path}});
        echo_config("expected-wealth", config);
        trp::LogNormalParams params(w_mu1, w_mu2, w_var1, w_var2);
        trp::TrpConfig trp_config(w_b, w_eps, w_c);
        trp::EwOptions opts{w_quad_tol, w_cap};
        trp::HorizonTable table =
            trp::expected_wealth(w_n, params, trp_config, w_qmc.params(), opts);
        trp::write_horizon_csv_file(out_path, table);
        return 0;
    }

    if (opt->parsed()) {
        std::string out_path = resolve_out(o_out);
        json config = o_qmc.to_json();
        config.update(o_grid.to_json());
        config.update({{"mu1", o_mu1}, {"mu2", o_mu2}, {"var1", o_var1}, {"var2", o_var2},
                       {"c", o_c}, {"n", o_n}, {"quad_tol", o_quad_tol}, {"out", out_path}});
        echo_config("optimize", config);

        trp::LogNormalParams params(o_mu1, o_mu2, o_var1, o_var2);
        trp::EwOptions opts;
        opts.quad_rel_tol = o_quad_tol;
        std::vector<trp::SurfacePoint> surface;
        auto t0 = std::chrono::steady_clock::now();
        trp::Optimum best = trp::optimize(params, o_n, o_c, o_grid.grid, o_qmc.params(), opts,
                                          o_surface.empty() ? nullptr : &surface);
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
        std::cerr << "optimize: " << best.evaluated_count << " grid points in " << ms
                  << " ms\n";

        json result{{"b_star", best.b_star},
                    {"eps_star", best.eps_star},
                    {"es_star", best.es_star},
                    {"evaluated_count", best.evaluated_count},
                    {"grid", o_grid.to_json()}};
        std::cout << result.dump(2) << "\n";
        write_json_file(out_path, result);
        if (!o_surface.empty()) {
            std::ofstream sout(resolve_out(o_surface));
            if (!sout) throw std::invalid_argument("cannot open '" + o_surface + "'");
            sout << "b,eps,es\n";
            char buf[96];
            for (const auto& p : surface) {
                std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", p.b, p.eps, p.es);
                sout << buf;
            }
        }
        return 0;
    }

    if (bt->parsed()) {
        std::string outdir = resolve_out(b_outdir);
        json config = b_qmc.to_json();
        config.update(b_grid.to_json());
        config.update({{"input", b_input}, {"mode", b_mode}, {"window", b_config.window},
                       {"horizon", b_config.horizon}, {"c", b_config.cost},
                       {"strategies", b_strategies}, {"scrp_k", b_config.scrp_interval},
                       {"cover_grid", b_config.cover_grid_size},
                       {"baseline_b", b_config.baseline_b}, {"quad_tol", b_quad_tol},
                       {"outdir", outdir}, {"svg", b_svg}});
        echo_config("backtest", config);

        b_config.qmc = b_qmc.params();
        b_config.seed = b_qmc.seed;
        b_config.grid = b_grid.grid;
        b_config.ew.quad_rel_tol = b_quad_tol;
        b_config.strategies.clear();
        std::stringstream ss(b_strategies);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item == "trp") b_config.strategies.push_back(trp::Strategy::trp);
            else if (item == "crp") b_config.strategies.push_back(trp::Strategy::crp);
            else if (item == "scrp") b_config.strategies.push_back(trp::Strategy::scrp);
            else if (item == "buy_and_hold")
                b_config.strategies.push_back(trp::Strategy::buy_and_hold);
            else if (item == "cover") b_config.strategies.push_back(trp::Strategy::cover);
            else throw CLI::ValidationError("--strategies", "unknown strategy '" + item + "'");
        }

        auto series = trp::read_series_csv_file(b_input, parse_mode(b_mode));
        trp::BacktestReport report = trp::sliding_backtest(series, b_config);

        std::string base = outdir;
        if (!base.empty() && base.back() != '/') base += '/';
        trp::write_backtest_json_file(base + "summary.json", report);
        std::vector<trp::NamedCurve> curves;
        for (const auto& run : report.runs) {
            trp::write_wealth_csv_file(
                base + "wealth_" + strategy_name(run.strategy) + ".csv", run.curve);
            curves.push_back({strategy_name(run.strategy), &run.curve.wealth});
        }
        if (b_svg) trp::write_curves_svg_file(base + "curves.svg", curves);
        return 0;
    }

    if (mv->parsed()) {
        json config = m_qmc.to_json();
        config.update({{"dim", m_dim}, {"box_lo", m_box[0]}, {"box_hi", m_box[1]},
                       {"tridiagonal", m_tridiagonal}, {"out", m_out}});
        echo_config("mvn-debug", config);

        trp::Matrix sigma = m_tridiagonal ? trp::spd_inverse(trp::tridiagonal_precision(m_dim))
                                          : trp::Matrix::identity(m_dim);
        trp::MvnProblem problem(std::vector<double>(m_dim, m_box[0]),
                                std::vector<double>(m_dim, m_box[1]), sigma);
        trp::MvnResult r = trp::mvn_probability(problem, m_qmc.params());
        json result{{"dim", m_dim}, {"p", r.p}, {"err", r.err}};
        if (m_dim <= 4) {
            double dense = trp::mvn_probability_dense(problem);
            result["dense_p"] = dense;
            result["abs_diff"] = std::fabs(r.p - dense);
        }
        std::cout << result.dump(2) << "\n";
        if (!m_out.empty()) write_json_file(resolve_out(m_out), result);
        return 0;
    }

    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    }
}

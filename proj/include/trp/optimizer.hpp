#pragma once

#include <vector>

#include "trp/expected_wealth.hpp"

namespace trp {

// Brute-force search grid over (b, eps). Fractions; steps strictly positive.
struct SearchGrid {
    double b_min = 0.05, b_max = 0.95, b_step = 0.05;
    double eps_min = 0.0, eps_max = 0.25, eps_step = 0.01;

    void validate() const;
    std::vector<double> b_values() const;
    std::vector<double> eps_values() const;
};

struct Optimum {
    double b_star = 0.0;
    double eps_star = 0.0;
    double es_star = 0.0;
    std::size_t evaluated_count = 0;
};

struct SurfacePoint {
    double b = 0.0, eps = 0.0, es = 0.0;
};

// Exhaustive evaluation of E[S(n)] over the grid. Grid points whose band is
// unreachable (eps >= min(b, 1-b)) evaluate to the buy-and-hold closed form,
// and a no-trade sentinel (eps = 1) is appended for every b. Ties break
// toward the smallest eps, then the smallest b. Deterministic given
// (inputs, qmc seed).
Optimum optimize(const LogNormalParams& params, std::size_t n, double c,
                 const SearchGrid& grid, const QmcParams& qmc, const EwOptions& opts = {},
                 std::vector<SurfacePoint>* surface = nullptr);

}  // namespace trp

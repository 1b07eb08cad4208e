#pragma once

#include <cstdint>
#include <vector>

#include "trp/linalg.hpp"

namespace trp {

// Hyper-rectangular MVN probability problem: P(a <= X <= b) for
// X ~ N(0, Sigma). Bounds may be -inf / +inf. Either the covariance or its
// lower Cholesky factor can be supplied; a precomputed factor skips both the
// factorization and the variable-prioritization reordering.
struct MvnProblem {
    std::vector<double> lower;
    std::vector<double> upper;
    Matrix sigma;         // ignored when a factor is supplied
    Matrix chol;          // lower triangular factor, optional
    bool has_chol = false;

    MvnProblem() = default;
    MvnProblem(std::vector<double> lower_, std::vector<double> upper_, Matrix sigma_);

    static MvnProblem with_cholesky(std::vector<double> lower_, std::vector<double> upper_,
                                    Matrix chol_);

    std::size_t dim() const { return lower.size(); }
};

// Randomized QMC controls: N lattice points per shift, M independent random
// shifts, error estimate E = alpha * (standard error over shifts).
struct QmcParams {
    int n_points = 2000;
    int n_shifts = 12;
    double alpha = 3.0;
    std::uint64_t seed = 0;

    void validate() const;
};

struct MvnResult {
    double p = 0.0;    // probability estimate, clamped to [0,1]
    double err = 0.0;  // error estimate
};

// Randomized QMC estimate of the MVN probability over a hyper-rectangle:
// a prime-square-root rank-1 lattice with M random shifts, integrated through
// the sequentially conditioned (separation-of-variables) form of the
// integrand. Deterministic given (problem, params).
MvnResult mvn_probability(const MvnProblem& problem, const QmcParams& params);

// Dense reference evaluation by nested adaptive quadrature over the
// sequentially conditioned form; dimensions 1..4 only. Absolute error
// around 1e-6 or better on non-degenerate problems.
double mvn_probability_dense(const MvnProblem& problem);

// k x k tridiagonal matrix with 2 on the diagonal and -1 off it; the
// precision matrix used by the band-integral debug tooling and tests.
Matrix tridiagonal_precision(std::size_t k);

}  // namespace trp

#include "trp/mvn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "trp/normal.hpp"
#include "trp/quadrature.hpp"
#include "trp/rng.hpp"

namespace trp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_bounds(const std::vector<double>& lower, const std::vector<double>& upper) {
    if (lower.empty()) throw std::invalid_argument("mvn: dimension must be >= 1");
    if (lower.size() != upper.size()) {
        throw std::invalid_argument("mvn: bound vectors differ in length");
    }
    for (std::size_t i = 0; i < lower.size(); ++i) {
        if (std::isnan(lower[i]) || std::isnan(upper[i]) || lower[i] > upper[i]) {
            throw std::invalid_argument("mvn: requires lower[i] <= upper[i]");
        }
    }
}

std::vector<int> first_primes(std::size_t k) {
    std::vector<int> primes;
    primes.reserve(k);
    int candidate = 2;
    while (primes.size() < k) {
        bool is_prime = true;
        for (int p : primes) {
            if (p * p > candidate) break;
            if (candidate % p == 0) {
                is_prime = false;
                break;
            }
        }
        if (is_prime) primes.push_back(candidate);
        ++candidate;
    }
    return primes;
}

double phi_of_bound(double bound, double shift, double scale) {
    if (bound == -kInf) return 0.0;
    if (bound == kInf) return 1.0;
    return normal_cdf((bound - shift) / scale);
}

}  // namespace

MvnProblem::MvnProblem(std::vector<double> lower_, std::vector<double> upper_, Matrix sigma_)
    : lower(std::move(lower_)), upper(std::move(upper_)), sigma(std::move(sigma_)) {
    check_bounds(lower, upper);
    if (sigma.rows() != lower.size() || sigma.cols() != lower.size()) {
        throw std::invalid_argument("mvn: covariance dimension mismatch");
    }
}

MvnProblem MvnProblem::with_cholesky(std::vector<double> lower_, std::vector<double> upper_,
                                     Matrix chol_) {
    check_bounds(lower_, upper_);
    if (chol_.rows() != lower_.size() || chol_.cols() != lower_.size()) {
        throw std::invalid_argument("mvn: cholesky factor dimension mismatch");
    }
    MvnProblem p;
    p.lower = std::move(lower_);
    p.upper = std::move(upper_);
    p.chol = std::move(chol_);
    p.has_chol = true;
    return p;
}

void QmcParams::validate() const {
    if (n_points < 1) throw std::invalid_argument("qmc: n_points must be >= 1");
    if (n_shifts < 2) throw std::invalid_argument("qmc: n_shifts must be >= 2");
    if (!(alpha > 0.0)) throw std::invalid_argument("qmc: alpha must be positive");
}

MvnResult mvn_probability(const MvnProblem& problem, const QmcParams& params) {
    params.validate();
    const std::size_t k = problem.dim();

    // Variable prioritization: when we factor the covariance ourselves,
    // reorder variables by ascending marginal interval probability. The
    // answer is permutation invariant; the ordering only helps the lattice.
    std::vector<double> a(k), b(k);
    Matrix l;
    if (problem.has_chol) {
        a = problem.lower;
        b = problem.upper;
        l = problem.chol;
    } else {
        std::vector<std::size_t> order(k);
        std::iota(order.begin(), order.end(), 0);
        std::vector<double> marginal(k);
        for (std::size_t i = 0; i < k; ++i) {
            double sd = std::sqrt(problem.sigma(i, i));
            marginal[i] = phi_of_bound(problem.upper[i], 0.0, sd) -
                          phi_of_bound(problem.lower[i], 0.0, sd);
        }
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t i, std::size_t j) { return marginal[i] < marginal[j]; });
        Matrix sigma(k, k);
        for (std::size_t i = 0; i < k; ++i) {
            a[i] = problem.lower[order[i]];
            b[i] = problem.upper[order[i]];
            for (std::size_t j = 0; j < k; ++j) sigma(i, j) = problem.sigma(order[i], order[j]);
        }
        l = cholesky(sigma);
    }

    const auto primes = first_primes(k);
    std::vector<double> q(k);
    for (std::size_t j = 0; j < k; ++j) q[j] = std::sqrt(static_cast<double>(primes[j]));

    const int n_points = params.n_points;
    const int n_shifts = params.n_shifts;

    std::vector<double> delta(k), w(k), y(k);
    double p_mean = 0.0;
    double v = 0.0;
    for (int i = 1; i <= n_shifts; ++i) {
        Rng rng = Rng::substream(params.seed, static_cast<std::uint64_t>(i));
        for (std::size_t m = 0; m < k; ++m) delta[m] = rng.next_uniform();

        double shift_mean = 0.0;
        for (int j = 1; j <= n_points; ++j) {
            for (std::size_t m = 0; m < k; ++m) {
                double t = j * q[m] + delta[m];
                t -= std::floor(t);  // lattice point in [0,1)
                w[m] = std::fabs(2.0 * t - 1.0);
            }
            double d = phi_of_bound(a[0], 0.0, l(0, 0));
            double e = phi_of_bound(b[0], 0.0, l(0, 0));
            double f = e - d;
            for (std::size_t m = 1; m < k && f > 0.0; ++m) {
                y[m - 1] = normal_quantile(d + w[m - 1] * (e - d));
                double dot = 0.0;
                for (std::size_t n = 0; n < m; ++n) dot += l(m, n) * y[n];
                d = phi_of_bound(a[m], dot, l(m, m));
                e = phi_of_bound(b[m], dot, l(m, m));
                f *= std::max(e - d, 0.0);
            }
            shift_mean += (f - shift_mean) / j;
        }
        double dlt = (shift_mean - p_mean) / i;
        p_mean += dlt;
        v = (i - 2) * v / i + dlt * dlt;
    }

    MvnResult result;
    result.p = std::clamp(p_mean, 0.0, 1.0);
    result.err = params.alpha * std::sqrt(v);
    return result;
}

namespace {

// Nested conditioned quadrature; level m integrates y_m over the interval
// induced by the previous coordinates.
struct DenseEvaluator {
    const std::vector<double>& a;
    const std::vector<double>& b;
    const Matrix& l;

    double level(std::size_t m, std::vector<double>& y) const {
        double dot = 0.0;
        for (std::size_t n = 0; n < m; ++n) dot += l(m, n) * y[n];
        double lo = a[m] == -kInf ? -8.5 : (a[m] - dot) / l(m, m);
        double hi = b[m] == kInf ? 8.5 : (b[m] - dot) / l(m, m);
        lo = std::max(lo, -8.5);
        hi = std::min(hi, 8.5);
        if (lo >= hi) return 0.0;
        if (m + 1 == a.size()) {
            return normal_cdf(hi) - normal_cdf(lo);
        }
        auto integrand = [&](double t) {
            y[m] = t;
            return normal_pdf(t) * level(m + 1, y);
        };
        return integrate(integrand, lo, hi, 1e-9, 1e-10, 64).value;
    }
};

}  // namespace

double mvn_probability_dense(const MvnProblem& problem) {
    const std::size_t k = problem.dim();
    if (k > 4) throw std::invalid_argument("mvn_probability_dense: dimension must be <= 4");
    Matrix l = problem.has_chol ? problem.chol : cholesky(problem.sigma);
    std::vector<double> y(k, 0.0);
    DenseEvaluator eval{problem.lower, problem.upper, l};
    return eval.level(0, y);
}

Matrix tridiagonal_precision(std::size_t k) {
    Matrix m(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        m(i, i) = 2.0;
        if (i + 1 < k) {
            m(i, i + 1) = -1.0;
            m(i + 1, i) = -1.0;
        }
    }
    return m;
}

}  // namespace trp

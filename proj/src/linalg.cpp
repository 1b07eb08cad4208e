#include "trp/linalg.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace trp {

Matrix cholesky(const Matrix& sigma) {
    const std::size_t n = sigma.rows();
    if (n == 0 || sigma.cols() != n) {
        throw std::invalid_argument("cholesky: matrix must be square and non-empty");
    }
    double max_diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, std::fabs(sigma(i, i)));

    Matrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = sigma(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
        if (!(d > max_diag * 1e-14)) {
            throw std::invalid_argument("cholesky: matrix not positive definite at pivot " +
                                        std::to_string(j));
        }
        l(j, j) = std::sqrt(d);
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = sigma(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / l(j, j);
        }
    }
    return l;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matmul: dimension mismatch");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

Matrix spd_inverse(const Matrix& sigma) {
    const std::size_t n = sigma.rows();
    Matrix l = cholesky(sigma);
    // Solve L * Linv = I by forward substitution, then Sigma^-1 = Linv^T Linv.
    Matrix linv(n, n);
    for (std::size_t col = 0; col < n; ++col) {
        for (std::size_t i = col; i < n; ++i) {
            double s = (i == col) ? 1.0 : 0.0;
            for (std::size_t k = col; k < i; ++k) s -= l(i, k) * linv(k, col);
            linv(i, col) = s / l(i, i);
        }
    }
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = 0.0;
            for (std::size_t k = i; k < n; ++k) s += linv(k, i) * linv(k, j);
            inv(i, j) = s;
            inv(j, i) = s;
        }
    }
    return inv;
}

}  // namespace trp

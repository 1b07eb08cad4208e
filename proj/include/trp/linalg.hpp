#pragma once

#include <cstddef>
#include <vector>

namespace trp {

// Small dense row-major matrix; sized for the covariance work in this
// project (dimensions in the tens), not for large-scale linear algebra.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<double>& data() const { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// Lower-triangular Cholesky factor of a symmetric positive definite matrix.
// Throws std::invalid_argument naming the failing pivot index when the input
// is not SPD (within a small relative pivot tolerance).
Matrix cholesky(const Matrix& sigma);

// Product A * B (dimension-checked).
Matrix matmul(const Matrix& a, const Matrix& b);

// Inverse via Cholesky; defined for SPD matrices only.
Matrix spd_inverse(const Matrix& sigma);

}  // namespace trp

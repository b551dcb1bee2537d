#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fside {

/// Raised by solve() when a pivot falls below the singularity threshold.
class SingularMatrixError : public std::runtime_error {
public:
    SingularMatrixError(std::size_t column, double pivot)
        : std::runtime_error("matrix singular to working precision at column " +
                             std::to_string(column) + " (pivot " + std::to_string(pivot) + ")"),
          column_(column), pivot_(pivot) {}

    std::size_t column() const noexcept { return column_; }
    double pivot() const noexcept { return pivot_; }

private:
    std::size_t column_;
    double pivot_;
};

using Vector = std::vector<double>;

/// Dense real matrix, row-major. Immutable use after construction is the
/// intended pattern; all operations below are pure.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

    static Matrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<double>& data() const noexcept { return data_; }

    /// Throws std::domain_error if any entry is NaN or infinite.
    void check_finite(const char* context) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix transpose(const Matrix& a);
Matrix matmul(const Matrix& a, const Matrix& b);
Vector matvec(const Matrix& a, const Vector& x);

/// Kronecker product; block (i,j) of the result equals a(i,j) * b.
Matrix kron(const Matrix& a, const Matrix& b);

/// Solves a*x = b by Gauss elimination with partial pivoting.
/// Throws SingularMatrixError when a pivot is below 1e-14 * max|a|.
Vector solve(const Matrix& a, const Vector& b);

/// One-norm condition estimate ||A||_1 * ||A^-1||_1 (inverse formed
/// column-by-column; the collocation systems are small). Returns +inf
/// for singular input instead of throwing.
double condition_estimate_1(const Matrix& a);

/// Cholesky factor L (lower) with A = L L^T. Throws std::runtime_error
/// if A is not positive definite to working precision.
Matrix cholesky(const Matrix& a);

double max_abs(const Matrix& a);
double max_abs(const Vector& v);

}  // namespace fside

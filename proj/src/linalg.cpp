#include "fside/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fside {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
    if (rows != 0 && cols != 0 && rows > std::numeric_limits<std::size_t>::max() / cols) {
        throw std::length_error("matrix dimensions overflow");
    }
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows * cols) {
        throw std::invalid_argument("entry count does not match rows*cols");
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

void Matrix::check_finite(const char* context) const {
    for (double v : data_) {
        if (!std::isfinite(v)) {
            throw std::domain_error(std::string("non-finite entry in ") + context);
        }
    }
}

Matrix transpose(const Matrix& a) {
    Matrix r(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(j, i) = a(i, j);
    return r;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matmul: inner dimensions differ");
    Matrix r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
        }
    }
    return r;
}

Vector matvec(const Matrix& a, const Vector& x) {
    if (a.cols() != x.size()) throw std::invalid_argument("matvec: dimension mismatch");
    Vector y(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    const std::size_t rr = a.rows() * b.rows();
    const std::size_t rc = a.cols() * b.cols();
    if (a.rows() != 0 && b.rows() > std::numeric_limits<std::size_t>::max() / a.rows()) {
        throw std::length_error("kron: dimension overflow");
    }
    Matrix r(rr, rc);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const double aij = a(i, j);
            if (aij == 0.0) continue;
            for (std::size_t p = 0; p < b.rows(); ++p)
                for (std::size_t q = 0; q < b.cols(); ++q)
                    r(i * b.rows() + p, j * b.cols() + q) = aij * b(p, q);
        }
    return r;
}

Vector solve(const Matrix& a, const Vector& b) {
    if (a.rows() != a.cols()) throw std::invalid_argument("solve: matrix not square");
    if (a.rows() != b.size()) throw std::invalid_argument("solve: rhs length mismatch");
    const std::size_t n = a.rows();
    const double threshold = 1e-14 * max_abs(a);

    Matrix lu = a;
    Vector x = b;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t i = col + 1; i < n; ++i)
            if (std::abs(lu(i, col)) > std::abs(lu(piv, col))) piv = i;
        if (std::abs(lu(piv, col)) < threshold) {
            throw SingularMatrixError(col, lu(piv, col));
        }
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu(col, j), lu(piv, j));
            std::swap(x[col], x[piv]);
        }
        for (std::size_t i = col + 1; i < n; ++i) {
            const double f = lu(i, col) / lu(col, col);
            if (f == 0.0) continue;
            for (std::size_t j = col; j < n; ++j) lu(i, j) -= f * lu(col, j);
            x[i] -= f * x[col];
        }
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double s = x[ii];
        for (std::size_t j = ii + 1; j < n; ++j) s -= lu(ii, j) * x[j];
        x[ii] = s / lu(ii, ii);
    }
    return x;
}

namespace {
double one_norm(const Matrix& a) {
    double best = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.rows(); ++i) s += std::abs(a(i, j));
        best = std::max(best, s);
    }
    return best;
}
}  // namespace

double condition_estimate_1(const Matrix& a) {
    const std::size_t n = a.rows();
    double inv_norm = 0.0;
    try {
        for (std::size_t j = 0; j < n; ++j) {
            Vector e(n, 0.0);
            e[j] = 1.0;
            Vector col = solve(a, e);
            double s = 0.0;
            for (double v : col) s += std::abs(v);
            inv_norm = std::max(inv_norm, s);
        }
    } catch (const SingularMatrixError&) {
        return std::numeric_limits<double>::infinity();
    }
    return one_norm(a) * inv_norm;
}

Matrix cholesky(const Matrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("cholesky: matrix not square");
    const std::size_t n = a.rows();
    Matrix l(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            if (i == j) {
                if (s <= 0.0) throw std::runtime_error("cholesky: matrix not positive definite");
                l(i, i) = std::sqrt(s);
            } else {
                l(i, j) = s / l(j, j);
            }
        }
    }
    return l;
}

double max_abs(const Matrix& a) {
    double m = 0.0;
    for (double v : a.data()) m = std::max(m, std::abs(v));
    return m;
}

double max_abs(const Vector& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace fside

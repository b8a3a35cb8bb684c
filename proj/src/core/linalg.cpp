#include "torsym/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "torsym/errors.hpp"

namespace torsym {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), data_(std::move(values)) {
    if (data_.size() != rows * cols) throw DomainError("Matrix: value count does not match shape");
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(std::span<const double> diag) {
    Matrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool Matrix::is_symmetric() const noexcept {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw DomainError("matrix product: shape mismatch");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DomainError("matrix sum: shape mismatch");
    Matrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
    return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    return a + (-1.0) * b;
}

Matrix operator*(double s, const Matrix& a) {
    Matrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
    return c;
}

std::vector<double> operator*(const Matrix& a, std::span<const double> v) {
    if (a.cols() != v.size()) throw DomainError("matrix-vector product: shape mismatch");
    std::vector<double> out(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
    return out;
}

Matrix symmetrized(const Matrix& m) {
    if (m.rows() != m.cols()) throw DomainError("symmetrized: matrix must be square");
    Matrix s(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) s(i, j) = 0.5 * (m(i, j) + m(j, i));
    return s;
}

double quadratic_form(std::span<const double> v, const Matrix& m) {
    if (m.rows() != v.size() || m.cols() != v.size()) throw DomainError("quadratic_form: shape mismatch");
    double q = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) q += v[i] * m(i, j) * v[j];
    return q;
}

Matrix cholesky(const Matrix& m) {
    const std::size_t n = m.rows();
    if (n == 0 || m.cols() != n) throw DomainError("cholesky: matrix must be square and non-empty");
    if (n > 64) throw DomainError("cholesky: dimension above 64 is not supported");
    if (!m.is_symmetric()) throw DomainError("cholesky: matrix is not symmetric");

    double max_diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, std::fabs(m(i, i)));
    const double threshold = kCholeskyJitter * max_diag;

    Matrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double pivot = m(j, j);
        for (std::size_t k = 0; k < j; ++k) pivot -= l(j, k) * l(j, k);
        if (!(pivot > threshold) || max_diag == 0.0) {
            throw DegenerateError("degenerate information matrix (pivot " + std::to_string(pivot) +
                                  " at index " + std::to_string(j) + ")");
        }
        const double ljj = std::sqrt(pivot);
        l(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double v = m(i, j);
            for (std::size_t k = 0; k < j; ++k) v -= l(i, k) * l(j, k);
            l(i, j) = v / ljj;
        }
    }
    return l;
}

namespace {

// Solves L L' x = b in place.
void cholesky_solve_in_place(const Matrix& l, std::span<double> x) {
    const std::size_t n = l.rows();
    for (std::size_t i = 0; i < n; ++i) {
        double v = x[i];
        for (std::size_t k = 0; k < i; ++k) v -= l(i, k) * x[k];
        x[i] = v / l(i, i);
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double v = x[ii];
        for (std::size_t k = ii + 1; k < n; ++k) v -= l(k, ii) * x[k];
        x[ii] = v / l(ii, ii);
    }
}

}  // namespace

Matrix spd_inverse(const Matrix& m) {
    const Matrix l = cholesky(m);
    const std::size_t n = m.rows();
    Matrix inv(n, n);
    std::vector<double> col(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::fill(col.begin(), col.end(), 0.0);
        col[j] = 1.0;
        cholesky_solve_in_place(l, col);
        for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
    }
    return symmetrized(inv);
}

std::vector<double> spd_solve(const Matrix& m, std::span<const double> b) {
    if (b.size() != m.rows()) throw DomainError("spd_solve: shape mismatch");
    const Matrix l = cholesky(m);
    std::vector<double> x(b.begin(), b.end());
    cholesky_solve_in_place(l, x);
    return x;
}

Matrix inverse(const Matrix& m) {
    const std::size_t n = m.rows();
    if (n == 0 || m.cols() != n) throw DomainError("inverse: matrix must be square and non-empty");
    if (n > 64) throw DomainError("inverse: dimension above 64 is not supported");
    double scale = 0.0;
    for (double v : m.values()) scale = std::max(scale, std::fabs(v));
    const double threshold = kCholeskyJitter * scale;

    Matrix a = m;
    Matrix inv = Matrix::identity(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t p = j;
        for (std::size_t i = j + 1; i < n; ++i) {
            if (std::fabs(a(i, j)) > std::fabs(a(p, j))) p = i;
        }
        if (!(std::fabs(a(p, j)) > threshold) || scale == 0.0) {
            throw DegenerateError("degenerate information matrix (pivot " + std::to_string(a(p, j)) +
                                  " at index " + std::to_string(j) + ")");
        }
        if (p != j) {
            for (std::size_t k = 0; k < n; ++k) {
                std::swap(a(p, k), a(j, k));
                std::swap(inv(p, k), inv(j, k));
            }
        }
        const double d = a(j, j);
        for (std::size_t k = 0; k < n; ++k) {
            a(j, k) /= d;
            inv(j, k) /= d;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == j) continue;
            const double f = a(i, j);
            if (f == 0.0) continue;
            for (std::size_t k = 0; k < n; ++k) {
                a(i, k) -= f * a(j, k);
                inv(i, k) -= f * inv(j, k);
            }
        }
    }
    return inv;
}

}  // namespace torsym

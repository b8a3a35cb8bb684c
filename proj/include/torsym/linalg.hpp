#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace torsym {

/// Small dense row-major matrix. Sized for information matrices (d <= 64).
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> values);

    static Matrix identity(std::size_t n);
    static Matrix diagonal(std::span<const double> diag);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const double> values() const noexcept { return data_; }

    Matrix transposed() const;
    bool is_symmetric() const noexcept;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);
std::vector<double> operator*(const Matrix& a, std::span<const double> v);

/// (M + M^T) / 2.
Matrix symmetrized(const Matrix& m);

/// v' M v.
double quadratic_form(std::span<const double> v, const Matrix& m);

/// Relative pivot threshold below which a matrix is declared degenerate.
inline constexpr double kCholeskyJitter = 1e-12;

/// Lower Cholesky factor L with M = L L'. Throws DegenerateError
/// ("degenerate information matrix") when a pivot falls below
/// kCholeskyJitter * max diagonal entry, and DomainError for a non-square
/// or non-symmetric argument.
Matrix cholesky(const Matrix& m);

/// Inverse of a symmetric positive-definite matrix via Cholesky.
Matrix spd_inverse(const Matrix& m);

/// Inverse of a general square matrix by Gauss-Jordan elimination with
/// partial pivoting. Throws DegenerateError when a pivot falls below
/// kCholeskyJitter * max |entry|.
Matrix inverse(const Matrix& m);

/// Solves M x = b for symmetric positive-definite M.
std::vector<double> spd_solve(const Matrix& m, std::span<const double> b);

}  // namespace torsym

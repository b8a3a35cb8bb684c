#pragma once

#include <cstddef>
#include <numbers>
#include <span>
#include <string_view>
#include <vector>

namespace torsym {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Maps x onto the canonical range [-pi, pi). pi itself maps to -pi.
/// Throws DomainError for non-finite input.
double wrap_angle(double x);

/// Component-wise wrap_angle.
std::vector<double> wrap_angles(std::span<const double> x);

/// Parses a comma-separated list of numbers ("0.1,-2,3").
std::vector<double> parse_angle_list(const std::string_view text);

/// n x d matrix of angular observations stored row-major. Every entry is
/// kept in [-pi, pi).
class AngleMatrix {
public:
    AngleMatrix() = default;
    AngleMatrix(std::size_t rows, std::size_t cols);
    /// Wraps every value of `values` (row-major, rows*cols entries).
    AngleMatrix(std::size_t rows, std::size_t cols, std::vector<double> values);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0; }

    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    /// Stores wrap_angle(value).
    void set(std::size_t i, std::size_t j, double value);

    std::span<const double> row(std::size_t i) const {
        return {data_.data() + i * cols_, cols_};
    }
    std::span<const double> values() const noexcept { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

}  // namespace torsym

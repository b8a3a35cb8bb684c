#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "torsym/angle.hpp"
#include "torsym/models.hpp"
#include "torsym/rng.hpp"

namespace torsym {

/// Skewness vector lambda with sum |lambda_j| <= 1.
class SkewVector {
public:
    SkewVector() = default;
    /// Throws DomainError if the l1 norm exceeds one (with 1e-12 slack).
    explicit SkewVector(std::vector<double> lambda);
    static SkewVector zero(int dim) { return SkewVector(std::vector<double>(dim, 0.0)); }

    static bool admissible(std::span<const double> lambda) noexcept;

    std::span<const double> values() const noexcept { return lambda_; }
    std::size_t size() const noexcept { return lambda_.size(); }
    double operator[](std::size_t j) const { return lambda_[j]; }
    bool is_zero() const noexcept;

private:
    std::vector<double> lambda_;
};

/// f0(theta - mu) (1 + sum_j lambda_j sin(theta_j - mu_j)).
class SineSkewedModel {
public:
    SineSkewedModel(BaseModel base, std::vector<double> mu, SkewVector lambda);

    const BaseModel& base() const noexcept { return base_; }
    std::span<const double> mu() const noexcept { return mu_; }
    const SkewVector& lambda() const noexcept { return lambda_; }
    int dim() const noexcept { return base_.dim(); }

    double density(std::span<const double> theta) const;

    /// Draws Theta ~ f0 and U ~ U(0,1); returns mu + Theta when
    /// U <= (1 + sum lambda_j sin Theta_j) / 2 and mu - Theta otherwise.
    AngleMatrix sample(std::size_t n, RngStream& rng) const;
    void sample_into(RngStream& rng, std::span<double> out) const;

private:
    BaseModel base_;
    std::vector<double> mu_;
    SkewVector lambda_;
};

double sine_skew_density(const SineSkewedModel& model, std::span<const double> theta);
AngleMatrix sample_sine_skewed(const SineSkewedModel& model, std::size_t n, RngStream& rng);

}  // namespace torsym

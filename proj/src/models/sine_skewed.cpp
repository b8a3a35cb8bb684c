#include "torsym/sine_skewed.hpp"

#include <cmath>
#include <string>

#include "torsym/errors.hpp"

namespace torsym {

namespace {
constexpr double kSkewSlack = 1e-12;
}

SkewVector::SkewVector(std::vector<double> lambda) : lambda_(std::move(lambda)) {
    for (double l : lambda_) {
        if (!std::isfinite(l)) throw DomainError("skewness vector has a non-finite entry");
    }
    if (!admissible(lambda_)) {
        throw DomainError("skewness vector violates sum |lambda_j| <= 1");
    }
}

bool SkewVector::admissible(std::span<const double> lambda) noexcept {
    double l1 = 0.0;
    for (double l : lambda) l1 += std::fabs(l);
    return l1 <= 1.0 + kSkewSlack;
}

bool SkewVector::is_zero() const noexcept {
    for (double l : lambda_) {
        if (l != 0.0) return false;
    }
    return true;
}

SineSkewedModel::SineSkewedModel(BaseModel base, std::vector<double> mu, SkewVector lambda)
    : base_(std::move(base)), mu_(std::move(mu)), lambda_(std::move(lambda)) {
    const auto d = static_cast<std::size_t>(base_.dim());
    if (mu_.size() != d) {
        throw DomainError("location vector has length " + std::to_string(mu_.size()) +
                          ", model dimension is " + std::to_string(d));
    }
    if (lambda_.size() != d) {
        throw DomainError("skewness vector has length " + std::to_string(lambda_.size()) +
                          ", model dimension is " + std::to_string(d));
    }
    for (double& m : mu_) m = wrap_angle(m);
}

double SineSkewedModel::density(std::span<const double> theta) const {
    const std::size_t d = mu_.size();
    if (theta.size() != d) throw DomainError("sine_skew_density: dimension mismatch");
    std::vector<double> shifted(d);
    double skew = 1.0;
    for (std::size_t j = 0; j < d; ++j) {
        shifted[j] = theta[j] - mu_[j];
        skew += lambda_[j] * std::sin(shifted[j]);
    }
    return base_.density(shifted) * skew;
}

void SineSkewedModel::sample_into(RngStream& rng, std::span<double> out) const {
    base_.sample_into(rng, out);
    const std::size_t d = mu_.size();
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) s += lambda_[j] * std::sin(out[j]);
    const double u = rng.uniform();
    const double sign = (u <= 0.5 * (1.0 + s)) ? 1.0 : -1.0;
    for (std::size_t j = 0; j < d; ++j) out[j] = wrap_angle(mu_[j] + sign * out[j]);
}

AngleMatrix SineSkewedModel::sample(std::size_t n, RngStream& rng) const {
    if (n < 1) throw DomainError("sample: n must be >= 1");
    const std::size_t d = mu_.size();
    std::vector<double> values(n * d);
    for (std::size_t i = 0; i < n; ++i) sample_into(rng, std::span<double>(values.data() + i * d, d));
    return AngleMatrix(n, d, std::move(values));
}

double sine_skew_density(const SineSkewedModel& model, std::span<const double> theta) {
    return model.density(theta);
}

AngleMatrix sample_sine_skewed(const SineSkewedModel& model, std::size_t n, RngStream& rng) {
    return model.sample(n, rng);
}

}  // namespace torsym

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "torsym/angle.hpp"
#include "torsym/linalg.hpp"
#include "torsym/rng.hpp"

namespace torsym {

enum class ModelKind { IndepWrappedCauchy, SineModel, BivariateWrappedCauchy, UniformTorus };

/// Symmetric unimodal density on the d-torus with its mode at the origin:
/// f(theta) == f(-theta), positive, 2 pi-periodic, integrating to one.
///
/// Parameters by kind:
///  - IndepWrappedCauchy: product of wrapped Cauchy marginals, beta_j in (0,1).
///  - SineModel (d = 2): exp(k1 cos t1 + k2 cos t2 + rho sin t1 sin t2) / C,
///    k1, k2 >= 0. Unimodal iff rho^2 <= k1 k2; violating parameters are
///    rejected unless `allow_multimodal` is set.
///  - BivariateWrappedCauchy (d = 2): closed-form density, xi1, xi2 in
///    [0,1), rho in (-1,1).
///  - UniformTorus: constant 1 / (2 pi)^d.
///
/// Immutable after construction; normalizing constants and the sampler
/// envelope are computed eagerly, so concurrent reads are safe.
class BaseModel {
public:
    static BaseModel independent_wrapped_cauchy(std::vector<double> beta);
    static BaseModel sine(double k1, double k2, double rho, bool allow_multimodal = false);
    static BaseModel bivariate_wrapped_cauchy(double xi1, double xi2, double rho);
    static BaseModel uniform(int dim);

    ModelKind kind() const noexcept { return kind_; }
    int dim() const noexcept { return dim_; }
    std::span<const double> params() const noexcept { return params_; }

    /// Short label such as "I_{0.1;0.1}", "S_{1;1;0.1}", "BWC_{0.1;0.5;0.3}".
    std::string label() const;

    double density(std::span<const double> theta) const;
    double log_density(std::span<const double> theta) const;

    /// phi_j = -(d/d theta_j) f / f.
    std::vector<double> score(std::span<const double> theta) const;
    void score_into(std::span<const double> theta, std::span<double> out) const;

    /// Entry (j,k) = d phi_j / d theta_k.
    Matrix score_jacobian(std::span<const double> theta) const;
    void score_jacobian_into(std::span<const double> theta, std::span<double> out) const;

    /// Largest density value (envelope height for rejection sampling).
    double sup_density() const noexcept { return sup_density_; }

    /// n iid draws. Throws DegenerateError if the rejection envelope accepts
    /// with probability below 1e-4.
    AngleMatrix sample(std::size_t n, RngStream& rng) const;
    /// One draw written to `out` (size dim()).
    void sample_into(RngStream& rng, std::span<double> out) const;

private:
    BaseModel(ModelKind kind, int dim, std::vector<double> params);
    void prepare();
    void check_dim(std::span<const double> theta) const;
    double bwc_denominator(double t1, double t2) const;

    ModelKind kind_;
    int dim_;
    std::vector<double> params_;
    double log_norm_ = 0.0;       // SineModel: log of the normalizing constant
    std::vector<double> bwc_c_;   // BWC: c, c0..c4
    double sup_density_ = 0.0;
};

/// Central finite-difference score, step h = eps^{1/3} max(1, |theta_j|).
std::vector<double> numerical_score(const BaseModel& model, std::span<const double> theta);

/// Central finite differences of the analytic score.
Matrix numerical_score_jacobian(const BaseModel& model, std::span<const double> theta);

/// Envelope acceptance probability below which rejection sampling gives up.
inline constexpr double kMinAcceptanceRate = 1e-4;

/// sample_base: n iid draws from f0.
AngleMatrix sample_base(const BaseModel& model, std::size_t n, RngStream& rng);

}  // namespace torsym

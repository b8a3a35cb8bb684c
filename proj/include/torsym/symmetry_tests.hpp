#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "torsym/angle.hpp"
#include "torsym/linalg.hpp"
#include "torsym/models.hpp"

namespace torsym {

enum class CenterSource { Given, Estimated };

struct TestReport {
    double statistic = 0.0;
    int df = 0;
    double p_value = 1.0;
    double alpha = 0.05;
    double critical_value = 0.0;
    bool reject = false;
    std::vector<double> center;
    CenterSource center_source = CenterSource::Given;
    std::optional<std::string> f0_used;
    std::size_t n = 0;
};

/// Opt-in numerical aids. Off by default: degenerate matrices raise.
struct TestOptions {
    /// Adds 1e-8 I to every matrix before inversion (exploratory use only).
    bool ridge = false;
};

inline constexpr double kRidge = 1e-8;
inline constexpr double kMinResultantLength = 1e-8;
/// Smallest mean of sin^2(theta_j - mu_hat_j) accepted by the unknown-center test.
inline constexpr double kMinSpread = 1e-12;

/// n^{-1/2} sum_i sin(theta_ji - mu_j).
std::vector<double> central_sequence_lambda(const AngleMatrix& data, std::span<const double> mu);

/// n^{-1/2} sum_i phi^{f0}(theta_i - mu): the location part of the central
/// sequence.
std::vector<double> central_sequence_mu(const AngleMatrix& data, std::span<const double> mu,
                                        const BaseModel& f0);

/// (1/n) sum_i sin(theta_ji - mu_j) sin(theta_ki - mu_k).
Matrix empirical_gamma_lambda(const AngleMatrix& data, std::span<const double> mu);

/// Studentized test for symmetry about a known center. Distribution-free
/// over symmetric f0: no base model is involved.
TestReport test_known_center(const AngleMatrix& data, std::span<const double> mu, double alpha,
                             const TestOptions& options = {});

/// Component-wise circular mean direction. Throws DegenerateError when a
/// coordinate has mean resultant length below kMinResultantLength.
std::vector<double> estimate_location(const AngleMatrix& data);

/// (1/n) sum_i cos(theta_ji - mu_hat_j).
std::vector<double> estimate_I_mu_lambda(const AngleMatrix& data, std::span<const double> mu_hat);

/// Symmetrized average of the score Jacobian of f0 over theta_i - mu_hat.
Matrix estimate_C_mu_mu(const AngleMatrix& data, std::span<const double> mu_hat, const BaseModel& f0);

struct EfficientCentralSequence {
    /// n^{-1/2} sum_i of the summands.
    std::vector<double> delta;
    /// n x d; row i is the per-observation summand
    /// sin(theta_i - mu_hat) - C_mu_lambda C_mu_mu^{-1} phi(theta_i - mu_hat).
    Matrix summands;
};

/// Location-orthogonalized skewness central sequence. Throws
/// DegenerateError ("singular score information") if C_mu_mu is singular.
EfficientCentralSequence efficient_central_sequence(const AngleMatrix& data,
                                                    std::span<const double> mu_hat,
                                                    const BaseModel& f0,
                                                    const TestOptions& options = {});

/// (1/n) sum_i u_i u_i' for the rows u_i of `summands`.
Matrix variance_estimate(const Matrix& summands);

/// Test for symmetry with the center estimated by the circular mean.
TestReport test_unknown_center(const AngleMatrix& data, const BaseModel& f0, double alpha,
                               const TestOptions& options = {});

/// Builds a report from a statistic: p-value from chi2_sf, decision against
/// chi2_quantile(alpha, df).
TestReport make_report(double statistic, int df, double alpha);

}  // namespace torsym

#include "torsym/power.hpp"

#include <cmath>
#include <string>

#include "torsym/errors.hpp"
#include "torsym/fisher.hpp"
#include "torsym/quadrature.hpp"
#include "torsym/special_functions.hpp"

namespace torsym {

namespace {

constexpr std::size_t kKappaBatches = 10;

void check_tau(std::span<const double> tau, int d) {
    if (static_cast<int>(tau.size()) != d) {
        throw DomainError("tau has length " + std::to_string(tau.size()) + ", model dimension is " +
                          std::to_string(d));
    }
}

// First pass: E cos theta_j and E d phi_j / d theta_k under g0.
// Second pass: E[u u'] and E[u sin'] with u = sin - B phi^{f0}.
struct MomentIntegrands {
    const BaseModel& f0;
    const BaseModel& g0;
    std::size_t d;

    void first(std::span<const double> theta, std::span<double> out) const {
        const double g = g0.density(theta);
        for (std::size_t j = 0; j < d; ++j) out[j] = std::cos(theta[j]) * g;
        f0.score_jacobian_into(theta, out.subspan(d, d * d));
        for (std::size_t q = 0; q < d * d; ++q) out[d + q] *= g;
    }

    void second(const Matrix& projection, std::span<const double> theta, std::span<double> out) const {
        const double g = g0.density(theta);
        double phi[64], s[64], u[64];
        f0.score_into(theta, std::span<double>(phi, d));
        for (std::size_t j = 0; j < d; ++j) s[j] = std::sin(theta[j]);
        for (std::size_t j = 0; j < d; ++j) {
            u[j] = s[j];
            for (std::size_t k = 0; k < d; ++k) u[j] -= projection(j, k) * phi[k];
        }
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k) {
                out[j * d + k] = u[j] * u[k] * g;
                out[d * d + j * d + k] = u[j] * s[k] * g;
            }
    }
};

Matrix projection_matrix(const std::vector<double>& c_mu_lambda, const Matrix& c_mu_mu) {
    const std::size_t d = c_mu_lambda.size();
    Matrix inv;
    try {
        inv = symmetrized(inverse(symmetrized(c_mu_mu)));
    } catch (const DegenerateError& e) {
        throw DegenerateError(std::string("singular score information; choose a different f0 (") + e.what() + ")");
    }
    Matrix b(d, d);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k) b(j, k) = c_mu_lambda[j] * inv(j, k);
    return b;
}

double kappa_from_moments(const Matrix& variance, const Matrix& cross, std::span<const double> tau) {
    const auto shift = cross * tau;
    return std::max(0.0, quadratic_form(shift, spd_inverse(symmetrized(variance))));
}

}  // namespace

double power_from_kappa(double kappa, int d, double alpha) {
    return noncentral_chi2_sf(chi2_quantile(alpha, d), d, kappa);
}

AsymptoticPower asymptotic_power_known(std::span<const double> tau, const BaseModel& f0, double alpha) {
    check_tau(tau, f0.dim());
    const Matrix gamma = lambda_block(fisher_info(f0));
    AsymptoticPower p;
    p.kappa = std::max(0.0, quadratic_form(tau, gamma));
    p.power = power_from_kappa(p.kappa, f0.dim(), alpha);
    return p;
}

UnknownCenterMoments unknown_center_moments(const BaseModel& f0, const BaseModel& g0) {
    if (f0.dim() != g0.dim()) throw DomainError("f0 and g0 must have the same dimension");
    const int dim = f0.dim();
    if (dim > 64) throw DomainError("dimension above 64 is not supported");
    const std::size_t d = static_cast<std::size_t>(dim);
    const MomentIntegrands integrands{f0, g0, d};

    const auto m1 = periodic_integrate_many(
        [&](std::span<const double> t, std::span<double> o) { integrands.first(t, o); }, d + d * d, dim);
    UnknownCenterMoments out;
    out.c_mu_lambda.assign(m1.begin(), m1.begin() + d);
    out.c_mu_mu = symmetrized(Matrix(d, d, std::vector<double>(m1.begin() + d, m1.end())));

    const Matrix b = projection_matrix(out.c_mu_lambda, out.c_mu_mu);
    const auto m2 = periodic_integrate_many(
        [&](std::span<const double> t, std::span<double> o) { integrands.second(b, t, o); }, 2 * d * d, dim);
    out.variance = symmetrized(Matrix(d, d, std::vector<double>(m2.begin(), m2.begin() + d * d)));
    out.cross = Matrix(d, d, std::vector<double>(m2.begin() + d * d, m2.end()));
    return out;
}

AsymptoticPower asymptotic_power_unknown(std::span<const double> tau, const BaseModel& f0,
                                         const BaseModel& g0, double alpha) {
    check_tau(tau, f0.dim());
    const auto moments = unknown_center_moments(f0, g0);
    AsymptoticPower p;
    p.kappa = kappa_from_moments(moments.variance, moments.cross, tau);
    p.power = power_from_kappa(p.kappa, f0.dim(), alpha);

    if (f0.dim() > kMaxTensorDim) {
        // Monte Carlo integration: spread of kappa over independent batches
        // of the same total size gives its standard error.
        const std::size_t d = static_cast<std::size_t>(f0.dim());
        const MomentIntegrands integrands{f0, g0, d};
        const std::size_t per_batch = kMonteCarloSamples / kKappaBatches;
        double sum = 0.0, sum2 = 0.0;
        for (std::size_t b = 0; b < kKappaBatches; ++b) {
            const std::uint64_t seed = kMonteCarloSeed + 1 + b;
            const auto m1 = monte_carlo_integrate_many(
                [&](std::span<const double> t, std::span<double> o) { integrands.first(t, o); }, d + d * d,
                f0.dim(), per_batch, seed);
            std::vector<double> c_ml(m1.mean.begin(), m1.mean.begin() + d);
            const Matrix c_mm(d, d, std::vector<double>(m1.mean.begin() + d, m1.mean.end()));
            const Matrix proj = projection_matrix(c_ml, c_mm);
            const auto m2 = monte_carlo_integrate_many(
                [&](std::span<const double> t, std::span<double> o) { integrands.second(proj, t, o); },
                2 * d * d, f0.dim(), per_batch, seed);
            const Matrix var(d, d, std::vector<double>(m2.mean.begin(), m2.mean.begin() + d * d));
            const Matrix cross(d, d, std::vector<double>(m2.mean.begin() + d * d, m2.mean.end()));
            const double k = kappa_from_moments(var, cross, tau);
            sum += k;
            sum2 += k * k;
        }
        const double nb = static_cast<double>(kKappaBatches);
        const double mean = sum / nb;
        const double var = std::max(0.0, (sum2 / nb - mean * mean) * nb / (nb - 1.0));
        p.kappa_stderr = std::sqrt(var / nb);
    }
    return p;
}

}  // namespace torsym

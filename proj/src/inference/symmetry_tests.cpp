#include "torsym/symmetry_tests.hpp"

#include <cmath>
#include <string>

#include "torsym/errors.hpp"
#include "torsym/special_functions.hpp"

namespace torsym {

namespace {

void check_center(const AngleMatrix& data, std::span<const double> mu) {
    if (data.rows() == 0) throw DomainError("empty sample");
    if (mu.size() != data.cols()) {
        throw DomainError("center has length " + std::to_string(mu.size()) + " but data has " +
                          std::to_string(data.cols()) + " columns");
    }
}

Matrix with_ridge(Matrix m, const TestOptions& options) {
    if (options.ridge) {
        for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) += kRidge;
    }
    return m;
}

}  // namespace

std::vector<double> central_sequence_lambda(const AngleMatrix& data, std::span<const double> mu) {
    check_center(data, mu);
    const std::size_t n = data.rows(), d = data.cols();
    std::vector<double> delta(d, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j) delta[j] += std::sin(data(i, j) - mu[j]);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (double& v : delta) v *= scale;
    return delta;
}

std::vector<double> central_sequence_mu(const AngleMatrix& data, std::span<const double> mu,
                                        const BaseModel& f0) {
    check_center(data, mu);
    const std::size_t n = data.rows(), d = data.cols();
    if (static_cast<std::size_t>(f0.dim()) != d) throw DomainError("f0 dimension does not match data");
    std::vector<double> delta(d, 0.0), shifted(d), phi(d);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j) shifted[j] = data(i, j) - mu[j];
        f0.score_into(shifted, phi);
        for (std::size_t j = 0; j < d; ++j) delta[j] += phi[j];
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (double& v : delta) v *= scale;
    return delta;
}

Matrix empirical_gamma_lambda(const AngleMatrix& data, std::span<const double> mu) {
    check_center(data, mu);
    const std::size_t n = data.rows(), d = data.cols();
    Matrix gamma(d, d);
    std::vector<double> s(d);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j) s[j] = std::sin(data(i, j) - mu[j]);
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = j; k < d; ++k) gamma(j, k) += s[j] * s[k];
    }
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = j; k < d; ++k) {
            gamma(j, k) /= static_cast<double>(n);
            gamma(k, j) = gamma(j, k);
        }
    return gamma;
}

TestReport make_report(double statistic, int df, double alpha) {
    TestReport r;
    r.statistic = statistic;
    r.df = df;
    r.alpha = alpha;
    r.p_value = chi2_sf(std::max(0.0, statistic), df);
    r.critical_value = chi2_quantile(alpha, df);
    r.reject = statistic > r.critical_value;
    return r;
}

TestReport test_known_center(const AngleMatrix& data, std::span<const double> mu, double alpha,
                             const TestOptions& options) {
    check_center(data, mu);
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0,1)");
    const std::size_t d = data.cols();
    if (data.rows() < d + 1) {
        throw DomainError("known-center test needs n >= d + 1 observations");
    }
    const auto delta = central_sequence_lambda(data, mu);
    Matrix gamma = with_ridge(empirical_gamma_lambda(data, mu), options);
    double statistic;
    try {
        statistic = std::max(0.0, quadratic_form(delta, spd_inverse(gamma)));
    } catch (const DegenerateError& e) {
        throw DegenerateError(std::string("degenerate sample: ") + e.what());
    }
    TestReport r = make_report(statistic, static_cast<int>(d), alpha);
    r.center.assign(mu.begin(), mu.end());
    r.center_source = CenterSource::Given;
    r.n = data.rows();
    return r;
}

std::vector<double> estimate_location(const AngleMatrix& data) {
    if (data.rows() == 0) throw DomainError("estimate_location: empty sample");
    const std::size_t n = data.rows(), d = data.cols();
    std::vector<double> mu(d);
    for (std::size_t j = 0; j < d; ++j) {
        double s = 0.0, c = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            s += std::sin(data(i, j));
            c += std::cos(data(i, j));
        }
        s /= static_cast<double>(n);
        c /= static_cast<double>(n);
        if (std::hypot(s, c) < kMinResultantLength) {
            throw DegenerateError("no identifiable center: mean resultant length of coordinate " +
                                  std::to_string(j + 1) + " is zero");
        }
        mu[j] = wrap_angle(std::atan2(s, c));
    }
    return mu;
}

std::vector<double> estimate_I_mu_lambda(const AngleMatrix& data, std::span<const double> mu_hat) {
    check_center(data, mu_hat);
    const std::size_t n = data.rows(), d = data.cols();
    std::vector<double> out(d, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j) out[j] += std::cos(data(i, j) - mu_hat[j]);
    for (double& v : out) v /= static_cast<double>(n);
    return out;
}

Matrix estimate_C_mu_mu(const AngleMatrix& data, std::span<const double> mu_hat, const BaseModel& f0) {
    check_center(data, mu_hat);
    const std::size_t n = data.rows(), d = data.cols();
    if (static_cast<std::size_t>(f0.dim()) != d) throw DomainError("f0 dimension does not match data");
    std::vector<double> shifted(d), jac(d * d), acc(d * d, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j) shifted[j] = data(i, j) - mu_hat[j];
        f0.score_jacobian_into(shifted, jac);
        for (std::size_t q = 0; q < d * d; ++q) acc[q] += jac[q];
    }
    for (double& v : acc) v /= static_cast<double>(n);
    return symmetrized(Matrix(d, d, std::move(acc)));
}

EfficientCentralSequence efficient_central_sequence(const AngleMatrix& data, std::span<const double> mu_hat,
                                                    const BaseModel& f0, const TestOptions& options) {
    check_center(data, mu_hat);
    const std::size_t n = data.rows(), d = data.cols();
    if (static_cast<std::size_t>(f0.dim()) != d) throw DomainError("f0 dimension does not match data");

    const auto c_mu_lambda = estimate_I_mu_lambda(data, mu_hat);
    const Matrix c_mu_mu = with_ridge(estimate_C_mu_mu(data, mu_hat, f0), options);
    Matrix c_mu_mu_inv;
    try {
        c_mu_mu_inv = symmetrized(inverse(c_mu_mu));
    } catch (const DegenerateError& e) {
        throw DegenerateError(std::string("singular score information; choose a different f0 (") + e.what() + ")");
    }
    // Projection B = C_mu_lambda C_mu_mu^{-1}; C_mu_lambda is diagonal.
    Matrix projection(d, d);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k) projection(j, k) = c_mu_lambda[j] * c_mu_mu_inv(j, k);

    EfficientCentralSequence out{std::vector<double>(d, 0.0), Matrix(n, d)};
    std::vector<double> shifted(d), phi(d);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j) shifted[j] = data(i, j) - mu_hat[j];
        f0.score_into(shifted, phi);
        for (std::size_t j = 0; j < d; ++j) {
            double u = std::sin(shifted[j]);
            for (std::size_t k = 0; k < d; ++k) u -= projection(j, k) * phi[k];
            out.summands(i, j) = u;
            out.delta[j] += u;
        }
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (double& v : out.delta) v *= scale;
    return out;
}

Matrix variance_estimate(const Matrix& summands) {
    const std::size_t n = summands.rows(), d = summands.cols();
    if (n == 0) throw DomainError("variance_estimate: no summands");
    Matrix v(d, d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = j; k < d; ++k) v(j, k) += summands(i, j) * summands(i, k);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = j; k < d; ++k) {
            v(j, k) /= static_cast<double>(n);
            v(k, j) = v(j, k);
        }
    return v;
}

TestReport test_unknown_center(const AngleMatrix& data, const BaseModel& f0, double alpha,
                               const TestOptions& options) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0,1)");
    const std::size_t d = data.cols();
    if (static_cast<std::size_t>(f0.dim()) != d) {
        throw DomainError("f0 has dimension " + std::to_string(f0.dim()) + " but data has " +
                          std::to_string(d) + " columns");
    }
    if (data.rows() < 2 * d + 2) {
        throw DomainError("unknown-center test needs n >= 2d + 2 observations");
    }
    const auto mu_hat = estimate_location(data);
    const Matrix gamma = empirical_gamma_lambda(data, mu_hat);
    for (std::size_t j = 0; j < d; ++j) {
        if (!(gamma(j, j) > kMinSpread)) {
            throw DegenerateError("degenerate sample: coordinate " + std::to_string(j + 1) +
                                  " has no spread about the estimated center");
        }
    }
    const auto ecs = efficient_central_sequence(data, mu_hat, f0, options);
    const Matrix v = with_ridge(variance_estimate(ecs.summands), options);
    double statistic;
    try {
        statistic = std::max(0.0, quadratic_form(ecs.delta, spd_inverse(v)));
    } catch (const DegenerateError& e) {
        throw DegenerateError(std::string("degenerate sample: singular variance of the efficient central sequence; "
                                          "choose a different f0 (") + e.what() + ")");
    }
    TestReport r = make_report(statistic, static_cast<int>(d), alpha);
    r.center = mu_hat;
    r.center_source = CenterSource::Estimated;
    r.f0_used = f0.label();
    r.n = data.rows();
    return r;
}

}  // namespace torsym

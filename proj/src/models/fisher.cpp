#include "torsym/fisher.hpp"

#include <cmath>

#include "torsym/errors.hpp"
#include "torsym/quadrature.hpp"

namespace torsym {

Matrix fisher_info(const BaseModel& model) {
    const int d = model.dim();
    if (d > 64) throw DomainError("fisher_info: dimension above 64 is not supported");
    const std::size_t du = static_cast<std::size_t>(d);
    // Outputs: phi_j phi_k f (d*d), sin_j sin_k f (d*d), phi_j sin_j f (d).
    const std::size_t n_out = 2 * du * du + du;
    const VectorIntegrand integrand = [&model, du](std::span<const double> theta, std::span<double> out) {
        const double f = model.density(theta);
        double phi[64], s[64];
        model.score_into(theta, std::span<double>(phi, du));
        for (std::size_t j = 0; j < du; ++j) s[j] = std::sin(theta[j]);
        for (std::size_t j = 0; j < du; ++j) {
            for (std::size_t k = 0; k < du; ++k) {
                out[j * du + k] = phi[j] * phi[k] * f;
                out[du * du + j * du + k] = s[j] * s[k] * f;
            }
            out[2 * du * du + j] = phi[j] * s[j] * f;
        }
    };
    const auto v = periodic_integrate_many(integrand, n_out, d);

    Matrix info(2 * du, 2 * du);
    for (std::size_t j = 0; j < du; ++j) {
        for (std::size_t k = j; k < du; ++k) {
            const double mm = 0.5 * (v[j * du + k] + v[k * du + j]);
            const double ll = 0.5 * (v[du * du + j * du + k] + v[du * du + k * du + j]);
            info(j, k) = info(k, j) = mm;
            info(du + j, du + k) = info(du + k, du + j) = ll;
        }
        info(j, du + j) = info(du + j, j) = v[2 * du * du + j];
    }
    return info;
}

Matrix lambda_block(const Matrix& full_info) {
    const std::size_t d = full_info.rows() / 2;
    Matrix block(d, d);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k) block(j, k) = full_info(d + j, d + k);
    return block;
}

}  // namespace torsym

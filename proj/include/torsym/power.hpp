#pragma once

#include <optional>
#include <span>

#include "torsym/linalg.hpp"
#include "torsym/models.hpp"

namespace torsym {

struct AsymptoticPower {
    double power = 0.0;
    double kappa = 0.0;            // non-centrality
    std::optional<double> kappa_stderr;  // set when computed by Monte Carlo
};

/// Local power of the known-center test when the data follow f0 skewed in
/// direction tau / sqrt(n): P(chi2_d(kappa) > chi2_{d;alpha}) with
/// kappa = tau' Gamma_{f0;lambda} tau.
AsymptoticPower asymptotic_power_known(std::span<const double> tau, const BaseModel& f0, double alpha);

/// Population quantities of the unknown-center test built on f0 when the
/// data follow g0.
struct UnknownCenterMoments {
    std::vector<double> c_mu_lambda;  // E_g0 cos theta_j
    Matrix c_mu_mu;                   // E_g0 d phi^{f0}_j / d theta_k
    Matrix variance;                  // V = E_g0[u u']
    Matrix cross;                     // C = E_g0[u sin(theta)']
};

UnknownCenterMoments unknown_center_moments(const BaseModel& f0, const BaseModel& g0);

/// Local power of the unknown-center test built on f0 under g0:
/// kappa = tau' C' V^{-1} C tau.
AsymptoticPower asymptotic_power_unknown(std::span<const double> tau, const BaseModel& f0,
                                         const BaseModel& g0, double alpha);

/// noncentral_chi2_sf(chi2_quantile(alpha, d), d, kappa).
double power_from_kappa(double kappa, int d, double alpha);

}  // namespace torsym

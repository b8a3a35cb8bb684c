#pragma once

namespace torsym {

/// Lower incomplete gamma function gamma(s, x) = int_0^x t^{s-1} e^{-t} dt
/// (not regularized). Series for x < s + 1, continued fraction otherwise.
double lower_incomplete_gamma(double s, double x);

/// Regularized P(s, x) = gamma(s, x) / Gamma(s).
double gamma_p(double s, double x);

/// Regularized Q(s, x) = 1 - P(s, x), computed without cancellation.
double gamma_q(double s, double x);

/// Survival function of the chi-square law with d degrees of freedom.
double chi2_sf(double x, int d);

/// CDF of the chi-square law with d degrees of freedom.
double chi2_cdf(double x, int d);

/// Upper alpha-quantile: the x with chi2_sf(x, d) == alpha.
double chi2_quantile(double alpha, int d);

/// Survival function of the non-central chi-square law with d degrees of
/// freedom and non-centrality kappa (Poisson mixture of central laws with
/// d + 2j degrees of freedom).
double noncentral_chi2_sf(double x, int d, double kappa);

}  // namespace torsym

#include "torsym/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "torsym/errors.hpp"

namespace torsym {

namespace {

constexpr int kMaxIterations = 100000;
constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;

void check_gamma_args(double s, double x) {
    if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("incomplete gamma: s must be > 0");
    if (!(x >= 0.0) || std::isnan(x)) throw DomainError("incomplete gamma: x must be >= 0");
}

// sum_{k>=0} x^k / (s (s+1) ... (s+k)); gamma(s,x) = x^s e^{-x} * series.
double gamma_series(double s, double x) {
    double term = 1.0 / s;
    double sum = term;
    for (int k = 1; k < kMaxIterations; ++k) {
        term *= x / (s + k);
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * kEps) return sum;
    }
    throw DomainError("incomplete gamma series did not converge");
}

// Modified Lentz evaluation of the continued fraction for
// Gamma(s,x) = e^{-x} x^s * cf.
double gamma_continued_fraction(double s, double x) {
    double b = x + 1.0 - s;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIterations; ++i) {
        const double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps) return h;
    }
    throw DomainError("incomplete gamma continued fraction did not converge");
}

// log(x^s e^{-x})
double log_prefactor(double s, double x) { return s * std::log(x) - x; }

}  // namespace

double lower_incomplete_gamma(double s, double x) {
    check_gamma_args(s, x);
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return std::tgamma(s);
    if (x < s + 1.0) {
        return std::exp(log_prefactor(s, x)) * gamma_series(s, x);
    }
    const double upper = std::exp(log_prefactor(s, x)) * gamma_continued_fraction(s, x);
    return std::tgamma(s) - upper;
}

double gamma_p(double s, double x) {
    check_gamma_args(s, x);
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    if (x < s + 1.0) {
        return std::exp(log_prefactor(s, x) - std::lgamma(s)) * gamma_series(s, x);
    }
    return 1.0 - gamma_q(s, x);
}

double gamma_q(double s, double x) {
    check_gamma_args(s, x);
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    if (x < s + 1.0) {
        return 1.0 - gamma_p(s, x);
    }
    return std::exp(log_prefactor(s, x) - std::lgamma(s)) * gamma_continued_fraction(s, x);
}

double chi2_sf(double x, int d) {
    if (d < 1) throw DomainError("chi2_sf: degrees of freedom must be >= 1");
    if (std::isnan(x) || x < 0.0) throw DomainError("chi2_sf: x must be >= 0");
    return std::clamp(gamma_q(0.5 * d, 0.5 * x), 0.0, 1.0);
}

double chi2_cdf(double x, int d) {
    if (d < 1) throw DomainError("chi2_cdf: degrees of freedom must be >= 1");
    if (std::isnan(x) || x < 0.0) throw DomainError("chi2_cdf: x must be >= 0");
    return std::clamp(gamma_p(0.5 * d, 0.5 * x), 0.0, 1.0);
}

double chi2_quantile(double alpha, int d) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("chi2_quantile: alpha must lie in (0,1)");
    if (d < 1) throw DomainError("chi2_quantile: degrees of freedom must be >= 1");

    double lo = 0.0;
    double hi = std::max(1.0, static_cast<double>(d));
    while (chi2_sf(hi, d) > alpha) {
        lo = hi;
        hi *= 2.0;
    }
    // Bisection to a tight bracket, then a few Newton steps on sf(x) - alpha.
    for (int i = 0; i < 200 && (hi - lo) > 1e-14 * std::max(1.0, hi); ++i) {
        const double mid = 0.5 * (lo + hi);
        if (chi2_sf(mid, d) > alpha) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    double x = 0.5 * (lo + hi);
    const double s = 0.5 * d;
    for (int i = 0; i < 3; ++i) {
        if (x <= 0.0) break;
        const double log_pdf = (s - 1.0) * std::log(x) - 0.5 * x - s * std::log(2.0) - std::lgamma(s);
        const double pdf = std::exp(log_pdf);
        if (!(pdf > 0.0)) break;
        const double step = (chi2_sf(x, d) - alpha) / pdf;
        const double next = x + step;
        if (!(next > lo && next < hi)) break;
        x = next;
    }
    return x;
}

double noncentral_chi2_sf(double x, int d, double kappa) {
    if (d < 1) throw DomainError("noncentral_chi2_sf: degrees of freedom must be >= 1");
    if (std::isnan(x) || x < 0.0) throw DomainError("noncentral_chi2_sf: x must be >= 0");
    if (std::isnan(kappa) || kappa < 0.0) throw DomainError("noncentral_chi2_sf: kappa must be >= 0");
    if (x == 0.0) return 1.0;
    if (kappa == 0.0) return chi2_sf(x, d);

    // Poisson(kappa/2) mixture of chi2_{d+2j}; sum outward from the mode of
    // the weights until the neglected weight is below 1e-12.
    const double lam = 0.5 * kappa;
    const double half_x = 0.5 * x;
    const long mode = static_cast<long>(std::floor(lam));
    auto log_weight = [&](long j) { return -lam + j * std::log(lam) - std::lgamma(j + 1.0); };

    double cdf = 0.0;
    constexpr double kTail = 1e-12;

    // Upward from the mode.
    for (long j = mode;; ++j) {
        const double w = std::exp(log_weight(j));
        cdf += w * gamma_p(0.5 * d + j, half_x);
        // Remaining upper tail is bounded by a geometric series with ratio lam/(j+2).
        const double ratio = lam / (j + 2.0);
        if (j > mode && ratio < 1.0 && w * ratio / (1.0 - ratio) < 0.5 * kTail) break;
        if (j - mode > 100000) break;
    }
    // Downward from mode - 1.
    for (long j = mode - 1; j >= 0; --j) {
        const double w = std::exp(log_weight(j));
        cdf += w * gamma_p(0.5 * d + j, half_x);
        // Lower tail below j is bounded by w * j / lam / (1 - j / lam).
        const double ratio = j / lam;
        if (ratio < 1.0 && w * ratio / (1.0 - ratio) < 0.5 * kTail) break;
    }
    return std::clamp(1.0 - cdf, 0.0, 1.0);
}

}  // namespace torsym

#include "torsym/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "torsym/angle.hpp"
#include "torsym/errors.hpp"
#include "torsym/rng.hpp"

namespace torsym {

namespace {

void check_args(int d, int m) {
    if (d < 1) throw DomainError("periodic_integrate: dimension must be >= 1");
    if (d <= kMaxTensorDim && m < 8) {
        throw DomainError("periodic_integrate: at least 8 nodes per dimension required, got " +
                          std::to_string(m));
    }
}

// Sum of f over the (d-1)-dimensional tensor grid with the first coordinate
// fixed at node i0, accumulated into `acc`.
void accumulate_slice(const VectorIntegrand& f, int d, int m, int i0, std::span<double> theta,
                      std::span<double> out, std::span<double> acc) {
    const double h = kTwoPi / m;
    theta[0] = -kPi + h * i0;
    std::size_t inner = 1;
    for (int k = 1; k < d; ++k) inner *= static_cast<std::size_t>(m);
    for (std::size_t idx = 0; idx < inner; ++idx) {
        std::size_t rest = idx;
        for (int k = d - 1; k >= 1; --k) {
            theta[k] = -kPi + h * static_cast<double>(rest % m);
            rest /= m;
        }
        f(theta, out);
        for (std::size_t q = 0; q < out.size(); ++q) acc[q] += out[q];
    }
}

}  // namespace

int default_nodes(int d) {
    switch (d) {
        case 1: return 512;
        case 2: return 256;
        case 3: return 64;
        default: return 0;
    }
}

std::vector<double> periodic_integrate_many(const VectorIntegrand& f, std::size_t n_out, int d, int m) {
    check_args(d, m);
    if (d > kMaxTensorDim) {
        return monte_carlo_integrate_many(f, n_out, d, kMonteCarloSamples, kMonteCarloSeed).mean;
    }
    // One row of partial sums per leading node; reduced serially below so the
    // result is identical for any number of threads.
    std::vector<double> partial(static_cast<std::size_t>(m) * n_out, 0.0);
    bool failed = false;
    std::string failure;
#ifdef TORSYM_HAVE_OPENMP
#pragma omp parallel
#endif
    {
        std::vector<double> theta(d), out(n_out);
#ifdef TORSYM_HAVE_OPENMP
#pragma omp for schedule(static)
#endif
        for (int i0 = 0; i0 < m; ++i0) {
            try {
                accumulate_slice(f, d, m, i0, theta, out,
                                 std::span<double>(partial.data() + static_cast<std::size_t>(i0) * n_out, n_out));
            } catch (const std::exception& e) {
#ifdef TORSYM_HAVE_OPENMP
#pragma omp critical(torsym_quadrature_error)
#endif
                {
                    failed = true;
                    failure = e.what();
                }
            }
        }
    }
    if (failed) throw DegenerateError("quadrature integrand failed: " + failure);

    const double weight = std::pow(kTwoPi / m, d);
    std::vector<double> result(n_out, 0.0);
    for (int i0 = 0; i0 < m; ++i0) {
        for (std::size_t q = 0; q < n_out; ++q) {
            result[q] += partial[static_cast<std::size_t>(i0) * n_out + q];
        }
    }
    for (double& r : result) r *= weight;
    return result;
}

std::vector<double> periodic_integrate_many(const VectorIntegrand& f, std::size_t n_out, int d) {
    return periodic_integrate_many(f, n_out, d, default_nodes(d));
}

std::vector<double> periodic_integrate_many_serial(const VectorIntegrand& f, std::size_t n_out, int d, int m) {
    check_args(d, m);
    if (d > kMaxTensorDim) {
        return monte_carlo_integrate_many(f, n_out, d, kMonteCarloSamples, kMonteCarloSeed).mean;
    }
    std::vector<double> theta(d), out(n_out), slice(n_out), sum(n_out, 0.0);
    for (int i0 = 0; i0 < m; ++i0) {
        std::fill(slice.begin(), slice.end(), 0.0);
        accumulate_slice(f, d, m, i0, theta, out, slice);
        for (std::size_t q = 0; q < n_out; ++q) sum[q] += slice[q];
    }
    const double weight = std::pow(kTwoPi / m, d);
    for (double& s : sum) s *= weight;
    return sum;
}

double periodic_integrate(const PeriodicIntegrand& f, int d, int m) {
    VectorIntegrand wrapped = [&f](std::span<const double> theta, std::span<double> out) {
        out[0] = f(theta);
    };
    return periodic_integrate_many(wrapped, 1, d, m)[0];
}

double periodic_integrate(const PeriodicIntegrand& f, int d) {
    return periodic_integrate(f, d, default_nodes(d));
}

MonteCarloEstimate monte_carlo_integrate_many(const VectorIntegrand& f, std::size_t n_out, int d,
                                              std::size_t samples, std::uint64_t seed) {
    if (d < 1) throw DomainError("monte_carlo_integrate_many: dimension must be >= 1");
    if (samples < 2) throw DomainError("monte_carlo_integrate_many: need at least 2 samples");
    // Fixed-size blocks, each with its own stream, reduced in block order.
    constexpr std::size_t kBlock = 4096;
    const std::size_t blocks = (samples + kBlock - 1) / kBlock;
    std::vector<double> sums(blocks * n_out, 0.0), squares(blocks * n_out, 0.0);
#ifdef TORSYM_HAVE_OPENMP
#pragma omp parallel
#endif
    {
        std::vector<double> theta(d), out(n_out);
#ifdef TORSYM_HAVE_OPENMP
#pragma omp for schedule(static)
#endif
        for (std::size_t b = 0; b < blocks; ++b) {
            RngStream rng(seed, b);
            const std::size_t end = std::min(samples, (b + 1) * kBlock);
            for (std::size_t s = b * kBlock; s < end; ++s) {
                for (int k = 0; k < d; ++k) theta[k] = -kPi + kTwoPi * rng.uniform();
                f(theta, out);
                for (std::size_t q = 0; q < n_out; ++q) {
                    sums[b * n_out + q] += out[q];
                    squares[b * n_out + q] += out[q] * out[q];
                }
            }
        }
    }
    const double volume = std::pow(kTwoPi, d);
    MonteCarloEstimate est;
    est.mean.assign(n_out, 0.0);
    est.stderr_.assign(n_out, 0.0);
    for (std::size_t q = 0; q < n_out; ++q) {
        double s = 0.0, s2 = 0.0;
        for (std::size_t b = 0; b < blocks; ++b) {
            s += sums[b * n_out + q];
            s2 += squares[b * n_out + q];
        }
        const double n = static_cast<double>(samples);
        const double mean = s / n;
        const double var = std::max(0.0, (s2 / n - mean * mean) * n / (n - 1.0));
        est.mean[q] = volume * mean;
        est.stderr_[q] = volume * std::sqrt(var / n);
    }
    return est;
}

}  // namespace torsym

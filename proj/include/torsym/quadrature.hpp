#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace torsym {

/// Scalar integrand on the d-torus.
using PeriodicIntegrand = std::function<double(std::span<const double> theta)>;

/// Vector integrand: writes `out.size()` values for the point theta. Must be
/// safe to call concurrently.
using VectorIntegrand = std::function<void(std::span<const double> theta, std::span<double> out)>;

/// Highest dimension handled by the tensor trapezoid rule; above it the
/// integrators fall back to Monte Carlo.
inline constexpr int kMaxTensorDim = 3;
inline constexpr std::size_t kMonteCarloSamples = 200'000;
inline constexpr std::uint64_t kMonteCarloSeed = 0x7a3e'11d5'c0de'0001ULL;

/// Default trapezoid nodes per dimension: 512 (d=1), 256 (d=2), 64 (d=3).
int default_nodes(int d);

/// Tensor-product equispaced trapezoid rule over [-pi, pi)^d with m^d
/// evaluations. Spectrally accurate for smooth periodic integrands. For
/// d > kMaxTensorDim the integral is estimated by kMonteCarloSamples uniform
/// draws and m is ignored.
double periodic_integrate(const PeriodicIntegrand& f, int d, int m);
double periodic_integrate(const PeriodicIntegrand& f, int d);

/// Integrates `n_out` functions at once over the same nodes. Parallel over
/// the leading coordinate; partial sums are combined in a fixed order so the
/// result does not depend on the thread count.
std::vector<double> periodic_integrate_many(const VectorIntegrand& f, std::size_t n_out, int d, int m);
std::vector<double> periodic_integrate_many(const VectorIntegrand& f, std::size_t n_out, int d);

/// Single-threaded reference for periodic_integrate_many.
std::vector<double> periodic_integrate_many_serial(const VectorIntegrand& f, std::size_t n_out,
                                                   int d, int m);

struct MonteCarloEstimate {
    std::vector<double> mean;
    std::vector<double> stderr_;
};

/// Plain Monte Carlo over the torus with uniform draws: estimates
/// (2 pi)^d E[f(U)] and its standard error per output.
MonteCarloEstimate monte_carlo_integrate_many(const VectorIntegrand& f, std::size_t n_out, int d,
                                              std::size_t samples, std::uint64_t seed);

}  // namespace torsym

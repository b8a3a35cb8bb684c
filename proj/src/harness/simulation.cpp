#include "torsym/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "torsym/errors.hpp"
#include "torsym/power.hpp"
#include "torsym/special_functions.hpp"
#include "torsym/symmetry_tests.hpp"

#ifdef TORSYM_HAVE_OPENMP
#include <omp.h>
#endif

namespace torsym {

void SimConfig::validate() const {
    if (n == 0) throw DomainError("simulation: n must be >= 1");
    if (reps == 0) throw DomainError("simulation: reps must be >= 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("simulation: alpha must lie in (0,1)");
    if (test.kind == TestKind::UnknownCenter) {
        if (!test.f0) throw DomainError("simulation: unknown-center test needs an f0 model");
        if (test.f0->dim() != generator.dim()) throw DomainError("simulation: f0 and generator dimensions differ");
    }
}

std::string SimConfig::summary() const {
    std::ostringstream os;
    os << "g0=" << generator.base().label() << " lambda=(";
    for (std::size_t j = 0; j < generator.lambda().size(); ++j) os << (j ? "," : "") << generator.lambda()[j];
    os << ") n=" << n << " test=";
    if (test.kind == TestKind::KnownCenter) {
        os << "known";
    } else {
        os << "unknown f0=" << test.f0->label();
    }
    return os.str();
}

namespace {

constexpr double kFailed = std::numeric_limits<double>::quiet_NaN();

double replicate(const SimConfig& config, std::size_t rep, std::vector<double>& buffer) {
    RngStream rng(config.seed, rep);
    const std::size_t d = static_cast<std::size_t>(config.generator.dim());
    buffer.resize(config.n * d);
    for (std::size_t i = 0; i < config.n; ++i) {
        config.generator.sample_into(rng, std::span<double>(buffer.data() + i * d, d));
    }
    const AngleMatrix data(config.n, d, buffer);
    try {
        if (config.test.kind == TestKind::KnownCenter) {
            return test_known_center(data, config.generator.mu(), config.alpha).statistic;
        }
        return test_unknown_center(data, *config.test.f0, config.alpha).statistic;
    } catch (const Error&) {
        return kFailed;
    }
}

}  // namespace

std::vector<double> simulate_statistics(const SimConfig& config) {
    config.validate();
    std::vector<double> stats(config.reps, kFailed);
    const long reps = static_cast<long>(config.reps);
    bool sampler_failed = false;
    std::string failure;
#ifdef TORSYM_HAVE_OPENMP
    const int threads = config.workers > 0 ? config.workers : omp_get_max_threads();
#pragma omp parallel num_threads(threads)
#endif
    {
        std::vector<double> buffer;
#ifdef TORSYM_HAVE_OPENMP
#pragma omp for schedule(dynamic, 4)
#endif
        for (long r = 0; r < reps; ++r) {
            try {
                stats[static_cast<std::size_t>(r)] = replicate(config, static_cast<std::size_t>(r), buffer);
            } catch (const std::exception& e) {
                // Sampler failures are configuration errors, not per-rep noise.
#ifdef TORSYM_HAVE_OPENMP
#pragma omp critical(torsym_sim_error)
#endif
                {
                    sampler_failed = true;
                    failure = e.what();
                }
            }
        }
    }
    if (sampler_failed) throw DegenerateError(failure);
    return stats;
}

std::vector<double> simulate_statistics_serial(const SimConfig& config) {
    config.validate();
    std::vector<double> stats(config.reps, kFailed);
    std::vector<double> buffer;
    for (std::size_t r = 0; r < config.reps; ++r) stats[r] = replicate(config, r, buffer);
    return stats;
}

SimRow summarize_statistics(const SimConfig& config, const std::vector<double>& statistics) {
    const int d = config.generator.dim();
    const double critical = chi2_quantile(config.alpha, d);
    SimRow row;
    row.summary = config.summary();
    row.n = config.n;
    row.reps = statistics.size();
    for (double s : statistics) {
        if (std::isnan(s)) {
            ++row.errors;
        } else if (s > critical) {
            ++row.rejections;
        }
    }
    const std::size_t valid = row.reps - row.errors;
    if (valid > 0) {
        const double p = static_cast<double>(row.rejections) / static_cast<double>(valid);
        row.rejection_rate = p;
        row.mc_stderr = std::sqrt(p * (1.0 - p) / static_cast<double>(valid));
    }
    return row;
}

SimRow run_rejection_study(const SimConfig& config) {
    return summarize_statistics(config, simulate_statistics(config));
}

SimRow run_rejection_study_serial(const SimConfig& config) {
    return summarize_statistics(config, simulate_statistics_serial(config));
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    // splitmix64 finalizer over seed + golden-ratio multiple of the index.
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::vector<PowerPoint> power_curve(const SimConfig& base_config, const std::vector<std::vector<double>>& tau_grid,
                                    std::size_t n_for_local) {
    if (tau_grid.empty()) throw DomainError("power_curve: tau grid is empty");
    if (n_for_local == 0) throw DomainError("power_curve: n must be >= 1");
    base_config.validate();
    const int d = base_config.generator.dim();
    const double root_n = std::sqrt(static_cast<double>(n_for_local));

    std::vector<PowerPoint> points;
    points.reserve(tau_grid.size());
    for (std::size_t k = 0; k < tau_grid.size(); ++k) {
        PowerPoint pt;
        pt.tau = tau_grid[k];
        if (static_cast<int>(pt.tau.size()) != d) throw DomainError("power_curve: tau has the wrong dimension");
        pt.lambda.resize(pt.tau.size());
        for (std::size_t j = 0; j < pt.tau.size(); ++j) pt.lambda[j] = pt.tau[j] / root_n;

        if (base_config.test.kind == TestKind::KnownCenter) {
            pt.theoretical = asymptotic_power_known(pt.tau, base_config.generator.base(), base_config.alpha).power;
        } else {
            pt.theoretical = asymptotic_power_unknown(pt.tau, *base_config.test.f0, base_config.generator.base(),
                                                      base_config.alpha).power;
        }
        if (!SkewVector::admissible(pt.lambda)) {
            pt.admissible = false;
            points.push_back(std::move(pt));
            continue;
        }
        SimConfig cfg{SineSkewedModel(base_config.generator.base(),
                                      std::vector<double>(base_config.generator.mu().begin(),
                                                          base_config.generator.mu().end()),
                                      SkewVector(pt.lambda)),
                      base_config.test, n_for_local, base_config.reps, base_config.alpha,
                      mix_seed(base_config.seed, k), base_config.workers};
        const SimRow row = run_rejection_study(cfg);
        pt.simulated = row.rejection_rate;
        pt.mc_stderr = row.mc_stderr;
        pt.errors = row.errors;
        points.push_back(std::move(pt));
    }
    return points;
}

double kolmogorov_distance_chi2(std::vector<double> sample, int d) {
    std::erase_if(sample, [](double v) { return std::isnan(v); });
    if (sample.empty()) throw DomainError("kolmogorov_distance_chi2: empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double dist = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = chi2_cdf(std::max(0.0, sample[i]), d);
        dist = std::max({dist, (i + 1) / n - f, f - i / n});
    }
    return dist;
}

SteinDiagnostic stein_rate_diagnostic(const SimConfig& base_config, const std::vector<std::size_t>& n_list) {
    if (!base_config.generator.lambda().is_zero()) {
        throw DomainError("stein_rate_diagnostic: generator must be symmetric (lambda = 0)");
    }
    std::vector<std::size_t> distinct(n_list);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 3) throw DomainError("stein_rate_diagnostic: need at least 3 distinct sample sizes");

    SteinDiagnostic out;
    out.n_list = n_list;
    out.note =
        "Kolmogorov distance between the simulated null law and chi2_d; slope of log distance on log n is an "
        "empirical rate check (expected near -1/2), not a verification of the analytic bound";
    std::vector<double> xs, ys;
    for (std::size_t k = 0; k < n_list.size(); ++k) {
        SimConfig cfg = base_config;
        cfg.n = n_list[k];
        cfg.seed = mix_seed(base_config.seed, k);
        const double dist = kolmogorov_distance_chi2(simulate_statistics(cfg), base_config.generator.dim());
        out.distances.push_back(dist);
        xs.push_back(std::log(static_cast<double>(n_list[k])));
        ys.push_back(std::log(dist));
    }
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        sxy += (xs[k] - mx) * (ys[k] - my);
        sxx += (xs[k] - mx) * (xs[k] - mx);
    }
    out.slope = sxy / sxx;
    return out;
}

}  // namespace torsym

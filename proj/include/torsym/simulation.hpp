#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "torsym/models.hpp"
#include "torsym/sine_skewed.hpp"

namespace torsym {

enum class TestKind { KnownCenter, UnknownCenter };

struct TestSpec {
    TestKind kind = TestKind::KnownCenter;
    /// Base model of the unknown-center test; unused for the known-center test.
    std::optional<BaseModel> f0;
};

struct SimConfig {
    SineSkewedModel generator;
    TestSpec test;
    std::size_t n = 0;
    std::size_t reps = 1000;
    double alpha = 0.05;
    std::uint64_t seed = 0;
    /// 0 lets OpenMP decide.
    int workers = 0;

    /// Throws DomainError on reps == 0, n == 0, alpha outside (0,1) or an
    /// unknown-center test without f0.
    void validate() const;
    std::string summary() const;
};

/// Per-replication outcome codes.
enum class RepOutcome : std::int8_t { Accept = 0, Reject = 1, Error = -1 };

struct SimRow {
    std::string summary;
    std::size_t n = 0;
    std::size_t reps = 0;
    std::size_t rejections = 0;
    std::size_t errors = 0;
    double rejection_rate = 0.0;
    double mc_stderr = 0.0;
};

struct SimTable {
    std::vector<SimRow> rows;
};

/// Replication r: draw n observations with RngStream(seed, r), run the
/// test, record the decision. Replications run on an OpenMP team; the
/// outcome vector is independent of the number of workers. Errors are
/// counted and excluded from the rate denominator.
SimRow run_rejection_study(const SimConfig& config);

/// Single-threaded reference of run_rejection_study.
SimRow run_rejection_study_serial(const SimConfig& config);

/// Per-replication statistics (NaN for failed replications).
std::vector<double> simulate_statistics(const SimConfig& config);
std::vector<double> simulate_statistics_serial(const SimConfig& config);

/// Turns a vector of statistics into a row (reject iff statistic > critical
/// value; NaN counts as an error).
SimRow summarize_statistics(const SimConfig& config, const std::vector<double>& statistics);

struct PowerPoint {
    std::vector<double> tau;
    std::vector<double> lambda;
    bool admissible = true;          // false: sum |lambda| > 1, point skipped
    double simulated = 0.0;
    double mc_stderr = 0.0;
    double theoretical = 0.0;
    std::size_t errors = 0;
};

/// For each tau: lambda = tau / sqrt(n_for_local), simulate at n_for_local and
/// pair with the asymptotic power. Grid points with inadmissible lambda are
/// flagged and skipped. Point k uses seed mix(base.seed, k).
std::vector<PowerPoint> power_curve(const SimConfig& base_config,
                                    const std::vector<std::vector<double>>& tau_grid,
                                    std::size_t n_for_local);

struct SteinDiagnostic {
    std::vector<std::size_t> n_list;
    std::vector<double> distances;  // Kolmogorov distance to chi2_d per n
    double slope = 0.0;             // least squares of log distance on log n
    std::string note;
};

/// Empirical convergence rate of the null law of the statistic to chi2_d.
/// Requires lambda == 0 and at least 3 distinct n.
SteinDiagnostic stein_rate_diagnostic(const SimConfig& base_config, const std::vector<std::size_t>& n_list);

/// sup_x |F_n(x) - chi2_cdf(x, d)| of the sample.
double kolmogorov_distance_chi2(std::vector<double> sample, int d);

/// Deterministic seed derivation for sub-experiments.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) noexcept;

}  // namespace torsym

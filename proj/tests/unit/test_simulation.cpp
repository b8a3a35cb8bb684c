#include <catch_amalgamated.hpp>

#include <cmath>

#include "torsym/errors.hpp"
#include "torsym/rng.hpp"
#include "torsym/simulation.hpp"
#include "torsym/special_functions.hpp"

#ifdef TORSYM_HAVE_OPENMP
#include <omp.h>
#endif

using namespace torsym;
using Catch::Approx;

namespace {

SimConfig config(std::vector<double> lambda, std::size_t n, std::size_t reps, std::uint64_t seed,
                 TestSpec test = {}) {
    return SimConfig{SineSkewedModel(BaseModel::independent_wrapped_cauchy({0.1, 0.1}), {0.2, -0.4},
                                     SkewVector(std::move(lambda))),
                     std::move(test), n, reps, 0.05, seed, 0};
}

}  // namespace

TEST_CASE("config validation") {
    CHECK_THROWS_AS(config({0, 0}, 100, 0, 1).validate(), DomainError);
    CHECK_THROWS_AS(config({0, 0}, 0, 10, 1).validate(), DomainError);
    auto c = config({0, 0}, 100, 10, 1);
    c.alpha = 1.0;
    CHECK_THROWS_AS(c.validate(), DomainError);
    CHECK_THROWS_AS(config({0, 0}, 100, 10, 1, TestSpec{TestKind::UnknownCenter, std::nullopt}).validate(),
                    DomainError);
    CHECK(config({0.2, 0.2}, 100, 10, 1).summary() == "g0=I_{0.1;0.1} lambda=(0.2,0.2) n=100 test=known");
}

TEST_CASE("single replication is a deterministic 0/1") {
    const auto c = config({0.3, 0.0}, 200, 1, 77);
    const auto a = run_rejection_study(c);
    const auto b = run_rejection_study(c);
    CHECK((a.rejection_rate == 0.0 || a.rejection_rate == 1.0));
    CHECK(a.rejections == b.rejections);
}

TEST_CASE("parallel and serial studies are identical") {
    for (auto test : {TestSpec{}, TestSpec{TestKind::UnknownCenter, BaseModel::sine(1, 1, 0.2)}}) {
        const auto c = config({0.1, 0.05}, 150, 120, 5, test);
        CHECK(simulate_statistics(c) == simulate_statistics_serial(c));
        const auto p = run_rejection_study(c);
        const auto s = run_rejection_study_serial(c);
        CHECK(p.rejections == s.rejections);
        CHECK(p.errors == s.errors);
    }
#ifdef TORSYM_HAVE_OPENMP
    const auto c = config({0.0, 0.0}, 100, 64, 9);
    const int saved = omp_get_max_threads();
    omp_set_num_threads(4);
    const auto four = simulate_statistics(c);
    omp_set_num_threads(1);
    const auto one = simulate_statistics(c);
    omp_set_num_threads(saved);
    CHECK(four == one);
#endif
}

TEST_CASE("mc_stderr follows the binomial formula") {
    const auto c = config({0.05, 0.05}, 200, 300, 3);
    const auto row = run_rejection_study(c);
    const double p = row.rejection_rate;
    CHECK(row.mc_stderr == Approx(std::sqrt(p * (1 - p) / 300)).epsilon(1e-15));
    CHECK(row.errors == 0);
    CHECK(row.reps == 300);
}

TEST_CASE("failed replications are counted, not rated") {
    const auto c = config({0.0, 0.0}, 4, 3, 1);
    std::vector<double> stats{1.0, std::nan(""), 100.0};
    const auto row = summarize_statistics(c, stats);
    CHECK(row.errors == 1);
    CHECK(row.rejections == 1);
    CHECK(row.rejection_rate == 0.5);
}

TEST_CASE("power curve flags inadmissible grid points") {
    auto base = config({0, 0}, 1, 40, 2);
    const std::vector<std::vector<double>> grid{{0.0, 0.0}, {1.0, 1.0}, {8.0, 8.0}};
    const auto pts = power_curve(base, grid, 64);
    REQUIRE(pts.size() == 3);
    CHECK(pts[0].theoretical == Approx(0.05).epsilon(1e-9));
    CHECK(pts[1].admissible);
    CHECK(pts[1].lambda[0] == Approx(0.125));
    CHECK_FALSE(pts[2].admissible);
    CHECK(pts[2].theoretical > pts[1].theoretical);
    CHECK_THROWS_AS(power_curve(base, {}, 64), DomainError);
}

TEST_CASE("Kolmogorov distance of a chi-square sample against itself") {
    RngStream rng(17, 0);
    const int reps = 4000;
    std::vector<double> sample(reps);
    for (auto& x : sample) {
        const double a = rng.normal(), b = rng.normal();
        x = a * a + b * b;
    }
    const double dist = kolmogorov_distance_chi2(sample, 2);
    CHECK(dist < 1.63 / std::sqrt(double(reps)));
    CHECK(dist > 0.1 / std::sqrt(double(reps)));
    CHECK(kolmogorov_distance_chi2({1e9}, 2) == Approx(1.0).epsilon(1e-9));
}

TEST_CASE("Stein diagnostic preconditions") {
    const auto skewed = config({0.1, 0.0}, 1, 10, 1);
    CHECK_THROWS_AS(stein_rate_diagnostic(skewed, {10, 20, 40}), DomainError);
    const auto sym = config({0.0, 0.0}, 1, 10, 1);
    CHECK_THROWS_AS(stein_rate_diagnostic(sym, {10, 20, 20}), DomainError);
    const auto d = stein_rate_diagnostic(sym, {20, 40, 80});
    CHECK(d.distances.size() == 3);
    CHECK(std::isfinite(d.slope));
}

TEST_CASE("mix_seed separates sub-experiments") {
    CHECK(mix_seed(1, 0) != mix_seed(1, 1));
    CHECK(mix_seed(1, 0) != mix_seed(2, 0));
    CHECK(mix_seed(5, 3) == mix_seed(5, 3));
}

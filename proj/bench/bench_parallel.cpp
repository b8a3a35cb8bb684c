#include <chrono>
#include <cstdio>
#include <functional>

#include "torsym/models.hpp"
#include "torsym/quadrature.hpp"
#include "torsym/simulation.hpp"

#ifdef TORSYM_HAVE_OPENMP
#include <omp.h>
#endif

namespace {

double seconds(const std::function<void()>& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
    using namespace torsym;
    int threads = 1;
#ifdef TORSYM_HAVE_OPENMP
    threads = omp_get_max_threads();
#endif
    std::printf("threads: %d\n", threads);

    SimConfig cfg{SineSkewedModel(BaseModel::bivariate_wrapped_cauchy(0.1, 0.5, 0.3), {0.0, 0.0},
                                  SkewVector({0.0, 0.0})),
                  TestSpec{}, 1000, 400, 0.05, 7, 0};
    SimRow par, ser;
    const double t_par = seconds([&] { par = run_rejection_study(cfg); });
    const double t_ser = seconds([&] { ser = run_rejection_study_serial(cfg); });
    std::printf("rejection study  serial %.3fs  parallel %.3fs  speedup %.2f  identical %s\n", t_ser, t_par,
                t_ser / t_par, par.rejections == ser.rejections && par.errors == ser.errors ? "yes" : "no");

    const BaseModel sine = BaseModel::sine(1.0, 1.0, 0.5);
    const VectorIntegrand f = [&](std::span<const double> th, std::span<double> out) {
        out[0] = sine.density(th);
        out[1] = sine.density(th) * th[0] * th[0];
    };
    std::vector<double> a, b;
    const double q_par = seconds([&] { a = periodic_integrate_many(f, 2, 2, 1024); });
    const double q_ser = seconds([&] { b = periodic_integrate_many_serial(f, 2, 2, 1024); });
    std::printf("quadrature       serial %.3fs  parallel %.3fs  speedup %.2f  identical %s\n", q_ser, q_par,
                q_ser / q_par, a == b ? "yes" : "no");
    return 0;
}

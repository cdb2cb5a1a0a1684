// Timing comparison of the serial reference kernels against the OpenMP paths:
// integral-representation quadrature and the midpoint violation search.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qjd/catalog.hpp"
#include "qjd/convexity.hpp"

using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled; parallel path falls back to serial\n");
#endif

    auto g = qjd::catalog_get("xlogx").generator;
    qjd::DivergenceParams p(0.5);
    auto grid = qjd::QuadratureGrid::gauss_legendre(48);

    std::printf("\nintegral representation, K=48, 20 pairs\n");
    for (int n : {3, 5, 8}) {
        double serial_time = 0.0, parallel_time = 0.0, diff = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            auto a = qjd::random_pd(n, 0.2, 5.0, qjd::derive_seed(7, 1, 2 * trial));
            auto b = qjd::random_pd(n, 0.2, 5.0, qjd::derive_seed(7, 1, 2 * trial + 1));
            auto t0 = Clock::now();
            double vs = qjd::jensen_integral_rep_serial(g, p, a, b, grid);
            serial_time += seconds_since(t0);
            t0 = Clock::now();
            double vp = qjd::jensen_integral_rep(g, p, a, b, grid);
            parallel_time += seconds_since(t0);
            diff = std::max(diff, std::abs(vs - vp));
        }
        std::printf("  n=%d  serial %.3fs  parallel %.3fs  speedup %.2fx  max |diff| %.1e\n", n,
                    serial_time, parallel_time, serial_time / parallel_time, diff);
    }

    std::printf("\nmidpoint violation search, jc, xlogx, 2000 trials\n");
    for (int n : {2, 3, 4}) {
        qjd::SearchConfig cfg;
        cfg.dims = {n};
        cfg.trials = 2000;
        cfg.seed = 11;
#ifdef _OPENMP
        int max_threads = omp_get_max_threads();
        omp_set_num_threads(1);
#endif
        auto t0 = Clock::now();
        auto v1 = qjd::midpoint_violation_search(qjd::MapKind::JC_DIVERGENCE, g, 0.5, cfg);
        double one_thread = seconds_since(t0);
#ifdef _OPENMP
        omp_set_num_threads(max_threads);
#endif
        t0 = Clock::now();
        auto v2 = qjd::midpoint_violation_search(qjd::MapKind::JC_DIVERGENCE, g, 0.5, cfg);
        double all_threads = seconds_since(t0);
        bool same = v1.worst_margin == v2.worst_margin &&
                    v1.violations.size() == v2.violations.size();
        std::printf("  n=%d  1 thread %.3fs  all threads %.3fs  speedup %.2fx  identical=%s\n", n,
                    one_thread, all_threads, one_thread / all_threads, same ? "yes" : "no");
    }
    return 0;
}

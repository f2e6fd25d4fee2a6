// Benchmark: OpenMP kernels against their serial reference loops.
// Run: stp_bench [threads]

#include <chrono>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "stp/constructions.hpp"
#include "stp/experiments.hpp"
#include "stp/gibbs.hpp"
#include "stp/spectrum.hpp"

namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
double time_once(F&& f) {
    const auto start = Clock::now();
    f();
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void report(const char* name, double serial, double parallel, int threads) {
    std::printf("%-24s serial %8.3f s   %2d threads %8.3f s   speedup %.2fx\n",
                name, serial, threads, parallel, serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
    int threads = 4;
    if (argc > 1) threads = std::atoi(argv[1]);
#ifdef _OPENMP
    std::printf("openmp enabled, max threads %d, benchmarking with %d\n",
                omp_get_max_threads(), threads);
#else
    std::printf("openmp disabled at build time; parallel calls fall back to serial\n");
#endif

    {
        const double s = time_once([] { stp::weak_law_serial(1 << 16, 800, 99); });
        const double p =
            time_once([&] { stp::weak_law(1 << 16, 800, 99, threads); });
        report("weak-law 800x65536", s, p, threads);
    }
    {
        stp::GibbsDistribution d = stp::build_distribution(1.0);
        const double s =
            time_once([&] { stp::gibbs_statistics_serial(d, 20000, 64, 7); });
        const double p =
            time_once([&] { stp::gibbs_statistics(d, 20000, 64, 7, threads); });
        report("gibbs 64x20000", s, p, threads);
    }
    {
        const double s =
            time_once([] { stp::spectrum_curve_serial(1.0, 100.0, 120); });
        const double p =
            time_once([&] { stp::spectrum_curve(1.0, 100.0, 120, threads); });
        report("spectrum 120 rows", s, p, threads);
    }
    {
        stp::StreamFactory factory = [](std::uint64_t seed) {
            return stp::f_m_stream(4, seed);
        };
        const double s = time_once(
            [&] { stp::entropy_dim_estimate_serial(factory, 14, 400000, 5); });
        const double p = time_once(
            [&] { stp::entropy_dim_estimate(factory, 14, 400000, 5, threads); });
        report("entropy 400k x depth14", s, p, threads);
    }
    return 0;
}

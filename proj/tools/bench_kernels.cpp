// Timing comparison of the OpenMP kernels against their serial references.
#include <chrono>
#include <cstdio>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sdmbc/montecarlo.hpp"
#include "sdmbc/regions.hpp"

using namespace sdmbc;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point start) {
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

void report(const char* name, double serial, double parallel) {
    std::printf("%-28s serial %8.3fs   parallel %8.3fs   speedup %.2fx\n", name, serial, parallel,
                parallel > 0 ? serial / parallel : 0.0);
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (built without OpenMP)\n");
#endif

    {
        auto spec = build_multiplicative_bc(0.6, 0.5);
        auto d = DistortionMeasure::hamming(spec);
        auto start = clock_type::now();
        auto serial_set = degraded_region_serial(spec, d, 2, 48);
        double t_serial = seconds_since(start);
        start = clock_type::now();
        auto parallel_set = degraded_region(spec, d, 2, 48);
        double t_parallel = seconds_since(start);
        report("degraded region sweep", t_serial, t_parallel);
        if (serial_set.points.size() != parallel_set.points.size())
            std::printf("  MISMATCH: frontier sizes differ\n");
    }

    {
        auto spec = build_dueck_bc(Pmf::bernoulli(0.75));
        auto d = DistortionMeasure::hamming(spec);
        auto est = optimal_estimator(spec, d);
        SimConfig cfg{20'000'000, 7, dueck_coupled_input(0.0)};
        auto start = clock_type::now();
        auto serial_result = simulate_serial(spec, est, d, cfg);
        double t_serial = seconds_since(start);
        start = clock_type::now();
        auto parallel_result = simulate(spec, est, d, cfg);
        double t_parallel = seconds_since(start);
        report("monte carlo (2e7 rounds)", t_serial, t_parallel);
        if (serial_result.receiver1.mean != parallel_result.receiver1.mean)
            std::printf("  MISMATCH: results differ across thread counts\n");
    }

    {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::vector<RegionPoint> points(60'000);
        for (auto& p : points) p = {unit(rng), unit(rng), unit(rng), unit(rng)};
        auto copy = points;
        auto start = clock_type::now();
        auto serial_front = pareto_frontier_serial(std::move(copy));
        double t_serial = seconds_since(start);
        start = clock_type::now();
        auto parallel_front = pareto_frontier(std::move(points));
        double t_parallel = seconds_since(start);
        report("pareto filter (6e4 points)", t_serial, t_parallel);
        if (serial_front.points.size() != parallel_front.points.size())
            std::printf("  MISMATCH: frontier sizes differ\n");
    }
    return 0;
}

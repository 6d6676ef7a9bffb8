// Times every property suite under the serial reference runner and the
// OpenMP runner, checks the outcomes match, and prints the speedup table.
//
//   bench_suites [trials] [seed]

#include <cstdio>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <minuslat/suites.hpp>

using namespace minuslat;

int main(int argc, char** argv) {
    const int trials = argc > 1 ? std::atoi(argv[1]) : 200;
    const std::uint64_t seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 1;
    const DimRange dims{2, 8};

#ifdef _OPENMP
    const int threads = omp_get_max_threads();
#else
    const int threads = 1;
#endif
    std::printf("%d trials per suite, dims %ld..%ld, seed %llu, %d threads\n\n", trials, dims.lo,
                dims.hi, static_cast<unsigned long long>(seed), threads);
    std::printf("%-14s %12s %12s %9s %7s\n", "suite", "serial (ms)", "openmp (ms)", "speedup",
                "status");

    double serial_total = 0.0, parallel_total = 0.0;
    bool all_match = true;
    for (const std::string& name : suite_names()) {
        SuiteReport serial = run_suite_serial(name, trials, dims, seed);
        SuiteReport parallel = run_suite_parallel(name, trials, dims, seed);
        const bool match = serial.same_outcome(parallel) && serial.failed == 0;
        all_match = all_match && match;
        serial_total += serial.elapsed_ms;
        parallel_total += parallel.elapsed_ms;
        std::printf("%-14s %12.1f %12.1f %8.2fx %7s\n", name.c_str(), serial.elapsed_ms,
                    parallel.elapsed_ms, serial.elapsed_ms / parallel.elapsed_ms,
                    match ? "ok" : "MISMATCH");
    }
    std::printf("\ntotal serial %.1f ms, total openmp %.1f ms, speedup %.2fx\n", serial_total,
                parallel_total, serial_total / parallel_total);
    return all_match ? 0 : 1;
}

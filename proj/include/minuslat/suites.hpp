#pragma once

#include <string>
#include <vector>

#include <minuslat/random_gen.hpp>

namespace minuslat {

/// Trial dimensions cycle through [lo, hi]; lo == hi pins a single size.
struct DimRange {
    Index lo = 2;
    Index hi = 8;
};

struct SuiteFailure {
    int trial = 0;
    std::uint64_t seed = 0;    // derived trial seed; (master_seed, trial) reproduces it
    std::string message;
    std::string inputs;        // serialized inputs, populated for the first failure
};

struct SuiteReport {
    std::string suite;
    int trials = 0;
    std::uint64_t master_seed = 0;
    DimRange dims;
    int passed = 0;
    int failed = 0;
    std::vector<SuiteFailure> failures;  // sorted by trial index
    double elapsed_ms = 0.0;
    int threads = 1;

    bool same_outcome(const SuiteReport& other) const;
};

/// Names accepted by run_suite / the fuzz subcommand.
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

/// Serial reference runner: one trial after another on the calling thread.
SuiteReport run_suite_serial(const std::string& name, int trials, DimRange dims,
                             std::uint64_t master_seed, const ToleranceConfig& cfg = {});

/// OpenMP runner over independent trials (threads == 0 uses the hardware
/// default). Reports are identical to the serial runner regardless of
/// scheduling: trial outcomes are collected by index, then aggregated.
SuiteReport run_suite_parallel(const std::string& name, int trials, DimRange dims,
                               std::uint64_t master_seed, const ToleranceConfig& cfg = {},
                               int threads = 0);

/// Dispatches to the serial runner for threads == 1, OpenMP otherwise.
SuiteReport run_suite(const std::string& name, int trials, DimRange dims,
                      std::uint64_t master_seed, const ToleranceConfig& cfg = {},
                      int threads = 1);

}  // namespace minuslat

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pendulum {

inline constexpr std::uint64_t default_seed = 20240607;

enum class Suite { maximizer, windows, structure, convexity, all };

struct PropertyReport {
    std::string name;
    std::uint64_t cases = 0;
    std::uint64_t failures = 0;
    /// First failing input, printed verbatim.
    std::string counterexample;

    bool passed() const noexcept { return failures == 0; }
};

struct SuiteOptions {
    /// Random instances per property (per dimension for the exhaustive suites).
    std::size_t trials = 100;
    std::uint64_t seed = default_seed;
    unsigned threads = 0;
    /// Test hook: the maximizer suite compares against the sorted arrangement
    /// instead of the pendulum one, so it must fail.
    bool inject_fault = false;
};

std::vector<PropertyReport> run_suite(Suite suite, const SuiteOptions& options);

}  // namespace pendulum

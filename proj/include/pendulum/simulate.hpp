#pragma once

#include <cstdint>
#include <optional>

#include "pendulum/vectors.hpp"

namespace pendulum {

struct SimulationOptions {
    /// Cutoff = guard_factor * closed-form mean unless max_steps is set.
    double guard_factor = 1e4;
    std::optional<std::uint64_t> max_steps;
    /// 0 = hardware concurrency. Results do not depend on this.
    unsigned threads = 0;
};

struct EscapeEstimate {
    double mean = 0.0;
    double variance = 0.0;  // unbiased; 0 when trials == 1
    double std_error = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::uint64_t min_steps = 0;
    std::uint64_t max_steps = 0;
    bool single_sample = false;  // variance is a convention, not an estimate
    const char* rng = nullptr;
};

/// Step cutoff for one simulated walk.
std::uint64_t max_step_guard(const TransitionVector& p, const SimulationOptions& options = {});

/// One walk from state 0: 0 -> 1 surely; from i in 1..d step to i-1 with
/// probability p_i, else to i+1; stop on reaching d+1. Returns the number of
/// steps. Deterministic in (p, seed, stream). Throws step_guard past the cutoff.
std::uint64_t simulate_walk(const TransitionVector& p, std::uint64_t seed, std::uint64_t stream = 0,
                            const SimulationOptions& options = {});

/// Moments of `trials` independent walks; trial k draws from Philox stream k
/// under key `seed`. Sums are accumulated in exact integer arithmetic, so the
/// result is bit-identical for every thread count.
EscapeEstimate estimate_escape(const TransitionVector& p, std::uint64_t trials, std::uint64_t seed,
                               const SimulationOptions& options = {});

}  // namespace pendulum

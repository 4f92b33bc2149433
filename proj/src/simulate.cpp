#include "pendulum/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "pendulum/error.hpp"
#include "pendulum/escape.hpp"
#include "pendulum/parallel.hpp"
#include "pendulum/rng.hpp"

namespace pendulum {

namespace {

__extension__ typedef unsigned __int128 u128;

std::uint64_t walk(std::span<const double> p, CounterStream& rng, std::uint64_t cutoff) {
    const std::size_t exit_state = p.size() + 1;
    std::size_t pos = 0;
    std::uint64_t steps = 0;
    while (pos != exit_state) {
        if (steps == cutoff)
            fail(ErrorKind::step_guard, "walk exceeded the step cutoff of " + std::to_string(cutoff));
        if (pos == 0 || rng.uniform() >= p[pos - 1])
            ++pos;
        else
            --pos;
        ++steps;
    }
    return steps;
}

struct Partial {
    std::uint64_t count = 0;
    u128 sum = 0;
    u128 sum_sq = 0;
    std::uint64_t min = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t max = 0;
};

}  // namespace

std::uint64_t max_step_guard(const TransitionVector& p, const SimulationOptions& options) {
    if (options.max_steps) return *options.max_steps;
    const double cutoff = options.guard_factor * expected_escape_closed_form(p);
    if (!(cutoff < 1.8e19)) return std::numeric_limits<std::uint64_t>::max();
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(cutoff)));
}

std::uint64_t simulate_walk(const TransitionVector& p, std::uint64_t seed, std::uint64_t stream,
                            const SimulationOptions& options) {
    CounterStream rng(seed, stream);
    return walk(p.values(), rng, max_step_guard(p, options));
}

EscapeEstimate estimate_escape(const TransitionVector& p, std::uint64_t trials, std::uint64_t seed,
                               const SimulationOptions& options) {
    if (trials == 0) fail(ErrorKind::invalid_argument, "trials must be at least 1");
    const std::uint64_t cutoff = max_step_guard(p, options);

    // Fixed chunking independent of the thread count.
    constexpr std::uint64_t chunk = 4096;
    const std::size_t chunks = static_cast<std::size_t>((trials + chunk - 1) / chunk);
    std::vector<Partial> partials(chunks);
    parallel_for(chunks, options.threads, [&](std::size_t c) {
        Partial& part = partials[c];
        const std::uint64_t begin = c * chunk;
        const std::uint64_t end = std::min(trials, begin + chunk);
        for (std::uint64_t k = begin; k < end; ++k) {
            CounterStream rng(seed, k);
            const std::uint64_t steps = walk(p.values(), rng, cutoff);
            ++part.count;
            part.sum += steps;
            part.sum_sq += u128{steps} * steps;
            part.min = std::min(part.min, steps);
            part.max = std::max(part.max, steps);
        }
    });

    Partial total;
    for (const auto& part : partials) {
        total.count += part.count;
        total.sum += part.sum;
        total.sum_sq += part.sum_sq;
        total.min = std::min(total.min, part.min);
        total.max = std::max(total.max, part.max);
    }

    EscapeEstimate est;
    est.trials = trials;
    est.seed = seed;
    est.min_steps = total.min;
    est.max_steps = total.max;
    est.rng = Philox4x32::name;
    const auto n = static_cast<long double>(trials);
    est.mean = static_cast<double>(static_cast<long double>(total.sum) / n);
    if (trials == 1) {
        est.single_sample = true;
        return est;
    }
    // n * S2 - S1^2 is exact in 128-bit arithmetic for any realistic run;
    // fall back to long double when it would overflow.
    const u128 s1 = total.sum;
    const bool exact = s1 < (u128{1} << 63) && total.sum_sq < (~u128{0}) / trials;
    long double numerator;
    if (exact)
        numerator = static_cast<long double>(u128{trials} * total.sum_sq - s1 * s1);
    else
        numerator = n * static_cast<long double>(total.sum_sq) -
                    static_cast<long double>(s1) * static_cast<long double>(s1);
    est.variance = static_cast<double>(numerator / (n * (n - 1)));
    est.std_error = std::sqrt(est.variance / static_cast<double>(trials));
    return est;
}

}  // namespace pendulum

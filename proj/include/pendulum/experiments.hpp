#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "pendulum/vectors.hpp"

namespace pendulum {

/// i.i.d. U(lo, hi) environment weights.
struct EnvironmentSpec {
    std::size_t d = 1;
    double lo = 0.0;
    double hi = 0.0;
    std::size_t instantiations = 1;
    std::uint64_t seed = 0;

    /// Throws domain unless 0 <= lo <= hi < 1; invalid_argument for d or
    /// instantiations of 0.
    void validate() const;
};

/// Environment draw `instantiation` of sweep point `point`. A pure function
/// of its arguments.
TransitionVector sample_environment(const EnvironmentSpec& env, std::size_t point, std::size_t instantiation);

enum class Arrangement { maximal, minimal, sorted, random, identity };
const char* arrangement_name(Arrangement a);

struct ExperimentRecord {
    std::string experiment;  // "variance_sweep" or "d_sweep"
    std::size_t d = 0;
    double lo = 0.0;
    double hi = 0.0;
    std::optional<double> x;  // spread parameter of the variance sweep
    /// Environment index; nullopt on rows that average over instantiations.
    std::optional<std::size_t> instantiation;
    Arrangement arrangement = Arrangement::maximal;
    double log10_escape = 0.0;
    /// Linear value, or nullopt once it exceeds the double range.
    std::optional<double> escape;
    std::uint64_t seed = 0;
};

/// Per sweep point and arrangement: mean and standard error of log10 E[tau]
/// across instantiations.
struct SweepPointSummary {
    std::size_t d = 0;
    std::optional<double> x;
    Arrangement arrangement = Arrangement::maximal;
    double mean_log10 = 0.0;
    double stderr_log10 = 0.0;
    std::size_t instantiations = 0;
};

struct SweepResult {
    std::vector<ExperimentRecord> records;  // raw rows, then averaged rows
    std::vector<SweepPointSummary> summaries;
    /// Instantiations breaking sorted >= random >= minimal (variance sweep).
    std::size_t chain_violations = 0;
    /// Instantiations where maximal fails to dominate (must stay 0).
    std::size_t dominance_violations = 0;
    /// First d whose mean log10(maximal) - log10(random) exceeds the threshold.
    std::optional<std::size_t> crossover_d;
};

struct SweepOptions {
    /// Sampled permutations for the random arrangement when it cannot be
    /// averaged exactly.
    std::size_t perm_samples = 200;
    /// Exact random-arrangement mean up to this d, sampling above it.
    std::size_t exact_random_cap = 8;
    /// Crossover threshold on log10(maximal / random).
    double crossover_log10 = 1.0;
    unsigned threads = 0;
};

/// Weights ~ U(0.5 - x, 0.5 + x) for each x; per environment records the
/// maximal (pendulum), minimal (exhaustive), sorted (ascending) and random
/// arrangements. d <= 10.
SweepResult run_variance_sweep(const std::vector<double>& x_values, std::size_t d, std::size_t instantiations,
                               std::uint64_t seed, const SweepOptions& options = {});

/// Weights ~ U(lo, hi) for each d; records maximal, sorted and random
/// (sampled permutations) arrangements, all in the log domain.
SweepResult run_d_sweep(const std::vector<std::size_t>& d_values, double lo, double hi, std::size_t instantiations,
                        std::uint64_t seed, const SweepOptions& options = {});

/// Mean expected escape time over all d! arrangements of p. d <= 8.
double exact_random_arrangement_mean(const TransitionVector& p);

/// log10 of the mean expected escape time over `samples` uniformly random
/// arrangements of p drawn from the given stream.
double sampled_random_arrangement_log10(const TransitionVector& p, std::size_t samples, std::uint64_t seed,
                                        std::uint64_t stream);

inline constexpr const char* csv_header = "experiment,d,lo,hi,x,instantiation,arrangement,log10_escape,escape_or_null,seed";

void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records);
void write_json(std::ostream& out, const std::vector<ExperimentRecord>& records, const SweepResult& result);

/// Writes through a temporary file and renames it into place, so a failed
/// run never leaves a truncated file behind.
void write_file_atomically(const std::filesystem::path& path, const std::string& contents);

// ---------------------------------------------------------------------------
// JSON configuration
//
// {
//   "sweeps": [
//     {"experiment": "variance_sweep", "output": "fig5.csv", "d": 8,
//      "x_values": [0.1, 0.2], "instantiations": 200, "seed": 1},
//     {"experiment": "d_sweep", "output": "fig6.csv", "d_values": [5, 10],
//      "lo": 0.0, "hi": 0.513, "instantiations": 200, "perm_samples": 200,
//      "seed": 1, "crossover_log10": 1.0}
//   ]
// }
// ---------------------------------------------------------------------------

enum class SweepKind { variance, d };

struct SweepConfig {
    SweepKind kind = SweepKind::variance;
    std::string output;
    std::size_t d = 8;
    std::vector<double> x_values;
    std::vector<std::size_t> d_values;
    double lo = 0.0;
    double hi = 0.5;
    std::size_t instantiations = 200;
    std::size_t perm_samples = 200;
    double crossover_log10 = 1.0;
    std::uint64_t seed = 0;
};

struct ExperimentConfig {
    std::vector<SweepConfig> sweeps;
};

/// Throws invalid_argument on malformed or empty configurations.
ExperimentConfig parse_experiment_config(const std::string& json_text);

/// Replaces instantiation and permutation-sample counts with 1000 each.
void apply_full_scale(ExperimentConfig& config);

SweepResult run_sweep(const SweepConfig& sweep, unsigned threads);

}  // namespace pendulum

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pendulum/vectors.hpp"

namespace pendulum {

/// Largest dimension the exhaustive searches accept (10! = 3628800 arrangements).
inline constexpr std::size_t brute_force_cap = 10;
/// Largest dimension for the per-window exhaustive check.
inline constexpr std::size_t window_check_cap = 8;

struct RankedArrangement {
    std::vector<double> arrangement;
    double value = 0.0;
};

struct ArgmaxReport {
    double optimal_value = 0.0;
    /// Every distinct arrangement within the tie tolerance of the optimum,
    /// in lexicographic order.
    std::vector<std::vector<double>> optimal_arrangements;
    /// Best `top` arrangements, best first; ties keep lexicographic order.
    std::vector<RankedArrangement> ranked;
    std::uint64_t evaluations = 0;
};

struct SearchOptions {
    std::size_t top = 0;
    double rel_tol = 1e-12;
    unsigned threads = 0;
};

/// Exhaustive maximum of the expected escape time over all distinct
/// arrangements of p. Throws size_cap for d > brute_force_cap.
ArgmaxReport brute_force_max(const TransitionVector& p, const SearchOptions& options = {});
ArgmaxReport brute_force_min(const TransitionVector& p, const SearchOptions& options = {});

struct ArrangementSummary {
    double min = 0.0;
    double max = 0.0;
    /// Uniform average over all d! permutations (equal to the average over
    /// distinct arrangements, since each has the same multiplicity).
    double mean = 0.0;
    std::uint64_t arrangements = 0;
};

/// Min, max and mean escape time over all arrangements in one pass.
ArrangementSummary summarize_arrangements(const TransitionVector& p, unsigned threads = 0);

/// True iff the exhaustive argmax set is exactly {pend(p), mirror(pend(p))}.
/// Requires strictly positive, pairwise distinct entries.
bool verify_unique_maximizer(const TransitionVector& p, unsigned threads = 0);

struct WindowOptimality {
    /// J_m(pend(x)) attains max over sigma of J_m(sigma x), for every m.
    bool sufficiency = false;
    /// The arrangements maximizing every J_m at once are exactly pend(x) and
    /// its mirror. Not evaluated (nullopt) when x has repeated entries.
    std::optional<bool> necessity;
    std::uint64_t arrangements = 0;

    bool holds() const noexcept { return sufficiency && necessity.value_or(true); }
};

/// Exhaustive per-window check for strictly positive x, d <= window_check_cap.
WindowOptimality check_window_optimality(const OddsVector& x, double rel_tol = 1e-12);
bool verify_window_optimality(const OddsVector& x);

/// Linear budget set { p in [0, a]^d : |p|_1 <= b }.
struct BudgetConstraint {
    double a = 0.0;
    double b = 0.0;
    std::size_t d = 1;

    /// Throws domain unless 0 <= a < 1, b >= 0 and d >= 1.
    void validate() const;
};

struct BudgetSolution {
    TransitionVector p;
    bool infeasible = false;
    std::string note;
};

/// b >= d a: the uniform vector (a, ..., a). Otherwise the pendulum
/// arrangement of (a x floor(b/a), b mod a, 0, ..., 0).
BudgetSolution budget_optimal(const BudgetConstraint& c);

/// Vertices of the budget set: entries in {0, a} with at most one entry equal
/// to the leftover budget. Throws size_cap for d > 16.
std::vector<TransitionVector> budget_extreme_points(const BudgetConstraint& c);

struct CandidateChoice {
    TransitionVector best;
    double value = 0.0;
    std::size_t index = 0;  // into the supplied candidates
};

/// Best pendulum arrangement among caller-supplied extreme points.
CandidateChoice best_pendulum_candidate(std::span<const TransitionVector> candidates);

struct ConvexitySample {
    std::vector<double> p;
    std::vector<double> q;
    double lambda = 0.0;
    double lhs = 0.0;  // E[tau] at the combination
    double rhs = 0.0;  // combination of E[tau]
};

struct ConvexityReport {
    bool passed = true;
    std::size_t samples = 0;
    std::size_t failures = 0;
    std::optional<ConvexitySample> counterexample;
};

/// E at lambda p + (1-lambda) q <= lambda E(p) + (1-lambda) E(q) + rel_tol * rhs.
ConvexitySample convexity_sample(const TransitionVector& p, const TransitionVector& q, double lambda);

/// Random pairs p, q in [1/2, 0.95]^d and lambda in (0, 1). d <= 12.
ConvexityReport verify_convexity(std::size_t samples, std::size_t d, std::uint64_t seed, double rel_tol = 1e-9);

}  // namespace pendulum

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pendulum/permutation.hpp"
#include "pendulum/vectors.hpp"

namespace pendulum {

// Arrangement machinery works on any finite real vector; the overloads for
// TransitionVector / OddsVector keep the strong type. Because p -> p/(1-p) is
// strictly increasing, every order-based operation commutes with odds().

/// sigma(i) = d + 1 - i.
Permutation mirror_permutation(std::size_t d);

/// Maps the ascending sort onto the pendulum arrangement:
/// theta(j) = 2j - 1 for j <= (d+1)/2, 2(d + 1 - j) otherwise.
Permutation theta_permutation(std::size_t d);

/// Closed-form inverse of theta: odd j -> (j+1)/2, even j -> d + 1 - j/2.
Permutation theta_inverse(std::size_t d);

std::vector<double> mirror(std::span<const double> x);
std::vector<double> sorted_ascending(std::span<const double> x);

/// theta applied to the stable ascending sort of x. The result has the
/// largest entry in the middle and entries decreasing alternately outward.
std::vector<double> pendulum_arrangement(std::span<const double> x);
TransitionVector pendulum_arrangement(const TransitionVector& p);
OddsVector pendulum_arrangement(const OddsVector& x);

/// x_i <= x_{d+1-i} for i <= floor(d/2) and x_{d+1-i} <= x_{i+1} for
/// i <= floor((d-1)/2). Non-strict.
bool is_pendulum(std::span<const double> x);

struct ImprovingStep {
    Permutation permutation;
    std::vector<double> permuted;
};

/// The l-th improving permutation, defined with respect to the vector it acts
/// on: position i <= l/2 swaps with l+1-i iff x_i > x_{l+1-i}; position
/// l/2 < i <= l swaps iff x_i < x_{l+1-i}. Indices above l are fixed, and
/// equal entries never swap, so after the step the larger of each mirrored
/// pair sits right of the axis (l+1)/2.
///
/// Throws invalid_argument unless 1 <= l <= d.
ImprovingStep improving_permutation(std::span<const double> x, std::size_t l);

struct PendulumSortResult {
    std::vector<double> result;
    /// Output of every composite step, ending with the first step that left
    /// the vector unchanged.
    std::vector<std::vector<double>> trace;
    /// Composite steps that changed the vector; at most ceil(d/2).
    std::size_t changing_steps = 0;
};

/// Iterates y <- mirror(imp_{d-1}(mirror(imp_d(y)))) until a step changes
/// nothing. The fixpoint is pendulum_arrangement(x).
PendulumSortResult pendulum_sort(std::span<const double> x);

enum class Parity { odd, even };

/// One compare-exchange pass over adjacent pairs (i, i+1) with i of the given
/// parity (1-based): swap iff x_i > x_{i+1}.
std::vector<double> odd_even_pass(std::span<const double> x, Parity parity);

/// Number of predecessors z_1..z_{i-1} strictly greater than z_i (1-based i).
std::size_t inversion_count(std::span<const double> z, std::size_t i);

}  // namespace pendulum

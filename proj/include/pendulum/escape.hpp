#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pendulum/vectors.hpp"

namespace pendulum {

/// x_i = p_i / (1 - p_i).
OddsVector odds(const TransitionVector& p);

/// Expected first hitting time of d+1 from 0:
///   (d+1) + 2 * sum_{m=1..d} sum_{i=1..d-m+1} prod_{j=i..i+m-1} x_j.
/// Window products are formed by plain multiplication and summed with
/// compensated summation.
double expected_escape_closed_form(const TransitionVector& p);

/// Same quantity from the first-step equations
///   E_k = p_k E_{k-1} + (1 - p_k) E_{k+1} + 1,  E_{d+1} = 0,  E_0 = E_1 + 1,
/// solved by forward recursion on the gaps D_k = E_k - E_{k+1}:
///   D_0 = 1,  D_k = x_k D_{k-1} + 1/(1 - p_k),  E_0 = 1 + sum_k D_k.
/// Independent of the window-product route.
double expected_escape_linear_system(const TransitionVector& p);

/// Natural log of the expected escape time, evaluated entirely in the log
/// domain so that it stays finite where the linear value overflows.
/// O(d): the log of the sum of all windows ending at k obeys
///   log S_k = log x_k + softplus(log S_{k-1}),
/// and the S_k are combined with log-sum-exp.
double log_expected_escape(const TransitionVector& p);
double log10_expected_escape(const TransitionVector& p);

/// w_m(i, x): product of x_i..x_{i+m-1} when 1 <= i <= d+1-m, else 0.
/// Throws invalid_argument unless 1 <= m <= d.
double window_product(std::span<const double> x, std::size_t m, long long i);

/// J_m(x): sum of all length-m window products.
double value_J(std::span<const double> x, std::size_t m);

/// All J_1..J_d at once (index m-1), bit-identical to calling value_J per m.
std::vector<double> values_J(std::span<const double> x);

/// sum_m J_m(x).
double total_value(std::span<const double> x);

/// (d+1) + 2 * total_value(x); the closed form written in terms of odds.
double escape_from_odds(std::span<const double> x);

}  // namespace pendulum

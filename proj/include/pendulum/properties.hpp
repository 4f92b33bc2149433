#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pendulum/arrangements.hpp"

namespace pendulum {

// Helper quantities behind the structural facts about window products and the
// pendulum sort. Each is checked by the property suites in verify.hpp.

/// J_m(x) regrouped around the improving-permutation axis of l:
///   sum_{i=1}^{ceil((l-m)/2)} [w_m(i) + w_m(l+2-m-i)]
///   + sum_{i=l+2-m}^{d+1-m} w_m(i)
///   + w_m((l+2-m)/2) if l - m is even and nonnegative.
/// Equals value_J(x, m) for every 1 <= m, l <= d.
double decomposed_value(std::span<const double> x, std::size_t m, std::size_t l);

/// theta^{-1} imp_d theta z (odd) or theta^{-1} mirror imp_{d-1} mirror theta z
/// (even): the improving steps seen in sorted coordinates. Both reduce to an
/// odd_even_pass of the same parity.
std::vector<double> conjugated_improving_pass(std::span<const double> z, Parity parity);

/// Upper bound on N_i after one pass of the given parity, in terms of the
/// inversion counts of z before the pass. For the odd pass:
///   i even            -> N_{max(1, i-1)}(z)
///   i odd, i < d      -> max(N_i(z), N_{i+1}(z) - 1)
///   i = d odd         -> N_d(z)
/// and the even pass swaps the roles of odd and even i.
std::size_t inversion_bound_after_pass(std::span<const double> z, std::size_t i, Parity parity);

/// For nonnegative x1 x2 = y1 y2 with max(y) < max(x): y1 + y2 < x1 + x2.
/// Returns true when the hypotheses fail (vacuous) or the conclusion holds.
bool rectangle_inequality_holds(double x1, double x2, double y1, double y2, double rel_tol = 1e-12);

}  // namespace pendulum

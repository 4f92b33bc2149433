#include "pendulum/properties.hpp"

#include <algorithm>
#include <cmath>

#include "pendulum/error.hpp"
#include "pendulum/escape.hpp"
#include "pendulum/summation.hpp"

namespace pendulum {

double decomposed_value(std::span<const double> x, std::size_t m, std::size_t l) {
    const auto d = static_cast<long long>(x.size());
    if (l < 1 || static_cast<long long>(l) > d)
        fail(ErrorKind::invalid_argument, "axis index l outside 1..d");
    const auto mm = static_cast<long long>(m);
    const auto ll = static_cast<long long>(l);
    const long long axis = ll + 2 - mm;
    const long long diff = ll - mm;

    CompensatedSum acc;
    // ceil(diff / 2) for signed diff
    const long long pairs = diff >= 0 ? (diff + 1) / 2 : -((-diff) / 2);
    for (long long i = 1; i <= pairs; ++i) {
        acc += window_product(x, m, i);
        acc += window_product(x, m, axis - i);
    }
    for (long long i = axis; i <= d + 1 - mm; ++i) acc += window_product(x, m, i);
    if (diff >= 0 && diff % 2 == 0) acc += window_product(x, m, axis / 2);
    return acc.value();
}

std::vector<double> conjugated_improving_pass(std::span<const double> z, Parity parity) {
    const std::size_t d = z.size();
    const auto theta = theta_permutation(d);
    auto y = theta.apply(z);
    if (parity == Parity::odd) {
        y = improving_permutation(y, d).permuted;
    } else if (d >= 2) {
        y = mirror(y);
        y = improving_permutation(y, d - 1).permuted;
        y = mirror(y);
    }
    return theta_inverse(d).apply(std::span<const double>(y));
}

std::size_t inversion_bound_after_pass(std::span<const double> z, std::size_t i, Parity parity) {
    const std::size_t d = z.size();
    if (i < 1 || i > d) fail(ErrorKind::invalid_argument, "inversion index out of range");
    // pairs (j, j+1) are compared for j of the pass parity
    const bool pair_start = (i % 2 == 1) == (parity == Parity::odd);
    if (!pair_start) return inversion_count(z, std::max<std::size_t>(1, i - 1));
    if (i < d) {
        const std::size_t here = inversion_count(z, i);
        const std::size_t next = inversion_count(z, i + 1);
        return std::max(here, next == 0 ? 0 : next - 1);
    }
    return inversion_count(z, d);
}

bool rectangle_inequality_holds(double x1, double x2, double y1, double y2, double rel_tol) {
    const double area_x = x1 * x2;
    const double area_y = y1 * y2;
    const bool same_area = std::fabs(area_x - area_y) <= rel_tol * std::max(std::fabs(area_x), std::fabs(area_y));
    if (!same_area || !(std::max(y1, y2) < std::max(x1, x2))) return true;
    return y1 + y2 < x1 + x2;
}

}  // namespace pendulum

#include "pendulum/arrangements.hpp"

#include <algorithm>
#include <string>

#include "pendulum/error.hpp"

namespace pendulum {

namespace {

void require_dimension(std::size_t d) {
    if (d == 0) fail(ErrorKind::invalid_dimension, "dimension must be at least 1");
}

}  // namespace

Permutation mirror_permutation(std::size_t d) {
    require_dimension(d);
    std::vector<std::size_t> m(d);
    for (std::size_t i = 1; i <= d; ++i) m[i - 1] = d + 1 - i;
    return Permutation(std::move(m));
}

Permutation theta_permutation(std::size_t d) {
    require_dimension(d);
    std::vector<std::size_t> m(d);
    for (std::size_t j = 1; j <= d; ++j) m[j - 1] = (2 * j <= d + 1) ? 2 * j - 1 : 2 * (d + 1 - j);
    return Permutation(std::move(m));
}

Permutation theta_inverse(std::size_t d) {
    require_dimension(d);
    std::vector<std::size_t> m(d);
    for (std::size_t j = 1; j <= d; ++j) m[j - 1] = (j % 2 == 1) ? (j + 1) / 2 : d + 1 - j / 2;
    return Permutation(std::move(m));
}

std::vector<double> mirror(std::span<const double> x) {
    require_dimension(x.size());
    return {x.rbegin(), x.rend()};
}

std::vector<double> sorted_ascending(std::span<const double> x) {
    std::vector<double> s(x.begin(), x.end());
    std::stable_sort(s.begin(), s.end());
    return s;
}

std::vector<double> pendulum_arrangement(std::span<const double> x) {
    require_dimension(x.size());
    const auto s = sorted_ascending(x);
    return theta_permutation(x.size()).apply(std::span<const double>(s));
}

TransitionVector pendulum_arrangement(const TransitionVector& p) {
    return TransitionVector(pendulum_arrangement(p.values()));
}

OddsVector pendulum_arrangement(const OddsVector& x) { return OddsVector(pendulum_arrangement(x.values())); }

bool is_pendulum(std::span<const double> x) {
    const std::size_t d = x.size();
    require_dimension(d);
    // 1-based: x_i <= x_{d+1-i}, then x_{d+1-i} <= x_{i+1}
    for (std::size_t i = 1; i <= d / 2; ++i)
        if (!(x[i - 1] <= x[d - i])) return false;
    for (std::size_t i = 1; i <= (d - 1) / 2; ++i)
        if (!(x[d - i] <= x[i])) return false;
    return true;
}

ImprovingStep improving_permutation(std::span<const double> x, std::size_t l) {
    const std::size_t d = x.size();
    require_dimension(d);
    if (l < 1 || l > d)
        fail(ErrorKind::invalid_argument,
             "improving permutation index l = " + std::to_string(l) + " outside 1.." + std::to_string(d));

    std::vector<std::size_t> m(d);
    for (std::size_t i = 1; i <= d; ++i) {
        std::size_t target = i;
        if (i <= l) {
            const std::size_t partner = l + 1 - i;
            const double xi = x[i - 1];
            const double xp = x[partner - 1];
            // i <= l/2  <=>  2i <= l
            const bool swap = (2 * i <= l) ? (xi > xp) : (xi < xp);
            if (swap) target = partner;
        }
        m[i - 1] = target;
    }
    Permutation sigma(std::move(m));
    auto permuted = sigma.apply(x);
    return {std::move(sigma), std::move(permuted)};
}

PendulumSortResult pendulum_sort(std::span<const double> x) {
    const std::size_t d = x.size();
    require_dimension(d);
    PendulumSortResult out;
    std::vector<double> y(x.begin(), x.end());
    // The bound is ceil(d/2) changing steps; the extra slack only exists so a
    // broken invariant surfaces as an exception instead of a hang.
    const std::size_t limit = d + 2;
    for (std::size_t step = 0; step < limit; ++step) {
        auto next = improving_permutation(y, d).permuted;
        if (d >= 2) {
            next = mirror(next);
            next = improving_permutation(next, d - 1).permuted;
            next = mirror(next);
        }
        out.trace.push_back(next);
        if (next == y) {
            out.result = std::move(next);
            return out;
        }
        ++out.changing_steps;
        y = std::move(next);
    }
    throw std::logic_error("pendulum_sort did not reach a fixpoint");
}

std::vector<double> odd_even_pass(std::span<const double> x, Parity parity) {
    require_dimension(x.size());
    std::vector<double> y(x.begin(), x.end());
    const std::size_t first = (parity == Parity::odd) ? 1 : 2;
    for (std::size_t i = first; i < y.size(); i += 2)
        if (y[i - 1] > y[i]) std::swap(y[i - 1], y[i]);
    return y;
}

std::size_t inversion_count(std::span<const double> z, std::size_t i) {
    if (i < 1 || i > z.size())
        fail(ErrorKind::invalid_argument, "inversion index " + std::to_string(i) + " out of range");
    const double zi = z[i - 1];
    return static_cast<std::size_t>(std::count_if(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(i - 1),
                                                  [zi](double v) { return v > zi; }));
}

}  // namespace pendulum

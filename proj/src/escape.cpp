#include "pendulum/escape.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "pendulum/error.hpp"
#include "pendulum/summation.hpp"

namespace pendulum {

namespace {

void require_window(std::size_t d, std::size_t m) {
    if (d == 0) fail(ErrorKind::invalid_dimension, "dimension must be at least 1");
    if (m < 1 || m > d)
        fail(ErrorKind::invalid_argument,
             "window length m = " + std::to_string(m) + " outside 1.." + std::to_string(d));
}

// log(exp(a) + exp(b)) with -inf handled.
double log_add(double a, double b) {
    if (a == -std::numeric_limits<double>::infinity()) return b;
    if (b == -std::numeric_limits<double>::infinity()) return a;
    if (a < b) std::swap(a, b);
    return a + std::log1p(std::exp(b - a));
}

}  // namespace

OddsVector odds(const TransitionVector& p) {
    std::vector<double> x(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) x[i] = p[i] / (1.0 - p[i]);
    return OddsVector(std::move(x));
}

double window_product(std::span<const double> x, std::size_t m, long long i) {
    const std::size_t d = x.size();
    require_window(d, m);
    const long long last_start = static_cast<long long>(d + 1 - m);
    if (i < 1 || i > last_start) return 0.0;
    double prod = 1.0;
    for (std::size_t j = static_cast<std::size_t>(i); j < static_cast<std::size_t>(i) + m; ++j) prod *= x[j - 1];
    return prod;
}

double value_J(std::span<const double> x, std::size_t m) {
    const std::size_t d = x.size();
    require_window(d, m);
    CompensatedSum acc;
    for (std::size_t i = 1; i + m <= d + 1; ++i) acc += window_product(x, m, static_cast<long long>(i));
    return acc.value();
}

std::vector<double> values_J(std::span<const double> x) {
    const std::size_t d = x.size();
    if (d == 0) fail(ErrorKind::invalid_dimension, "dimension must be at least 1");
    // Extending the product from a fixed start multiplies in the same order as
    // window_product does, and each J_m still receives its windows in
    // increasing i, so the result matches value_J exactly.
    std::vector<CompensatedSum> acc(d);
    for (std::size_t start = 0; start < d; ++start) {
        double prod = 1.0;
        for (std::size_t end = start; end < d; ++end) {
            prod *= x[end];
            acc[end - start] += prod;
        }
    }
    std::vector<double> out(d);
    for (std::size_t m = 0; m < d; ++m) out[m] = acc[m].value();
    return out;
}

double total_value(std::span<const double> x) {
    CompensatedSum acc;
    for (double j : values_J(x)) acc += j;
    return acc.value();
}

double escape_from_odds(std::span<const double> x) {
    return static_cast<double>(x.size() + 1) + 2.0 * total_value(x);
}

double expected_escape_closed_form(const TransitionVector& p) { return escape_from_odds(odds(p).values()); }

double expected_escape_linear_system(const TransitionVector& p) {
    CompensatedSum sum;
    sum += 1.0;
    double gap = 1.0;  // D_0 = E_0 - E_1
    for (std::size_t k = 0; k < p.size(); ++k) {
        const double q = 1.0 - p[k];
        gap = (p[k] / q) * gap + 1.0 / q;
        sum += gap;
    }
    return sum.value();
}

double log_expected_escape(const TransitionVector& p) {
    constexpr double neg_inf = -std::numeric_limits<double>::infinity();
    double log_ending = neg_inf;  // log S_{k-1}
    double log_total = neg_inf;
    for (std::size_t k = 0; k < p.size(); ++k) {
        const double log_x = (p[k] == 0.0) ? neg_inf : std::log(p[k]) - std::log1p(-p[k]);
        if (log_x == neg_inf) {
            log_ending = neg_inf;
            continue;
        }
        log_ending = log_x + log_add(0.0, log_ending);
        log_total = log_add(log_total, log_ending);
    }
    const double log_base = std::log(static_cast<double>(p.size() + 1));
    return log_add(log_base, std::log(2.0) + log_total);
}

double log10_expected_escape(const TransitionVector& p) { return log_expected_escape(p) / std::log(10.0); }

}  // namespace pendulum

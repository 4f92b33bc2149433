#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "oracles.hpp"
#include "pendulum/arrangements.hpp"
#include "pendulum/error.hpp"
#include "pendulum/escape.hpp"

using namespace pendulum;
using V = std::vector<double>;

namespace {

V random_p(std::mt19937_64& rng, std::size_t d, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    V p(d);
    for (auto& v : p) v = u(rng);
    return p;
}

bool rel_close(double a, double b, double tol) { return std::fabs(a - b) <= tol * std::max(std::fabs(a), std::fabs(b)); }

}  // namespace

TEST_CASE("known values") {
    CHECK(expected_escape_closed_form(TransitionVector{0.5, 0.5}) == doctest::Approx(9.0).epsilon(1e-15));
    CHECK(expected_escape_linear_system(TransitionVector{0.5, 0.5}) == doctest::Approx(9.0).epsilon(1e-15));
    // exact rational 140/9
    CHECK(expected_escape_closed_form(TransitionVector{0.2, 0.7, 0.4}) == doctest::Approx(15.555555555555555).epsilon(1e-14));
    CHECK(expected_escape_closed_form(TransitionVector{0.64, 0.85, 0.71, 0.17}) ==
          doctest::Approx(139.20800443151919).epsilon(1e-13));
    // zero drift back: deterministic walk of d+1 steps
    CHECK(expected_escape_closed_form(TransitionVector{0.0, 0.0, 0.0}) == 4.0);
    CHECK(expected_escape_linear_system(TransitionVector{0.0, 0.0, 0.0}) == 4.0);
}

TEST_CASE("domain checks") {
    CHECK_THROWS_AS(TransitionVector({0.5, 1.0}), Error);
    CHECK_THROWS_AS(TransitionVector({-0.1}), Error);
    CHECK_THROWS_AS(TransitionVector({std::numeric_limits<double>::quiet_NaN()}), Error);
    try {
        TransitionVector(V{});
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::invalid_dimension);
    }
    try {
        TransitionVector({0.2, 1.0});
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::domain);
    }
    CHECK_THROWS_AS(OddsVector({-1.0}), Error);
    CHECK_THROWS_AS(OddsVector({std::numeric_limits<double>::infinity()}), Error);
}

TEST_CASE("closed form, linear system and dense solve agree") {
    std::mt19937_64 rng(42);
    for (int t = 0; t < 400; ++t) {
        const std::size_t d = 1 + t % 30;
        const auto p = random_p(rng, d, 0.0, 0.9);
        const TransitionVector tp(p);
        const double cf = expected_escape_closed_form(tp);
        const double ls = expected_escape_linear_system(tp);
        CHECK(rel_close(cf, ls, 1e-10));
        CHECK(rel_close(cf, oracle::naive_escape(p), 1e-10));
        if (d <= 15) CHECK(rel_close(cf, oracle::escape_by_dense_solve(p), 1e-9));
    }
}

TEST_CASE("log path matches the linear value and survives overflow") {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 200; ++t) {
        const std::size_t d = 1 + t % 20;
        const TransitionVector p(random_p(rng, d, 0.0, 0.95));
        CHECK(std::fabs(log_expected_escape(p) - std::log(expected_escape_linear_system(p))) < 1e-12 * d + 1e-13);
        CHECK(std::fabs(log10_expected_escape(p) * std::log(10.0) - log_expected_escape(p)) < 1e-12);
    }
    // x = 3 everywhere at d = 1000 overflows doubles but not the log path
    const TransitionVector big(V(1000, 0.75));
    CHECK_FALSE(std::isfinite(expected_escape_closed_form(big)));
    const double l10 = log10_expected_escape(big);
    CHECK(std::isfinite(l10));
    // dominant term 2 * 3^1000 * (3/2)^2
    CHECK(l10 == doctest::Approx(1000 * std::log10(3.0) + std::log10(2.0 * 2.25)).epsilon(1e-9));
    CHECK(log10_expected_escape(TransitionVector{0.0, 0.0}) == doctest::Approx(std::log10(3.0)));
}

TEST_CASE("window products") {
    const V x{2, 3, 5, 7};
    CHECK(window_product(x, 2, 1) == 6);
    CHECK(window_product(x, 2, 3) == 35);
    CHECK(window_product(x, 2, 4) == 0);
    CHECK(window_product(x, 2, 0) == 0);
    CHECK(window_product(x, 2, -3) == 0);
    CHECK(window_product(x, 4, 1) == 210);
    CHECK_THROWS_AS(window_product(x, 0, 1), Error);
    CHECK_THROWS_AS(window_product(x, 5, 1), Error);
    CHECK(value_J(x, 1) == 17);
    CHECK(value_J(x, 3) == 30 + 105);
    CHECK(total_value(x) == 17 + (6 + 15 + 35) + 135 + 210);
}

TEST_CASE("values_J is bit-identical to value_J") {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 100; ++t) {
        const auto x = random_p(rng, 1 + t % 25, 0.0, 4.0);
        const auto all = values_J(x);
        REQUIRE(all.size() == x.size());
        for (std::size_t m = 1; m <= x.size(); ++m) CHECK(all[m - 1] == value_J(x, m));
    }
}

TEST_CASE("escape is mirror invariant") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 100; ++t) {
        const auto p = random_p(rng, 1 + t % 15, 0.0, 0.9);
        CHECK(rel_close(expected_escape_closed_form(TransitionVector(p)),
                        expected_escape_closed_form(TransitionVector(mirror(p))), 1e-12));
    }
}

#include <doctest.h>

#include <cmath>
#include <cstring>

#include "pendulum/error.hpp"
#include "pendulum/escape.hpp"
#include "pendulum/rng.hpp"
#include "pendulum/simulate.hpp"

using namespace pendulum;

TEST_CASE("philox known answers") {
    using C = Philox4x32::Counter;
    using K = Philox4x32::Key;
    CHECK(Philox4x32::generate(C{0, 0, 0, 0}, K{0, 0}) == C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(Philox4x32::generate(C{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, K{0xffffffff, 0xffffffff}) ==
          C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(Philox4x32::generate(C{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, K{0xa4093822, 0x299f31d0}) ==
          C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("counter stream uniforms") {
    CounterStream a(5, 0), b(5, 0), c(5, 1);
    double sum = 0;
    bool differs = false;
    for (int i = 0; i < 10000; ++i) {
        const double u = a.uniform();
        CHECK(u == b.uniform());
        differs = differs || u != c.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        sum += u;
    }
    CHECK(differs);
    CHECK(sum / 10000 == doctest::Approx(0.5).epsilon(0.02));
    CounterStream d(1, 2);
    for (int i = 0; i < 1000; ++i) CHECK(d.below(7) < 7);
}

TEST_CASE("walk is deterministic in seed and stream") {
    const TransitionVector p{0.3, 0.6, 0.2};
    CHECK(simulate_walk(p, 1, 3) == simulate_walk(p, 1, 3));
    CHECK(simulate_walk(TransitionVector{0.0, 0.0, 0.0, 0.0}, 99) == 5);
    bool any_diff = false;
    for (std::uint64_t s = 0; s < 20; ++s) any_diff = any_diff || simulate_walk(p, 1, s) != simulate_walk(p, 1, s + 1);
    CHECK(any_diff);
}

TEST_CASE("estimate agrees with the closed form") {
    const TransitionVector p{0.5, 0.5};
    const auto est = estimate_escape(p, 100000, 7, {.threads = 1});
    CHECK(std::fabs(est.mean - 9.0) < 4 * est.std_error);
    CHECK(est.trials == 100000);
    CHECK(est.seed == 7);
    CHECK(est.min_steps >= 3);
    CHECK(std::strcmp(est.rng, "philox4x32-10") == 0);
}

TEST_CASE("estimate is bit-identical across thread counts") {
    const TransitionVector p{0.4, 0.7, 0.55, 0.2};
    const auto a = estimate_escape(p, 20000, 11, {.threads = 1});
    const auto b = estimate_escape(p, 20000, 11, {.threads = 3});
    const auto c = estimate_escape(p, 20000, 11, {.threads = 8});
    CHECK(std::memcmp(&a.mean, &b.mean, sizeof(double)) == 0);
    CHECK(std::memcmp(&a.mean, &c.mean, sizeof(double)) == 0);
    CHECK(std::memcmp(&a.variance, &c.variance, sizeof(double)) == 0);
    CHECK(a.max_steps == c.max_steps);
}

TEST_CASE("single trial and zero trials") {
    const TransitionVector p{0.5};
    const auto one = estimate_escape(p, 1, 3);
    CHECK(one.single_sample);
    CHECK(one.variance == 0.0);
    CHECK(one.std_error == 0.0);
    try {
        estimate_escape(p, 0, 3);
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::invalid_argument);
    }
}

TEST_CASE("step guard") {
    const TransitionVector p{0.9, 0.9, 0.9, 0.9, 0.9, 0.9};
    SimulationOptions o;
    o.max_steps = 10;
    try {
        simulate_walk(p, 1, 0, o);
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::step_guard);
    }
    CHECK_THROWS_AS(estimate_escape(p, 50, 1, o), Error);
    CHECK(max_step_guard(TransitionVector{0.5, 0.5}) == doctest::Approx(9e4).epsilon(1e-9));
}

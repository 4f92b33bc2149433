#include "pendulum/verify.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <span>

#include "pendulum/arrangements.hpp"
#include "pendulum/escape.hpp"
#include "pendulum/format.hpp"
#include "pendulum/optimize.hpp"
#include "pendulum/parallel.hpp"
#include "pendulum/properties.hpp"
#include "pendulum/rng.hpp"

namespace pendulum {

namespace {

constexpr double rel_tol = 1e-12;

// Stream ids: one 16-bit tag per property, then dimension, then case index.
std::uint64_t stream_id(std::uint64_t tag, std::uint64_t d, std::uint64_t k) { return (tag << 48) | (d << 32) | k; }

std::vector<double> random_vector(CounterStream& rng, std::size_t d, double lo, double hi, bool distinct) {
    for (;;) {
        std::vector<double> x(d);
        for (auto& v : x) v = rng.uniform(lo, hi);
        if (!distinct || pairwise_distinct(x)) return x;
    }
}

// Small-integer entries so that ties occur.
std::vector<double> random_tied_vector(CounterStream& rng, std::size_t d) {
    std::vector<double> x(d);
    for (auto& v : x) v = static_cast<double>(rng.below(4));
    return x;
}

std::size_t random_dimension(CounterStream& rng, std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(rng.below(hi - lo + 1));
}

struct Recorder {
    PropertyReport report;

    explicit Recorder(std::string name) { report.name = std::move(name); }

    void check(bool ok, const std::string& context) {
        ++report.cases;
        if (ok) return;
        ++report.failures;
        if (report.counterexample.empty()) report.counterexample = context;
    }
};

bool close_rel(double a, double b) { return std::fabs(a - b) <= rel_tol * std::max(std::fabs(a), std::fabs(b)); }
bool at_least(double after, double before) { return after >= before - rel_tol * std::fabs(before); }

std::string describe(std::span<const double> x, std::size_t m, std::size_t l) {
    return "x=" + format_vector(x) + " m=" + std::to_string(m) + " l=" + std::to_string(l);
}

PropertyReport maximizer_suite(const SuiteOptions& o) {
    Recorder rec("maximizer.is_pendulum_pair");
    for (std::size_t d = 2; d <= 8; ++d) {
        std::vector<std::vector<double>> inputs(o.trials);
        for (std::size_t t = 0; t < o.trials; ++t) {
            CounterStream rng(o.seed, stream_id(1, d, t));
            inputs[t] = random_vector(rng, d, 0.02, 0.95, true);
        }
        for (const auto& p : inputs) {
            bool ok;
            if (o.inject_fault) {
                SearchOptions so;
                so.threads = o.threads;
                const auto report = brute_force_max(TransitionVector(p), so);
                const auto wrong = sorted_ascending(p);
                const std::set<std::vector<double>> expected{wrong, mirror(wrong)};
                ok = std::set<std::vector<double>>(report.optimal_arrangements.begin(),
                                                   report.optimal_arrangements.end()) == expected;
            } else {
                ok = verify_unique_maximizer(TransitionVector(p), o.threads);
            }
            rec.check(ok, "p=" + format_vector(p));
        }
    }
    return rec.report;
}

std::vector<PropertyReport> window_suite(const SuiteOptions& o) {
    Recorder suff("windows.sufficiency");
    Recorder nec("windows.necessity");
    for (std::size_t d = 2; d <= 7; ++d) {
        for (std::size_t t = 0; t < o.trials; ++t) {
            CounterStream rng(o.seed, stream_id(2, d, t));
            const auto x = random_vector(rng, d, 0.05, 5.0, true);
            const auto res = check_window_optimality(OddsVector(x));
            suff.check(res.sufficiency, "x=" + format_vector(x));
            nec.check(res.necessity.value_or(false), "x=" + format_vector(x));
        }
    }
    return {suff.report, nec.report};
}

std::vector<PropertyReport> structure_suite(const SuiteOptions& o) {
    Recorder monotone("improving.never_decreases");
    Recorder strict("improving.strict_witness");
    Recorder idempotent("improving.second_application_is_identity");
    Recorder decomposition("value_decomposition");
    Recorder invariant_pairs("window_pairs.product_invariant");
    Recorder improving_pairs("window_pairs.sum_improves");
    Recorder disjoint("windows.disjoint_domination");
    Recorder single("windows.single_improves");
    for (std::size_t t = 0; t < o.trials; ++t) {
        CounterStream rng(o.seed, stream_id(3, 0, t));
        const std::size_t d = random_dimension(rng, 1, 10);
        const auto x = random_vector(rng, d, 0.05, 5.0, false);
        const auto before = values_J(x);
        const auto mirrored = mirror(x);
        for (std::size_t l = 1; l <= d; ++l) {
            const auto step = improving_permutation(x, l);
            const auto& y = step.permuted;
            const auto after = values_J(y);
            bool improved_somewhere = false;
            for (std::size_t m = 1; m <= d; ++m) {
                monotone.check(at_least(after[m - 1], before[m - 1]), describe(x, m, l));
                if (after[m - 1] > before[m - 1] + rel_tol * before[m - 1]) improved_somewhere = true;
                decomposition.check(close_rel(decomposed_value(x, m, l), before[m - 1]), describe(x, m, l));

                const auto L = static_cast<long long>(l);
                const auto M = static_cast<long long>(m);
                const long long axis = L + 2 - M;
                for (long long i = 1; 2 * i <= axis; ++i) {
                    const double a0 = window_product(x, m, i), b0 = window_product(x, m, axis - i);
                    const double a1 = window_product(y, m, i), b1 = window_product(y, m, axis - i);
                    const auto ctx = describe(x, m, l) + " i=" + std::to_string(i);
                    invariant_pairs.check(close_rel(a0 * b0, a1 * b1), ctx);
                    improving_pairs.check(at_least(a1 + b1, a0 + b0), ctx);
                    if (2 * i <= L + 2 - 2 * M) disjoint.check(at_least(b1, std::max(a0, b0)), ctx);
                }
                for (long long i = std::max<long long>(1, axis); i <= static_cast<long long>(d) + 1 - M; ++i)
                    single.check(at_least(window_product(y, m, i), window_product(x, m, i)),
                                 describe(x, m, l) + " i=" + std::to_string(i));
            }
            if (y != x && y != mirrored) strict.check(improved_somewhere, "x=" + format_vector(x) + " l=" + std::to_string(l));
            idempotent.check(improving_permutation(y, l).permutation.is_identity(),
                             "x=" + format_vector(x) + " l=" + std::to_string(l));
        }
    }

    Recorder rectangle("rectangle_inequality");
    for (std::size_t t = 0; t < o.trials; ++t) {
        CounterStream rng(o.seed, stream_id(4, 0, t));
        double x1 = rng.uniform(0.01, 10.0), x2 = rng.uniform(0.01, 10.0);
        if (x1 > x2) std::swap(x1, x2);
        // y2 strictly between sqrt(x1 x2) and x2, y1 completes the area
        const double g = std::sqrt(x1 * x2);
        const double y2 = g + (x2 - g) * rng.uniform(0.0, 0.999);
        const double y1 = x1 * x2 / y2;
        const bool ok = rectangle_inequality_holds(x1, x2, y1, y2) && (y1 + y2 < x1 + x2 || x1 == x2);
        rectangle.check(ok, "x=(" + format_double(x1) + "," + format_double(x2) + ") y=(" + format_double(y1) +
                                "," + format_double(y2) + ")");
    }

    Recorder theta_sort("pendulum.theta_of_sort");
    Recorder pend_sort("pendulum_sort.step_bound");
    Recorder conjugation("pendulum_sort.conjugation_is_odd_even_pass");
    for (std::size_t t = 0; t < o.trials; ++t) {
        CounterStream rng(o.seed, stream_id(5, 0, t));
        const std::size_t d = random_dimension(rng, 1, 50);
        const auto x = (t % 4 == 3) ? random_tied_vector(rng, d) : random_vector(rng, d, 0.01, 10.0, false);
        const auto pend = pendulum_arrangement(x);
        const auto s = sorted_ascending(x);
        theta_sort.check(theta_permutation(d).apply(std::span<const double>(s)) == pend && is_pendulum(pend) &&
                         sorted_ascending(pend) == s && pendulum_arrangement(pend) == pend,
                     "x=" + format_vector(x));

        const auto z = random_vector(rng, d, 0.01, 10.0, true);
        const auto sorted = pendulum_sort(z);
        pend_sort.check(sorted.result == pendulum_arrangement(z) && sorted.changing_steps <= (d + 1) / 2,
                        "x=" + format_vector(z));
        conjugation.check(conjugated_improving_pass(z, Parity::odd) == odd_even_pass(z, Parity::odd) &&
                              conjugated_improving_pass(z, Parity::even) == odd_even_pass(z, Parity::even),
                          "z=" + format_vector(z));
    }

    Recorder bounds("inversion_count.pass_bounds");
    for (std::size_t t = 0; t < o.trials; ++t) {
        CounterStream rng(o.seed, stream_id(6, 0, t));
        const std::size_t d = random_dimension(rng, 1, 8);
        const auto z = (t % 2) ? random_tied_vector(rng, d) : random_vector(rng, d, 0.0, 1.0, false);
        for (Parity parity : {Parity::odd, Parity::even}) {
            const auto after = odd_even_pass(z, parity);
            for (std::size_t i = 1; i <= d; ++i)
                bounds.check(inversion_count(after, i) <= inversion_bound_after_pass(z, i, parity),
                             "z=" + format_vector(z) + " i=" + std::to_string(i) +
                                 (parity == Parity::odd ? " odd" : " even"));
        }
    }

    return {monotone.report,     strict.report,    idempotent.report, decomposition.report, invariant_pairs.report,
            improving_pairs.report, disjoint.report, single.report,  rectangle.report,     theta_sort.report,
            pend_sort.report,    conjugation.report, bounds.report};
}

PropertyReport convexity_suite(const SuiteOptions& o) {
    PropertyReport out;
    out.name = "convexity.upper_half_cube";
    for (std::size_t d = 1; d <= 12; ++d) {
        const auto rep = verify_convexity(o.trials, d, o.seed ^ stream_id(7, d, 0));
        out.cases += rep.samples;
        out.failures += rep.failures;
        if (out.counterexample.empty() && rep.counterexample)
            out.counterexample = "p=" + format_vector(rep.counterexample->p) +
                                 " q=" + format_vector(rep.counterexample->q) +
                                 " lambda=" + format_double(rep.counterexample->lambda);
    }
    return out;
}

}  // namespace

std::vector<PropertyReport> run_suite(Suite suite, const SuiteOptions& options) {
    std::vector<PropertyReport> out;
    auto append = [&out](std::vector<PropertyReport> more) { out.insert(out.end(), more.begin(), more.end()); };
    if (suite == Suite::maximizer || suite == Suite::all) out.push_back(maximizer_suite(options));
    if (suite == Suite::windows || suite == Suite::all) append(window_suite(options));
    if (suite == Suite::structure || suite == Suite::all) append(structure_suite(options));
    if (suite == Suite::convexity || suite == Suite::all) out.push_back(convexity_suite(options));
    return out;
}

}  // namespace pendulum

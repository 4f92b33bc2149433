#include "pendulum/optimize.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include "pendulum/arrangements.hpp"
#include "pendulum/enumerate.hpp"
#include "pendulum/error.hpp"
#include "pendulum/escape.hpp"
#include "pendulum/parallel.hpp"
#include "pendulum/rng.hpp"
#include "pendulum/summation.hpp"

namespace pendulum {

namespace {

void require_cap(std::size_t d, std::size_t cap) {
    if (d > cap)
        fail(ErrorKind::size_cap, "exhaustive search is capped at d = " + std::to_string(cap) + " (got d = " +
                                      std::to_string(d) + ")");
}

bool within(double v, double best, double rel_tol) { return std::fabs(v - best) <= rel_tol * std::fabs(best); }

struct Entry {
    double value;
    std::uint64_t order;  // position in lexicographic enumeration within the task
    std::size_t task;
    std::vector<std::size_t> ranks;
};

struct TaskResult {
    bool any = false;
    double best = 0.0;
    std::vector<Entry> ties;
    std::vector<Entry> top;
    std::uint64_t evaluations = 0;
};

ArgmaxReport search(const TransitionVector& p, const SearchOptions& options, bool minimize) {
    require_cap(p.size(), brute_force_cap);
    const ArrangementSpace space(p.values());
    const std::size_t d = space.dimension();

    std::vector<double> odds_of_rank;
    for (double v : space.distinct_values()) odds_of_rank.push_back(v / (1.0 - v));

    // "better" in the search direction; equal values fall back to enumeration order
    auto better = [minimize](double a, double b) { return minimize ? a < b : a > b; };
    auto entry_before = [&](const Entry& a, const Entry& b) {
        if (a.value != b.value) return better(a.value, b.value);
        if (a.task != b.task) return a.task < b.task;
        return a.order < b.order;
    };

    const std::size_t top = options.top;
    std::vector<TaskResult> results(space.task_count());
    parallel_for(space.task_count(), options.threads, [&](std::size_t t) {
        TaskResult& res = results[t];
        std::vector<double> x(d);
        std::uint64_t order = 0;
        space.visit_task(t, [&](std::span<const std::size_t> ranks) {
            for (std::size_t i = 0; i < d; ++i) x[i] = odds_of_rank[ranks[i]];
            const double value = escape_from_odds(x);
            ++res.evaluations;
            const std::uint64_t here = order++;

            if (!res.any || better(value, res.best)) {
                res.best = value;
                res.any = true;
                std::erase_if(res.ties, [&](const Entry& e) { return !within(e.value, value, options.rel_tol); });
            }
            if (within(value, res.best, options.rel_tol))
                res.ties.push_back({value, here, t, {ranks.begin(), ranks.end()}});

            if (top > 0) {
                res.top.push_back({value, here, t, {ranks.begin(), ranks.end()}});
                if (res.top.size() >= 4 * top + 16) {
                    std::sort(res.top.begin(), res.top.end(), entry_before);
                    res.top.resize(top);
                }
            }
        });
    });

    ArgmaxReport report;
    bool any = false;
    for (const auto& res : results) {
        report.evaluations += res.evaluations;
        if (res.any && (!any || better(res.best, report.optimal_value))) {
            report.optimal_value = res.best;
            any = true;
        }
    }
    for (const auto& res : results)
        for (const auto& e : res.ties)
            if (within(e.value, report.optimal_value, options.rel_tol))
                report.optimal_arrangements.push_back(space.materialize(e.ranks));

    if (top > 0) {
        std::vector<Entry> all;
        for (auto& res : results) all.insert(all.end(), res.top.begin(), res.top.end());
        std::sort(all.begin(), all.end(), entry_before);
        if (all.size() > top) all.resize(top);
        for (const auto& e : all) report.ranked.push_back({space.materialize(e.ranks), e.value});
    }
    return report;
}

}  // namespace

ArgmaxReport brute_force_max(const TransitionVector& p, const SearchOptions& options) {
    return search(p, options, false);
}

ArgmaxReport brute_force_min(const TransitionVector& p, const SearchOptions& options) {
    return search(p, options, true);
}

ArrangementSummary summarize_arrangements(const TransitionVector& p, unsigned threads) {
    require_cap(p.size(), brute_force_cap);
    const ArrangementSpace space(p.values());
    const std::size_t d = space.dimension();
    std::vector<double> odds_of_rank;
    for (double v : space.distinct_values()) odds_of_rank.push_back(v / (1.0 - v));

    struct Part {
        double min = 0.0, max = 0.0;
        CompensatedSum sum;
        std::uint64_t count = 0;
    };
    std::vector<Part> parts(space.task_count());
    parallel_for(space.task_count(), threads, [&](std::size_t t) {
        Part& part = parts[t];
        std::vector<double> x(d);
        space.visit_task(t, [&](std::span<const std::size_t> ranks) {
            for (std::size_t i = 0; i < d; ++i) x[i] = odds_of_rank[ranks[i]];
            const double value = escape_from_odds(x);
            if (part.count == 0 || value < part.min) part.min = value;
            if (part.count == 0 || value > part.max) part.max = value;
            part.sum += value;
            ++part.count;
        });
    });

    ArrangementSummary summary;
    CompensatedSum sum;
    for (const auto& part : parts) {
        if (summary.arrangements == 0 || part.min < summary.min) summary.min = part.min;
        if (summary.arrangements == 0 || part.max > summary.max) summary.max = part.max;
        sum += part.sum.value();
        summary.arrangements += part.count;
    }
    summary.mean = sum.value() / static_cast<double>(summary.arrangements);
    return summary;
}

bool verify_unique_maximizer(const TransitionVector& p, unsigned threads) {
    require_cap(p.size(), brute_force_cap);
    for (double v : p.values())
        if (!(v > 0.0)) fail(ErrorKind::invalid_argument, "uniqueness check needs strictly positive entries");
    if (!pairwise_distinct(p.values()))
        fail(ErrorKind::invalid_argument, "uniqueness check needs pairwise distinct entries");

    SearchOptions options;
    options.threads = threads;
    const auto report = brute_force_max(p, options);
    const auto pend = pendulum_arrangement(p.values());
    const std::set<std::vector<double>> expected{pend, mirror(pend)};
    const std::set<std::vector<double>> found(report.optimal_arrangements.begin(), report.optimal_arrangements.end());
    return found == expected && found.size() == report.optimal_arrangements.size();
}

WindowOptimality check_window_optimality(const OddsVector& x, double rel_tol) {
    require_cap(x.size(), window_check_cap);
    if (!x.strictly_positive()) fail(ErrorKind::invalid_argument, "window optimality needs strictly positive entries");
    const std::size_t d = x.size();

    const ArrangementSpace space(x.values());
    std::vector<std::vector<double>> arrangements;
    std::vector<std::vector<double>> values;  // values[k][m-1] = J_m
    for (std::size_t t = 0; t < space.task_count(); ++t) {
        space.visit_task(t, [&](std::span<const std::size_t> ranks) {
            arrangements.push_back(space.materialize(ranks));
            values.push_back(values_J(arrangements.back()));
        });
    }

    std::vector<double> best(d, 0.0);
    for (const auto& v : values)
        for (std::size_t m = 0; m < d; ++m) best[m] = std::max(best[m], v[m]);
    auto attains = [&](double v, std::size_t m) { return v >= best[m] - rel_tol * best[m]; };

    WindowOptimality out;
    out.arrangements = arrangements.size();

    const auto pend = pendulum_arrangement(x.values());
    const auto pend_values = values_J(pend);
    out.sufficiency = true;
    for (std::size_t m = 0; m < d; ++m) out.sufficiency = out.sufficiency && attains(pend_values[m], m);

    if (pairwise_distinct(x.values())) {
        std::set<std::vector<double>> maximizers;
        for (std::size_t k = 0; k < arrangements.size(); ++k) {
            bool all = true;
            for (std::size_t m = 0; m < d && all; ++m) all = attains(values[k][m], m);
            if (all) maximizers.insert(arrangements[k]);
        }
        out.necessity = maximizers == std::set<std::vector<double>>{pend, mirror(pend)};
    }
    return out;
}

bool verify_window_optimality(const OddsVector& x) { return check_window_optimality(x).holds(); }

void BudgetConstraint::validate() const {
    if (d == 0) fail(ErrorKind::invalid_dimension, "budget dimension must be at least 1");
    if (!std::isfinite(a) || a < 0.0 || a >= 1.0) fail(ErrorKind::domain, "budget cap a must lie in [0, 1)");
    if (!std::isfinite(b) || b < 0.0) fail(ErrorKind::domain, "budget b must be finite and nonnegative");
}

BudgetSolution budget_optimal(const BudgetConstraint& c) {
    c.validate();
    const std::size_t d = c.d;
    if (c.a == 0.0) {
        BudgetSolution out{TransitionVector(std::vector<double>(d, 0.0)), false, {}};
        if (c.b > 0.0) {
            out.infeasible = true;
            out.note = "cap a = 0 admits only the zero vector; budget b is unusable";
        }
        return out;
    }
    if (c.b >= static_cast<double>(d) * c.a) return {TransitionVector(std::vector<double>(d, c.a)), false, {}};

    const auto full = static_cast<std::size_t>(std::floor(c.b / c.a));
    double remainder = c.b - static_cast<double>(full) * c.a;
    if (remainder < 1e-12 * c.a) remainder = 0.0;
    std::vector<double> p(d, 0.0);
    for (std::size_t i = 0; i < full && i < d; ++i) p[i] = c.a;
    if (full < d) p[full] = std::min(remainder, c.a);
    return {pendulum_arrangement(TransitionVector(std::move(p))), false, {}};
}

std::vector<TransitionVector> budget_extreme_points(const BudgetConstraint& c) {
    c.validate();
    require_cap(c.d, 16);
    const std::size_t d = c.d;
    std::set<std::vector<double>> points;
    for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
        const auto caps = static_cast<std::size_t>(std::popcount(mask));
        const double used = static_cast<double>(caps) * c.a;
        if (used > c.b * (1.0 + 1e-12) && caps > 0 && c.a > 0.0) continue;
        std::vector<double> p(d, 0.0);
        for (std::size_t i = 0; i < d; ++i)
            if (mask & (1u << i)) p[i] = c.a;
        points.insert(p);
        const double leftover = c.b - used;
        if (leftover > 0.0 && leftover < c.a) {
            for (std::size_t j = 0; j < d; ++j) {
                if (mask & (1u << j)) continue;
                auto q = p;
                q[j] = leftover;
                points.insert(std::move(q));
            }
        }
    }
    std::vector<TransitionVector> out;
    for (const auto& p : points) out.emplace_back(p);
    return out;
}

CandidateChoice best_pendulum_candidate(std::span<const TransitionVector> candidates) {
    if (candidates.empty()) fail(ErrorKind::invalid_argument, "no candidate extreme points supplied");
    std::optional<CandidateChoice> best;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        auto pend = pendulum_arrangement(candidates[k]);
        const double value = expected_escape_closed_form(pend);
        if (!best || value > best->value) best = CandidateChoice{std::move(pend), value, k};
    }
    return *best;
}

ConvexitySample convexity_sample(const TransitionVector& p, const TransitionVector& q, double lambda) {
    if (p.size() != q.size()) fail(ErrorKind::invalid_dimension, "convexity pair has mismatched dimensions");
    if (!(lambda >= 0.0 && lambda <= 1.0)) fail(ErrorKind::invalid_argument, "lambda must lie in [0, 1]");
    std::vector<double> mix(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) mix[i] = lambda * p[i] + (1.0 - lambda) * q[i];
    ConvexitySample s;
    s.p = p.vec();
    s.q = q.vec();
    s.lambda = lambda;
    s.lhs = expected_escape_closed_form(TransitionVector(std::move(mix)));
    s.rhs = lambda * expected_escape_closed_form(p) + (1.0 - lambda) * expected_escape_closed_form(q);
    return s;
}

ConvexityReport verify_convexity(std::size_t samples, std::size_t d, std::uint64_t seed, double rel_tol) {
    if (d == 0) fail(ErrorKind::invalid_dimension, "dimension must be at least 1");
    require_cap(d, 12);
    ConvexityReport report;
    for (std::size_t s = 0; s < samples; ++s) {
        CounterStream rng(seed, s);
        std::vector<double> p(d), q(d);
        for (auto& v : p) v = rng.uniform(0.5, 0.95);
        for (auto& v : q) v = rng.uniform(0.5, 0.95);
        double lambda = rng.uniform();
        while (lambda == 0.0) lambda = rng.uniform();
        auto sample = convexity_sample(TransitionVector(p), TransitionVector(q), lambda);
        ++report.samples;
        if (!(sample.lhs <= sample.rhs + rel_tol * sample.rhs)) {
            ++report.failures;
            if (!report.counterexample) report.counterexample = std::move(sample);
        }
    }
    report.passed = report.failures == 0;
    return report;
}

}  // namespace pendulum

#include "pendulum/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "pendulum/arrangements.hpp"
#include "pendulum/error.hpp"
#include "pendulum/escape.hpp"
#include "pendulum/format.hpp"
#include "pendulum/optimize.hpp"
#include "pendulum/parallel.hpp"
#include "pendulum/rng.hpp"
#include "pendulum/summation.hpp"
#include "pendulum/verify.hpp"

namespace pendulum {

namespace {

constexpr double tie_tol = 1e-12;
constexpr std::uint64_t permutation_stream_tag = std::uint64_t{1} << 63;

std::uint64_t stream_of(std::size_t point, std::size_t instantiation) {
    return (static_cast<std::uint64_t>(point) << 32) | static_cast<std::uint64_t>(instantiation);
}

std::optional<double> linear_from_log10(double log10_value) {
    if (!(log10_value < std::log10(std::numeric_limits<double>::max()))) return std::nullopt;
    return std::pow(10.0, log10_value);
}

double log_sum_exp(std::span<const double> v) {
    const double top = *std::max_element(v.begin(), v.end());
    if (!std::isfinite(top)) return top;
    CompensatedSum acc;
    for (double x : v) acc += std::exp(x - top);
    return top + std::log(acc.value());
}

struct Cell {
    double log10_value;
    std::optional<double> linear;
};

Cell from_linear(double v) { return {std::log10(v), v}; }
Cell from_log10(double l) { return {l, linear_from_log10(l)}; }

void summarize(SweepResult& result, const std::string& experiment, const std::vector<std::size_t>& dims,
               const std::vector<std::optional<double>>& xs, const std::vector<Arrangement>& arrangements,
               const std::vector<std::vector<std::vector<Cell>>>& cells, double lo, double hi, std::uint64_t seed,
               bool variance_sweep) {
    // cells[point][instantiation][arrangement]
    for (std::size_t pt = 0; pt < cells.size(); ++pt) {
        const std::size_t n = cells[pt].size();
        for (std::size_t a = 0; a < arrangements.size(); ++a) {
            CompensatedSum sum_log, sum_lin;
            bool linear_ok = true;
            for (const auto& inst : cells[pt]) {
                sum_log += inst[a].log10_value;
                if (inst[a].linear)
                    sum_lin += *inst[a].linear;
                else
                    linear_ok = false;
            }
            const double mean = sum_log.value() / static_cast<double>(n);
            CompensatedSum sq;
            for (const auto& inst : cells[pt]) sq += (inst[a].log10_value - mean) * (inst[a].log10_value - mean);
            const double var = n > 1 ? sq.value() / static_cast<double>(n - 1) : 0.0;

            SweepPointSummary s;
            s.d = dims[pt];
            s.x = xs[pt];
            s.arrangement = arrangements[a];
            s.mean_log10 = mean;
            s.stderr_log10 = std::sqrt(var / static_cast<double>(n));
            s.instantiations = n;
            result.summaries.push_back(s);

            ExperimentRecord r;
            r.experiment = experiment + "_mean";
            r.d = dims[pt];
            r.lo = variance_sweep ? 0.5 - *xs[pt] : lo;
            r.hi = variance_sweep ? 0.5 + *xs[pt] : hi;
            r.x = xs[pt];
            r.arrangement = arrangements[a];
            r.log10_escape = mean;
            if (linear_ok) r.escape = sum_lin.value() / static_cast<double>(n);
            r.seed = seed;
            result.records.push_back(r);
        }
    }
}

}  // namespace

void EnvironmentSpec::validate() const {
    if (d == 0) fail(ErrorKind::invalid_dimension, "environment dimension must be at least 1");
    if (instantiations == 0) fail(ErrorKind::invalid_argument, "instantiations must be at least 1");
    if (!(lo >= 0.0 && lo <= hi && hi < 1.0))
        fail(ErrorKind::domain, "environment bounds need 0 <= lo <= hi < 1 (got lo = " + format_double(lo) +
                                    ", hi = " + format_double(hi) + ")");
}

TransitionVector sample_environment(const EnvironmentSpec& env, std::size_t point, std::size_t instantiation) {
    env.validate();
    CounterStream rng(env.seed, stream_of(point, instantiation));
    std::vector<double> p(env.d);
    for (auto& v : p) v = std::min(rng.uniform(env.lo, env.hi), env.hi);
    return TransitionVector(std::move(p));
}

const char* arrangement_name(Arrangement a) {
    switch (a) {
        case Arrangement::maximal: return "maximal";
        case Arrangement::minimal: return "minimal";
        case Arrangement::sorted: return "sorted";
        case Arrangement::random: return "random";
        case Arrangement::identity: return "identity";
    }
    return "unknown";
}

double exact_random_arrangement_mean(const TransitionVector& p) {
    if (p.size() > 8) fail(ErrorKind::size_cap, "exact random-arrangement mean is capped at d = 8");
    return summarize_arrangements(p, 1).mean;
}

double sampled_random_arrangement_log10(const TransitionVector& p, std::size_t samples, std::uint64_t seed,
                                        std::uint64_t stream) {
    if (samples == 0) fail(ErrorKind::invalid_argument, "perm_samples must be at least 1");
    CounterStream rng(seed, stream);
    std::vector<double> v = p.vec();
    std::vector<double> logs(samples);
    for (std::size_t s = 0; s < samples; ++s) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
        logs[s] = log_expected_escape(TransitionVector(v));
    }
    return (log_sum_exp(logs) - std::log(static_cast<double>(samples))) / std::log(10.0);
}

SweepResult run_variance_sweep(const std::vector<double>& x_values, std::size_t d, std::size_t instantiations,
                               std::uint64_t seed, const SweepOptions& options) {
    if (x_values.empty()) fail(ErrorKind::invalid_argument, "variance sweep needs at least one x value");
    if (d > brute_force_cap)
        fail(ErrorKind::size_cap, "variance sweep needs the exhaustive minimum, capped at d = " +
                                      std::to_string(brute_force_cap));
    for (double x : x_values)
        if (!(x >= 0.0 && x < 0.5)) fail(ErrorKind::domain, "spread x must lie in [0, 0.5), got " + format_double(x));

    const std::vector<Arrangement> arrangements{Arrangement::maximal, Arrangement::minimal, Arrangement::sorted,
                                                Arrangement::random};
    const std::size_t points = x_values.size();
    std::vector<std::vector<std::vector<Cell>>> cells(points, std::vector<std::vector<Cell>>(instantiations));
    std::vector<char> chain_ok(points * instantiations, 1), dominance_ok(points * instantiations, 1);

    parallel_for(points * instantiations, options.threads, [&](std::size_t task) {
        const std::size_t pt = task / instantiations;
        const std::size_t inst = task % instantiations;
        const double x = x_values[pt];
        EnvironmentSpec env{d, 0.5 - x, 0.5 + x, instantiations, seed};
        const auto p = sample_environment(env, pt, inst);

        const double maximal = expected_escape_closed_form(pendulum_arrangement(p));
        const double sorted = expected_escape_closed_form(TransitionVector(sorted_ascending(p.values())));
        const auto summary = summarize_arrangements(p, 1);
        Cell random_cell;
        double random_linear;
        if (d <= options.exact_random_cap) {
            random_linear = summary.mean;
            random_cell = from_linear(summary.mean);
        } else {
            const double l = sampled_random_arrangement_log10(p, options.perm_samples, seed,
                                                              permutation_stream_tag | stream_of(pt, inst));
            random_cell = from_log10(l);
            random_linear = std::pow(10.0, l);
        }
        cells[pt][inst] = {from_linear(maximal), from_linear(summary.min), from_linear(sorted), random_cell};

        const auto slack = [](double v) { return v * (1.0 - tie_tol); };
        dominance_ok[task] = maximal >= slack(summary.max) && maximal >= slack(sorted) &&
                             maximal >= slack(random_linear) && maximal >= slack(summary.min);
        chain_ok[task] = sorted >= slack(random_linear) && random_linear >= slack(summary.min);
    });

    SweepResult result;
    std::vector<std::size_t> dims(points, d);
    std::vector<std::optional<double>> xs(x_values.begin(), x_values.end());
    for (std::size_t pt = 0; pt < points; ++pt) {
        for (std::size_t inst = 0; inst < instantiations; ++inst) {
            for (std::size_t a = 0; a < arrangements.size(); ++a) {
                ExperimentRecord r;
                r.experiment = "variance_sweep";
                r.d = d;
                r.lo = 0.5 - x_values[pt];
                r.hi = 0.5 + x_values[pt];
                r.x = x_values[pt];
                r.instantiation = inst;
                r.arrangement = arrangements[a];
                r.log10_escape = cells[pt][inst][a].log10_value;
                r.escape = cells[pt][inst][a].linear;
                r.seed = seed;
                result.records.push_back(std::move(r));
            }
            const std::size_t task = pt * instantiations + inst;
            if (!chain_ok[task]) ++result.chain_violations;
            if (!dominance_ok[task]) ++result.dominance_violations;
        }
    }
    summarize(result, "variance_sweep", dims, xs, arrangements, cells, 0.0, 0.0, seed, true);
    return result;
}

SweepResult run_d_sweep(const std::vector<std::size_t>& d_values, double lo, double hi, std::size_t instantiations,
                        std::uint64_t seed, const SweepOptions& options) {
    if (d_values.empty()) fail(ErrorKind::invalid_argument, "d sweep needs at least one d value");
    for (std::size_t d : d_values) EnvironmentSpec{d, lo, hi, instantiations, seed}.validate();

    const std::vector<Arrangement> arrangements{Arrangement::maximal, Arrangement::sorted, Arrangement::random};
    const std::size_t points = d_values.size();
    std::vector<std::vector<std::vector<Cell>>> cells(points, std::vector<std::vector<Cell>>(instantiations));
    std::vector<char> dominance_ok(points * instantiations, 1);

    parallel_for(points * instantiations, options.threads, [&](std::size_t task) {
        const std::size_t pt = task / instantiations;
        const std::size_t inst = task % instantiations;
        EnvironmentSpec env{d_values[pt], lo, hi, instantiations, seed};
        const auto p = sample_environment(env, pt, inst);
        const double maximal = log10_expected_escape(pendulum_arrangement(p));
        const double sorted = log10_expected_escape(TransitionVector(sorted_ascending(p.values())));
        const double random = sampled_random_arrangement_log10(p, options.perm_samples, seed,
                                                               permutation_stream_tag | stream_of(pt, inst));
        cells[pt][inst] = {from_log10(maximal), from_log10(sorted), from_log10(random)};
        // log10 slack equivalent to the relative tie tolerance
        const double slack = tie_tol / std::log(10.0);
        dominance_ok[task] = maximal >= sorted - slack && maximal >= random - slack;
    });

    SweepResult result;
    std::vector<std::optional<double>> xs(points);
    for (std::size_t pt = 0; pt < points; ++pt) {
        for (std::size_t inst = 0; inst < instantiations; ++inst) {
            for (std::size_t a = 0; a < arrangements.size(); ++a) {
                ExperimentRecord r;
                r.experiment = "d_sweep";
                r.d = d_values[pt];
                r.lo = lo;
                r.hi = hi;
                r.instantiation = inst;
                r.arrangement = arrangements[a];
                r.log10_escape = cells[pt][inst][a].log10_value;
                r.escape = cells[pt][inst][a].linear;
                r.seed = seed;
                result.records.push_back(std::move(r));
            }
            if (!dominance_ok[pt * instantiations + inst]) ++result.dominance_violations;
        }
    }
    summarize(result, "d_sweep", d_values, xs, arrangements, cells, lo, hi, seed, false);

    for (std::size_t pt = 0; pt < points && !result.crossover_d; ++pt) {
        double max_mean = 0.0, random_mean = 0.0;
        for (const auto& s : result.summaries) {
            if (s.d != d_values[pt]) continue;
            if (s.arrangement == Arrangement::maximal) max_mean = s.mean_log10;
            if (s.arrangement == Arrangement::random) random_mean = s.mean_log10;
        }
        if (max_mean - random_mean > options.crossover_log10) result.crossover_d = d_values[pt];
    }
    return result;
}

void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records) {
    out << csv_header << '\n';
    for (const auto& r : records) {
        out << r.experiment << ',' << r.d << ',' << format_double(r.lo) << ',' << format_double(r.hi) << ','
            << (r.x ? format_double(*r.x) : "") << ',' << (r.instantiation ? std::to_string(*r.instantiation) : "")
            << ',' << arrangement_name(r.arrangement) << ',' << format_double(r.log10_escape) << ','
            << (r.escape ? format_double(*r.escape) : "null") << ',' << r.seed << '\n';
    }
}

void write_json(std::ostream& out, const std::vector<ExperimentRecord>& records, const SweepResult& result) {
    nlohmann::ordered_json doc;
    doc["metadata"] = {{"log_base", 10}, {"rng", Philox4x32::name}};
    auto& rows = doc["records"] = nlohmann::ordered_json::array();
    for (const auto& r : records) {
        nlohmann::ordered_json row;
        row["experiment"] = r.experiment;
        row["d"] = r.d;
        row["lo"] = r.lo;
        row["hi"] = r.hi;
        row["x"] = r.x ? nlohmann::ordered_json(*r.x) : nlohmann::ordered_json(nullptr);
        row["instantiation"] =
            r.instantiation ? nlohmann::ordered_json(*r.instantiation) : nlohmann::ordered_json(nullptr);
        row["arrangement"] = arrangement_name(r.arrangement);
        row["log10_escape"] = r.log10_escape;
        row["escape_or_null"] = r.escape ? nlohmann::ordered_json(*r.escape) : nlohmann::ordered_json(nullptr);
        row["seed"] = r.seed;
        rows.push_back(std::move(row));
    }
    doc["chain_violations"] = result.chain_violations;
    doc["dominance_violations"] = result.dominance_violations;
    doc["crossover_d"] = result.crossover_d ? nlohmann::ordered_json(*result.crossover_d) : nlohmann::ordered_json(nullptr);
    out << doc.dump(2) << '\n';
}

void write_file_atomically(const std::filesystem::path& path, const std::string& contents) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) fail(ErrorKind::invalid_argument, "cannot open " + tmp.string() + " for writing");
        f << contents;
        f.flush();
        if (!f) {
            f.close();
            std::filesystem::remove(tmp);
            fail(ErrorKind::invalid_argument, "failed writing " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

ExperimentConfig parse_experiment_config(const std::string& json_text) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::invalid_argument, std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("sweeps") || !doc["sweeps"].is_array())
        fail(ErrorKind::invalid_argument, "config needs a \"sweeps\" array");
    if (doc["sweeps"].empty()) fail(ErrorKind::invalid_argument, "config has an empty sweep list");

    ExperimentConfig config;
    try {
        for (const auto& s : doc["sweeps"]) {
            SweepConfig sc;
            const auto kind = s.at("experiment").get<std::string>();
            if (kind == "variance_sweep")
                sc.kind = SweepKind::variance;
            else if (kind == "d_sweep")
                sc.kind = SweepKind::d;
            else
                fail(ErrorKind::invalid_argument, "unknown experiment \"" + kind + "\"");
            sc.output = s.at("output").get<std::string>();
            sc.instantiations = s.value("instantiations", sc.instantiations);
            sc.perm_samples = s.value("perm_samples", sc.perm_samples);
            sc.seed = s.value("seed", default_seed);
            sc.crossover_log10 = s.value("crossover_log10", sc.crossover_log10);
            if (sc.kind == SweepKind::variance) {
                sc.d = s.value("d", sc.d);
                sc.x_values = s.at("x_values").get<std::vector<double>>();
                if (sc.x_values.empty()) fail(ErrorKind::invalid_argument, "empty x_values grid");
            } else {
                sc.d_values = s.at("d_values").get<std::vector<std::size_t>>();
                sc.lo = s.at("lo").get<double>();
                sc.hi = s.at("hi").get<double>();
                if (sc.d_values.empty()) fail(ErrorKind::invalid_argument, "empty d_values grid");
            }
            if (sc.output.empty()) fail(ErrorKind::invalid_argument, "sweep output name is empty");
            if (sc.instantiations == 0) fail(ErrorKind::invalid_argument, "instantiations must be at least 1");
            if (sc.perm_samples == 0) fail(ErrorKind::invalid_argument, "perm_samples must be at least 1");
            config.sweeps.push_back(std::move(sc));
        }
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::invalid_argument, std::string("malformed sweep entry: ") + e.what());
    }
    return config;
}

void apply_full_scale(ExperimentConfig& config) {
    for (auto& s : config.sweeps) {
        s.instantiations = 1000;
        s.perm_samples = 1000;
    }
}

SweepResult run_sweep(const SweepConfig& sweep, unsigned threads) {
    SweepOptions options;
    options.perm_samples = sweep.perm_samples;
    options.crossover_log10 = sweep.crossover_log10;
    options.threads = threads;
    if (sweep.kind == SweepKind::variance)
        return run_variance_sweep(sweep.x_values, sweep.d, sweep.instantiations, sweep.seed, options);
    return run_d_sweep(sweep.d_values, sweep.lo, sweep.hi, sweep.instantiations, sweep.seed, options);
}

}  // namespace pendulum

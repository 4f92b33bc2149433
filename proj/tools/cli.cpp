#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "pendulum/arrangements.hpp"
#include "pendulum/error.hpp"
#include "pendulum/escape.hpp"
#include "pendulum/experiments.hpp"
#include "pendulum/format.hpp"
#include "pendulum/optimize.hpp"
#include "pendulum/simulate.hpp"
#include "pendulum/verify.hpp"

namespace pendulum::cli {

namespace {

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::invalid_argument: return exit_usage;
        case ErrorKind::size_cap: return exit_size_cap;
        case ErrorKind::invalid_dimension:
        case ErrorKind::domain:
        case ErrorKind::step_guard: return exit_domain;
    }
    return exit_domain;
}

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<double> parse_or_usage(const std::string& text) {
    try {
        return parse_vector(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

struct EscapeArgs {
    std::string p;
    std::string method = "closed";
    std::uint64_t trials = 100000;
    std::uint64_t seed = default_seed;
    std::uint64_t max_steps = 0;
};

int cmd_escape(const EscapeArgs& a, unsigned threads, std::ostream& out) {
    const TransitionVector p(parse_or_usage(a.p));
    SimulationOptions sim;
    sim.threads = threads;
    if (a.max_steps) sim.max_steps = a.max_steps;

    if (a.method == "closed") {
        out << format_double(expected_escape_closed_form(p)) << '\n';
    } else if (a.method == "linear") {
        out << format_double(expected_escape_linear_system(p)) << '\n';
    } else if (a.method == "simulate") {
        const auto est = estimate_escape(p, a.trials, a.seed, sim);
        out << "mean " << format_double(est.mean) << " std_error " << format_double(est.std_error) << " trials "
            << est.trials << " rng " << est.rng << '\n'
            << "seed: " << est.seed << '\n';
    } else {
        const double closed = expected_escape_closed_form(p);
        const double linear = expected_escape_linear_system(p);
        const auto est = estimate_escape(p, a.trials, a.seed, sim);
        out << "closed " << format_double(closed) << '\n'
            << "linear " << format_double(linear) << '\n'
            << "simulate " << format_double(est.mean) << "±" << format_double(est.std_error) << " (trials "
            << est.trials << ", rng " << est.rng << ")\n"
            << "closed-linear " << format_double(std::fabs(closed - linear)) << '\n'
            << "simulate-closed " << format_double(std::fabs(est.mean - closed));
        if (est.std_error > 0) out << " (" << format_double(std::fabs(est.mean - closed) / est.std_error) << " std errors)";
        out << '\n' << "seed: " << est.seed << '\n';
    }
    return exit_ok;
}

int cmd_arrange(const std::string& text, const std::string& mode, std::ostream& out) {
    const auto values = parse_or_usage(text);
    if (mode == "check") {
        for (double v : values)
            if (!std::isfinite(v)) throw Error(ErrorKind::domain, "entries must be finite");
        out << (is_pendulum(values) ? "true" : "false") << '\n';
        return exit_ok;
    }
    const TransitionVector p(values);
    std::vector<double> arranged;
    if (mode == "pendulum")
        arranged = pendulum_arrangement(p.values());
    else if (mode == "mirror-pendulum")
        arranged = mirror(pendulum_arrangement(p.values()));
    else
        arranged = sorted_ascending(p.values());
    out << format_vector(arranged) << '\n'
        << "escape_time " << format_double(expected_escape_closed_form(TransitionVector(arranged))) << '\n';
    return exit_ok;
}

int cmd_brute(const std::string& text, const std::string& direction, std::size_t top, unsigned threads,
              std::ostream& out) {
    const TransitionVector p(parse_or_usage(text));
    SearchOptions options;
    options.top = top;
    options.threads = threads;
    const bool maximize = direction == "max";
    const auto report = maximize ? brute_force_max(p, options) : brute_force_min(p, options);

    for (std::size_t k = 0; k < report.ranked.size(); ++k)
        out << (k + 1) << ' ' << format_double(report.ranked[k].value) << ' '
            << format_vector(report.ranked[k].arrangement) << '\n';
    out << "optimal_value " << format_double(report.optimal_value) << '\n' << "optimal_set {";
    for (std::size_t k = 0; k < report.optimal_arrangements.size(); ++k)
        out << (k ? "," : "") << format_vector(report.optimal_arrangements[k]);
    out << "}\n" << "evaluations " << report.evaluations << '\n';

    if (!maximize) return exit_ok;
    const auto pend = pendulum_arrangement(p.values());
    const std::set<std::vector<double>> expected{pend, mirror(pend)};
    const std::set<std::vector<double>> found(report.optimal_arrangements.begin(), report.optimal_arrangements.end());
    const bool match = found == expected;
    const bool uniqueness_regime =
        pairwise_distinct(p.values()) && std::all_of(p.values().begin(), p.values().end(), [](double v) { return v > 0; });
    out << "pendulum_pair " << (match ? "match" : "mismatch");
    if (!uniqueness_regime) out << " (entries not strictly positive and distinct; uniqueness not claimed)";
    out << '\n';
    return (match || !uniqueness_regime) ? exit_ok : exit_property_failure;
}

struct ExperimentArgs {
    std::string config;
    std::string out_dir = ".";
    std::string format = "csv";
    bool full_scale = false;
};

int cmd_experiment(const ExperimentArgs& a, unsigned threads, std::ostream& out) {
    std::ifstream in(a.config);
    if (!in) throw UsageError("cannot read config " + a.config);
    std::stringstream buf;
    buf << in.rdbuf();
    auto config = parse_experiment_config(buf.str());
    if (a.full_scale) apply_full_scale(config);

    // Run everything first so a failing sweep leaves no partial output set.
    std::vector<std::pair<std::filesystem::path, std::string>> files;
    for (const auto& sweep : config.sweeps) {
        const auto result = run_sweep(sweep, threads);
        std::ostringstream body;
        std::filesystem::path path = std::filesystem::path(a.out_dir) / sweep.output;
        if (a.format == "json") {
            path.replace_extension(".json");
            write_json(body, result.records, result);
        } else {
            write_csv(body, result.records);
        }
        files.emplace_back(path, body.str());

        const char* name = sweep.kind == SweepKind::variance ? "variance_sweep" : "d_sweep";
        for (const auto& s : result.summaries) {
            out << name << " d=" << s.d;
            if (s.x) out << " x=" << format_double(*s.x);
            out << ' ' << arrangement_name(s.arrangement) << " mean_log10=" << format_double(s.mean_log10)
                << " stderr=" << format_double(s.stderr_log10) << " n=" << s.instantiations << '\n';
        }
        if (sweep.kind == SweepKind::variance) out << name << " chain_violations=" << result.chain_violations << '\n';
        out << name << " dominance_violations=" << result.dominance_violations << '\n';
        if (sweep.kind == SweepKind::d)
            out << name << " crossover_d=" << (result.crossover_d ? std::to_string(*result.crossover_d) : "none")
                << '\n';
        out << name << " seed: " << sweep.seed << " -> " << path.string() << '\n';
    }
    std::filesystem::create_directories(a.out_dir);
    for (const auto& [path, contents] : files) write_file_atomically(path, contents);
    return exit_ok;
}

// Budget entries come out of b - k a, which drags binary noise from the
// decimal inputs (1.2 - 2 * 0.5 = 0.19999999999999996). 15 significant
// digits is the most a decimal survives a round trip through a double.
std::string budget_vector(std::span<const double> v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        char buf[32];
        const auto res = std::to_chars(buf, buf + sizeof(buf), v[i], std::chars_format::general, 15);
        s.append(i ? "," : "").append(buf, res.ptr);
    }
    return s + ")";
}

int cmd_budget(double a, double b, std::size_t d, std::ostream& out) {
    const auto sol = budget_optimal(BudgetConstraint{a, b, d});
    out << budget_vector(sol.p.values()) << '\n'
        << "escape_time " << format_double(expected_escape_closed_form(sol.p)) << '\n';
    if (sol.infeasible) out << "note: " << sol.note << '\n';
    return exit_ok;
}

int cmd_verify(const std::string& suite_name, const SuiteOptions& options, std::ostream& out) {
    static const std::map<std::string, Suite> suites{{"theorem1", Suite::maximizer}, {"theorem3", Suite::windows},
                                                     {"lemmas", Suite::structure},     {"convexity", Suite::convexity},
                                                     {"all", Suite::all}};
    const auto reports = run_suite(suites.at(suite_name), options);
    bool ok = true;
    for (const auto& r : reports) {
        out << (r.passed() ? "PASS " : "FAIL ") << r.name << " cases=" << r.cases;
        if (!r.passed()) out << " failures=" << r.failures << " counterexample: " << r.counterexample;
        out << '\n';
        ok = ok && r.passed();
    }
    out << "seed: " << options.seed << '\n';
    return ok ? exit_ok : exit_property_failure;
}

}  // namespace

std::vector<double> parse_vector(const std::string& text) {
    std::vector<double> out;
    std::string token;
    auto flush = [&](bool last) {
        if (token.empty()) {
            if (last && out.empty()) throw std::invalid_argument("empty vector");
            throw std::invalid_argument("empty entry in vector \"" + text + "\"");
        }
        double v = 0.0;
        const char* end = token.data() + token.size();
        const auto res = std::from_chars(token.data(), end, v);
        if (res.ec != std::errc() || res.ptr != end || !std::isfinite(v))
            throw std::invalid_argument("cannot parse \"" + token + "\" as a number");
        out.push_back(v);
        token.clear();
    };
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c == ',')
            flush(false);
        else
            token += c;
    }
    flush(true);
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Hooks& hooks) {
    CLI::App app{"Escape times of heterogeneous random walks and the pendulum arrangement", "pendulum_cli"};
    app.require_subcommand(1);
    unsigned threads = 0;
    app.add_option("--threads", threads, "Worker threads (0 = all cores); output does not depend on it");
    app.fallthrough();

    EscapeArgs escape;
    auto* esc = app.add_subcommand("escape", "Expected escape time of the walk");
    esc->add_option("--p", escape.p, "Transition probabilities, comma separated")->required();
    esc->add_option("--method", escape.method)->check(CLI::IsMember({"closed", "linear", "simulate", "all"}));
    esc->add_option("--trials", escape.trials, "Monte-Carlo trials")->check(CLI::PositiveNumber);
    esc->add_option("--seed", escape.seed);
    esc->add_option("--max-steps", escape.max_steps, "Per-walk step cutoff (default 1e4 x closed form)");

    std::string arrange_p, arrange_mode = "pendulum";
    auto* arr = app.add_subcommand("arrange", "Pendulum, mirror-pendulum or sorted arrangement");
    arr->add_option("--p", arrange_p)->required();
    arr->add_option("--mode", arrange_mode)->check(CLI::IsMember({"pendulum", "mirror-pendulum", "sorted", "check"}));

    std::string brute_p, direction = "max";
    std::size_t top = 10;
    auto* bru = app.add_subcommand("brute", "Exhaustive search over all arrangements");
    bru->add_option("--p", brute_p)->required();
    bru->add_option("--direction", direction)->check(CLI::IsMember({"max", "min"}));
    bru->add_option("--top", top);

    ExperimentArgs experiment;
    auto* exp = app.add_subcommand("experiment", "Random-environment sweeps from a JSON config");
    exp->add_option("--config", experiment.config)->required();
    exp->add_option("--out-dir", experiment.out_dir);
    exp->add_option("--format", experiment.format)->check(CLI::IsMember({"csv", "json"}));
    exp->add_flag("--full-scale", experiment.full_scale, "1000 instantiations and permutation samples");

    double budget_a = 0.0, budget_b = 0.0;
    std::size_t budget_d = 1;
    auto* bud = app.add_subcommand("budget", "Optimal vector under the linear budget constraint");
    bud->add_option("--a", budget_a, "Per-entry cap in [0, 1)")->required();
    bud->add_option("--b", budget_b, "Total budget")->required();
    bud->add_option("--d", budget_d, "Dimension")->required();

    std::string suite = "all";
    SuiteOptions verify_options;
    auto* ver = app.add_subcommand("verify", "Run the property suites");
    ver->add_option("--suite", suite)->check(CLI::IsMember({"theorem1", "theorem3", "lemmas", "convexity", "all"}));
    ver->add_option("--trials", verify_options.trials)->check(CLI::PositiveNumber);
    ver->add_option("--seed", verify_options.seed);
    if (hooks.allow_fault_injection) ver->add_flag("--inject-fault", verify_options.inject_fault);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }

    try {
        if (*esc) return cmd_escape(escape, threads, out);
        if (*arr) return cmd_arrange(arrange_p, arrange_mode, out);
        if (*bru) return cmd_brute(brute_p, direction, top, threads, out);
        if (*exp) return cmd_experiment(experiment, threads, out);
        if (*bud) return cmd_budget(budget_a, budget_b, budget_d, out);
        verify_options.threads = threads;
        return cmd_verify(suite, verify_options, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
}

}  // namespace pendulum::cli

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using pendulum::cli::Hooks;
using pendulum::cli::run;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(const std::vector<std::string>& args, Hooks hooks = {}) {
    std::ostringstream out, err;
    const int code = run(args, out, err, hooks);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

bool contains(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("escape") {
    auto r = call({"escape", "--p", "0.5,0.5", "--method", "closed"});
    CHECK(r.code == 0);
    CHECK(r.out == "9\n");
    r = call({"escape", "--p", "0,0,0", "--method", "all", "--trials", "1000"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "closed 4\n"));
    CHECK(contains(r.out, "linear 4\n"));
    CHECK(contains(r.out, "simulate 4±0"));
    CHECK(contains(r.out, "seed: "));
    r = call({"escape", "--p", "0.5,1.0"});
    CHECK(r.code == 3);
    CHECK_FALSE(r.err.empty());
    r = call({"escape", "--p", "0.5,abc"});
    CHECK(r.code == 2);
    r = call({"escape", "--p", " 5e-1 , 0.5 ", "--method", "linear"});
    CHECK(r.code == 0);
    CHECK(r.out == "9\n");
}

TEST_CASE("simulated escape is reproducible and thread independent") {
    const auto a = call({"--threads", "1", "escape", "--p", "0.3,0.6", "--method", "simulate", "--trials", "5000", "--seed", "8"});
    const auto b = call({"--threads", "4", "escape", "--p", "0.3,0.6", "--method", "simulate", "--trials", "5000", "--seed", "8"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(contains(a.out, "seed: 8"));
}

TEST_CASE("usage errors") {
    CHECK(call({}).code == 2);
    CHECK(call({"nonsense"}).code == 2);
    CHECK(call({"escape"}).code == 2);
    CHECK(call({"escape", "--p", "0.5", "--bogus"}).code == 2);
    CHECK(call({"escape", "--p", "0.5", "--method", "guess"}).code == 2);
    // fault injection exists only behind the hook
    CHECK(call({"verify", "--suite", "theorem1", "--inject-fault"}).code == 2);
}

TEST_CASE("arrange") {
    auto r = call({"arrange", "--p", "0.17,0.64,0.85,0.71", "--mode", "pendulum"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "(0.17,0.71,0.85,0.64)\n"));
    r = call({"arrange", "--p", "1,2,3", "--mode", "check"});
    CHECK(r.out == "false\n");
    r = call({"arrange", "--p", "1,3,2", "--mode", "check"});
    CHECK(r.out == "true\n");
    r = call({"arrange", "--p", "0.5,0.5", "--mode", "pendulum"});
    CHECK(contains(r.out, "(0.5,0.5)\n"));
    r = call({"arrange", "--p", "0.1,0.3,0.2", "--mode", "mirror-pendulum"});
    CHECK(contains(r.out, "(0.2,0.3,0.1)\n"));
    r = call({"arrange", "--p", "0.3,0.1,0.2", "--mode", "sorted"});
    CHECK(contains(r.out, "(0.1,0.2,0.3)\n"));
    CHECK(call({"arrange", "--p", "1,2", "--mode", "pendulum"}).code == 3);
}

TEST_CASE("brute") {
    auto r = call({"brute", "--p", "0.17,0.64,0.85,0.71", "--direction", "max", "--top", "4"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "1 139.2080044315191"));
    CHECK(contains(r.out, "3 137.3769253258243"));
    CHECK(contains(r.out, "(0.17,0.64,0.85,0.71)"));
    CHECK(contains(r.out, "optimal_set {(0.17,0.71,0.85,0.64),(0.64,0.85,0.71,0.17)}"));
    CHECK(contains(r.out, "pendulum_pair match"));
    r = call({"brute", "--p", "0.1,0.2", "--direction", "min"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "optimal_set {(0.1,0.2),(0.2,0.1)}"));
    r = call({"brute", "--p", "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.1,0.2,0.3"});
    CHECK(r.code == 4);
    CHECK(contains(r.err, "10"));
}

TEST_CASE("budget") {
    auto r = call({"budget", "--a", "0.5", "--b", "1.2", "--d", "4"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "(0,0.5,0.5,0.2)\n"));
    r = call({"budget", "--a", "0.3", "--b", "3", "--d", "4"});
    CHECK(contains(r.out, "(0.3,0.3,0.3,0.3)\n"));
    r = call({"budget", "--a", "0", "--b", "1", "--d", "3"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "(0,0,0)\n"));
    CHECK(contains(r.out, "note: "));
    CHECK(call({"budget", "--a", "1", "--b", "1", "--d", "3"}).code == 3);
    CHECK(call({"budget", "--a", "0.2", "--b", "-1", "--d", "3"}).code == 3);
}

TEST_CASE("verify") {
    auto r = call({"--threads", "1", "verify", "--suite", "theorem1", "--trials", "2"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "PASS "));
    CHECK(contains(r.out, "seed: "));
    r = call({"verify", "--suite", "convexity", "--trials", "5"});
    CHECK(r.code == 0);
    r = call({"--threads", "1", "verify", "--suite", "theorem1", "--trials", "2", "--inject-fault"}, Hooks{true});
    CHECK(r.code == 1);
    CHECK(contains(r.out, "FAIL "));
    CHECK(contains(r.out, "counterexample: p=("));
}

TEST_CASE("experiment") {
    const auto dir = std::filesystem::temp_directory_path() / "pendulum_cli_experiment";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    const auto cfg = dir / "small.json";
    {
        std::ofstream f(cfg);
        f << R"({"sweeps":[{"experiment":"variance_sweep","output":"v.csv","d":5,"x_values":[0.1,0.3],
                "instantiations":4,"seed":3},
               {"experiment":"d_sweep","output":"d.csv","d_values":[4,30],"lo":0.0,"hi":0.5,
                "instantiations":3,"perm_samples":5,"seed":3}]})";
    }
    const auto out1 = dir / "run1";
    const auto out2 = dir / "run2";
    auto r = call({"--threads", "1", "experiment", "--config", cfg.string(), "--out-dir", out1.string()});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "seed: 3"));
    r = call({"--threads", "3", "experiment", "--config", cfg.string(), "--out-dir", out2.string()});
    CHECK(r.code == 0);
    CHECK(slurp(out1 / "v.csv") == slurp(out2 / "v.csv"));
    CHECK(slurp(out1 / "d.csv") == slurp(out2 / "d.csv"));
    CHECK(slurp(out1 / "v.csv").rfind("experiment,d,lo,hi,x,", 0) == 0);

    r = call({"experiment", "--config", cfg.string(), "--out-dir", out1.string(), "--format", "json"});
    CHECK(r.code == 0);
    CHECK(std::filesystem::exists(out1 / "v.json"));

    r = call({"experiment", "--config", PENDULUM_CONFIG_DIR "/empty.json", "--out-dir", (dir / "empty").string()});
    CHECK(r.code == 2);
    CHECK_FALSE(std::filesystem::exists(dir / "empty"));
    CHECK(call({"experiment", "--config", (dir / "missing.json").string()}).code == 2);

    // a domain error in the second sweep leaves no file from the first
    {
        std::ofstream f(cfg);
        f << R"({"sweeps":[{"experiment":"variance_sweep","output":"ok.csv","d":4,"x_values":[0.1],
                "instantiations":2,"seed":1},
               {"experiment":"d_sweep","output":"bad.csv","d_values":[4],"lo":0.0,"hi":1.5,
                "instantiations":2,"seed":1}]})";
    }
    r = call({"experiment", "--config", cfg.string(), "--out-dir", (dir / "partial").string()});
    CHECK(r.code != 0);
    CHECK_FALSE(std::filesystem::exists(dir / "partial" / "ok.csv"));
    std::filesystem::remove_all(dir);
}

TEST_CASE("bundled configs parse") {
    for (const char* name : {"fig5.json", "fig6.json"}) {
        std::ifstream f(std::string(PENDULUM_CONFIG_DIR) + "/" + name);
        CHECK(f.good());
    }
}

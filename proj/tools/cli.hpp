#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pendulum::cli {

// Exit codes
inline constexpr int exit_ok = 0;
inline constexpr int exit_property_failure = 1;
inline constexpr int exit_usage = 2;
inline constexpr int exit_domain = 3;
inline constexpr int exit_size_cap = 4;

struct Hooks {
    /// Exposes `verify --inject-fault` (test builds only).
    bool allow_fault_injection = false;
};

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Hooks& hooks = {});

/// Comma-separated decimals; whitespace ignored, scientific notation accepted.
/// Throws std::invalid_argument on malformed input.
std::vector<double> parse_vector(const std::string& text);

}  // namespace pendulum::cli

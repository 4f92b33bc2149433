#pragma once

#include <stdexcept>
#include <string>

namespace pendulum {

enum class ErrorKind {
    invalid_dimension,  // d = 0, or mismatched lengths
    invalid_argument,   // out-of-range index, trials = 0, malformed config
    domain,             // probability outside [0,1), non-finite entry
    size_cap,           // exhaustive search refused
    step_guard,         // simulated walk exceeded its step cutoff
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace pendulum

#pragma once

#include <span>
#include <string>

namespace pendulum {

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

/// "(a,b,c)" with format_double entries.
std::string format_vector(std::span<const double> v);

}  // namespace pendulum

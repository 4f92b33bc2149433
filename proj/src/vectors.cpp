#include "pendulum/vectors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pendulum/error.hpp"

namespace pendulum {

TransitionVector::TransitionVector(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) fail(ErrorKind::invalid_dimension, "transition vector of dimension 0");
    for (std::size_t i = 0; i < probs_.size(); ++i) {
        const double v = probs_[i];
        if (!std::isfinite(v) || v < 0.0 || v >= 1.0)
            fail(ErrorKind::domain, "p_" + std::to_string(i + 1) + " = " + std::to_string(v) +
                                        " is outside [0, 1)");
    }
}

OddsVector::OddsVector(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) fail(ErrorKind::invalid_dimension, "odds vector of dimension 0");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        const double v = values_[i];
        if (!std::isfinite(v) || v < 0.0)
            fail(ErrorKind::domain, "x_" + std::to_string(i + 1) + " = " + std::to_string(v) +
                                        " is not a finite nonnegative odds value");
    }
}

bool OddsVector::strictly_positive() const noexcept {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return v > 0.0; });
}

bool pairwise_distinct(std::span<const double> x) {
    std::vector<double> s(x.begin(), x.end());
    std::sort(s.begin(), s.end());
    return std::adjacent_find(s.begin(), s.end()) == s.end();
}

}  // namespace pendulum

#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace pendulum {

/// Backward-step probabilities p_1..p_d of the walk. Every entry lies in [0, 1).
class TransitionVector {
public:
    explicit TransitionVector(std::vector<double> probs);
    TransitionVector(std::initializer_list<double> probs) : TransitionVector(std::vector<double>(probs)) {}

    std::size_t size() const noexcept { return probs_.size(); }
    double operator[](std::size_t i) const { return probs_[i]; }  // 0-based storage
    std::span<const double> values() const noexcept { return probs_; }
    const std::vector<double>& vec() const noexcept { return probs_; }

    friend bool operator==(const TransitionVector&, const TransitionVector&) = default;

private:
    std::vector<double> probs_;
};

/// Odds x_i = p_i / (1 - p_i). Entries are finite and nonnegative; uniqueness
/// results additionally need them strictly positive.
class OddsVector {
public:
    explicit OddsVector(std::vector<double> values);
    OddsVector(std::initializer_list<double> values) : OddsVector(std::vector<double>(values)) {}

    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    std::span<const double> values() const noexcept { return values_; }
    const std::vector<double>& vec() const noexcept { return values_; }

    bool strictly_positive() const noexcept;

    friend bool operator==(const OddsVector&, const OddsVector&) = default;

private:
    std::vector<double> values_;
};

bool pairwise_distinct(std::span<const double> x);

}  // namespace pendulum

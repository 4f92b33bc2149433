#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pendulum {

/// A bijection on {1..d}. Indices are 1-based at the API surface.
///
/// Acting on a vector, (sigma x)_i = x_{sigma(i)}. With that action,
/// compose(a, b) is the permutation whose action equals applying b first and
/// then a, i.e. apply(compose(a, b), x) == apply(a, apply(b, x)).
class Permutation {
public:
    /// Validates that `mapping` (1-based values) is a bijection on {1..d}.
    explicit Permutation(std::vector<std::size_t> mapping);

    static Permutation identity(std::size_t d);

    std::size_t size() const noexcept { return map_.size(); }

    /// sigma(i) for 1 <= i <= d.
    std::size_t operator()(std::size_t i) const;

    const std::vector<std::size_t>& mapping() const noexcept { return map_; }

    Permutation inverse() const;
    bool is_identity() const noexcept;

    template <class T>
    std::vector<T> apply(std::span<const T> x) const;
    std::vector<double> apply(const std::vector<double>& x) const {
        return apply(std::span<const double>(x));
    }

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    struct Trusted {};
    Permutation(Trusted, std::vector<std::size_t> mapping) : map_(std::move(mapping)) {}

    std::vector<std::size_t> map_;

    friend Permutation compose(const Permutation& a, const Permutation& b);
};

Permutation compose(const Permutation& a, const Permutation& b);

template <class T>
std::vector<T> Permutation::apply(std::span<const T> x) const {
    std::vector<T> out;
    out.reserve(x.size());
    for (std::size_t i = 0; i < map_.size(); ++i) out.push_back(x[map_[i] - 1]);
    return out;
}

}  // namespace pendulum

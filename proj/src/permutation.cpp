#include "pendulum/permutation.hpp"

#include <string>

#include "pendulum/error.hpp"

namespace pendulum {

Permutation::Permutation(std::vector<std::size_t> mapping) : map_(std::move(mapping)) {
    const std::size_t d = map_.size();
    if (d == 0) fail(ErrorKind::invalid_dimension, "permutation of dimension 0");
    std::vector<bool> seen(d, false);
    for (std::size_t v : map_) {
        if (v < 1 || v > d || seen[v - 1])
            fail(ErrorKind::invalid_argument,
                 "mapping is not a bijection on {1.." + std::to_string(d) + "}");
        seen[v - 1] = true;
    }
}

Permutation Permutation::identity(std::size_t d) {
    if (d == 0) fail(ErrorKind::invalid_dimension, "permutation of dimension 0");
    std::vector<std::size_t> m(d);
    for (std::size_t i = 0; i < d; ++i) m[i] = i + 1;
    return Permutation(Trusted{}, std::move(m));
}

std::size_t Permutation::operator()(std::size_t i) const {
    if (i < 1 || i > map_.size())
        fail(ErrorKind::invalid_argument, "permutation index " + std::to_string(i) + " out of range");
    return map_[i - 1];
}

Permutation Permutation::inverse() const {
    std::vector<std::size_t> inv(map_.size());
    for (std::size_t i = 0; i < map_.size(); ++i) inv[map_[i] - 1] = i + 1;
    return Permutation(Trusted{}, std::move(inv));
}

bool Permutation::is_identity() const noexcept {
    for (std::size_t i = 0; i < map_.size(); ++i)
        if (map_[i] != i + 1) return false;
    return true;
}

// apply(a, apply(b, x))_i = apply(b, x)_{a(i)} = x_{b(a(i))}
Permutation compose(const Permutation& a, const Permutation& b) {
    if (a.size() != b.size()) fail(ErrorKind::invalid_dimension, "composing permutations of different size");
    std::vector<std::size_t> m(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) m[i] = b.map_[a.map_[i] - 1];
    return Permutation(Permutation::Trusted{}, std::move(m));
}

}  // namespace pendulum

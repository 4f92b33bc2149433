#include "pendulum/enumerate.hpp"

#include "pendulum/error.hpp"

namespace pendulum {

ArrangementSpace::ArrangementSpace(std::span<const double> values) {
    if (values.empty()) fail(ErrorKind::invalid_dimension, "dimension must be at least 1");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    for (double v : sorted) {
        if (distinct_.empty() || distinct_.back() != v) distinct_.push_back(v);
        ranks_.push_back(distinct_.size() - 1);
    }

    std::vector<std::size_t> multiplicity(distinct_.size(), 0);
    for (std::size_t r : ranks_) ++multiplicity[r];

    // multinomial d! / prod(m_r!), built incrementally to stay exact
    size_ = 1;
    std::uint64_t placed = 0;
    for (std::size_t m : multiplicity) {
        for (std::size_t k = 1; k <= m; ++k) {
            ++placed;
            size_ = size_ * placed / k;
        }
    }

    const std::size_t depth = std::min<std::size_t>(2, ranks_.size());
    std::vector<std::size_t> prefix;
    auto extend = [&](auto&& self) -> void {
        if (prefix.size() == depth) {
            tasks_.push_back(prefix);
            return;
        }
        for (std::size_t r = 0; r < distinct_.size(); ++r) {
            if (multiplicity[r] == 0) continue;
            --multiplicity[r];
            prefix.push_back(r);
            self(self);
            prefix.pop_back();
            ++multiplicity[r];
        }
    };
    extend(extend);
}

std::vector<double> ArrangementSpace::materialize(std::span<const std::size_t> ranks) const {
    std::vector<double> out(ranks.size());
    for (std::size_t i = 0; i < ranks.size(); ++i) out[i] = distinct_[ranks[i]];
    return out;
}

}  // namespace pendulum

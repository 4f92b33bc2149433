#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace pendulum {

/// The distinct arrangements of a multiset of reals, in lexicographic order.
///
/// The space is split into tasks by the first two entries of the arrangement;
/// tasks are ordered so that concatenating them in task order reproduces the
/// full lexicographic sequence. Arrangements with repeated values are visited
/// once each.
class ArrangementSpace {
public:
    explicit ArrangementSpace(std::span<const double> values);

    std::size_t dimension() const noexcept { return ranks_.size(); }
    std::size_t task_count() const noexcept { return tasks_.size(); }

    /// Distinct values in ascending order; an arrangement is a vector of
    /// indices (ranks) into this table.
    const std::vector<double>& distinct_values() const noexcept { return distinct_; }

    /// Number of distinct arrangements (multinomial coefficient).
    std::uint64_t size() const noexcept { return size_; }

    /// Calls visit(std::span<const std::size_t> ranks) for every arrangement
    /// of task t, in lexicographic order.
    template <class Visit>
    void visit_task(std::size_t t, Visit&& visit) const {
        std::vector<std::size_t> arrangement = tasks_[t];
        std::vector<std::size_t> rest = ranks_;
        for (std::size_t r : tasks_[t]) rest.erase(std::find(rest.begin(), rest.end(), r));
        const std::size_t head = arrangement.size();
        arrangement.insert(arrangement.end(), rest.begin(), rest.end());
        do {
            visit(std::span<const std::size_t>(arrangement));
        } while (std::next_permutation(arrangement.begin() + static_cast<std::ptrdiff_t>(head), arrangement.end()));
    }

    std::vector<double> materialize(std::span<const std::size_t> ranks) const;

private:
    std::vector<double> distinct_;
    std::vector<std::size_t> ranks_;  // sorted multiset of ranks
    std::vector<std::vector<std::size_t>> tasks_;
    std::uint64_t size_ = 0;
};

}  // namespace pendulum

#pragma once

#include <span>
#include <utility>
#include <vector>

#include "ssdso/types.hpp"

namespace ssdso {

/*
 * Sparse table for O(1) range-maximum queries with O(n log n) words.
 * Among equal maxima the largest index wins.
 */
class RangeMaxIndex {
public:
    RangeMaxIndex() = default;
    explicit RangeMaxIndex(std::vector<Dist> values);

    std::size_t size() const noexcept { return values_.size(); }
    std::span<const Dist> values() const noexcept { return values_; }

    /// (max of values[a..b], largest index attaining it); throws InputError if a > b or b out of range.
    std::pair<Dist, std::size_t> query(std::size_t a, std::size_t b) const;

    /// Smallest i in [a, b] with values[i] > threshold, or b + 1 if none. O(log n) queries.
    std::size_t first_above(std::size_t a, std::size_t b, Dist threshold) const;

private:
    std::size_t better(std::size_t i, std::size_t j) const noexcept {
        // rightmost argmax
        if (values_[i] != values_[j]) return values_[i] > values_[j] ? i : j;
        return i > j ? i : j;
    }

    std::vector<Dist> values_;
    std::vector<std::vector<std::size_t>> table_;
};

inline std::pair<Dist, std::size_t> range_max(const RangeMaxIndex& idx, std::size_t a, std::size_t b) {
    return idx.query(a, b);
}

}  // namespace ssdso

#include "ssdso/range_max.hpp"

#include <bit>
#include <string>

namespace ssdso {

RangeMaxIndex::RangeMaxIndex(std::vector<Dist> values) : values_(std::move(values)) {
    const std::size_t n = values_.size();
    if (n == 0) return;
    const std::size_t levels = static_cast<std::size_t>(std::bit_width(n));
    table_.resize(levels);
    table_[0].resize(n);
    for (std::size_t i = 0; i < n; ++i) table_[0][i] = i;
    for (std::size_t k = 1; k < levels; ++k) {
        const std::size_t half = std::size_t{1} << (k - 1);
        table_[k].resize(n - 2 * half + 1);
        for (std::size_t i = 0; i + 2 * half <= n; ++i)
            table_[k][i] = better(table_[k - 1][i], table_[k - 1][i + half]);
    }
}

std::pair<Dist, std::size_t> RangeMaxIndex::query(std::size_t a, std::size_t b) const {
    if (a > b) throw InputError("empty range [" + std::to_string(a) + ", " + std::to_string(b) + "]");
    if (b >= values_.size()) throw InputError("range end out of bounds");
    const std::size_t k = static_cast<std::size_t>(std::bit_width(b - a + 1)) - 1;
    const std::size_t i = better(table_[k][a], table_[k][b + 1 - (std::size_t{1} << k)]);
    return {values_[i], i};
}

std::size_t RangeMaxIndex::first_above(std::size_t a, std::size_t b, Dist threshold) const {
    if (a > b || query(a, b).first <= threshold) return b + 1;
    while (a < b) {
        const std::size_t mid = a + (b - a) / 2;
        if (query(a, mid).first > threshold)
            b = mid;
        else
            a = mid + 1;
    }
    return a;
}

}  // namespace ssdso

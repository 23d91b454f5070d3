#include "ssdso/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <string>

namespace ssdso {

namespace {

// Portable bounded draw; std distributions differ across standard libraries.
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t r;
    do r = rng();
    while (r >= limit);
    return r % bound;
}

}  // namespace

Graph gen_random_graph(std::size_t n, std::size_t m, Dist max_weight, std::uint64_t seed, std::size_t locality) {
    if (n == 0) throw InputError("graph needs at least one vertex");
    if (max_weight < 1) throw InputError("max weight must be positive");
    std::mt19937_64 rng(seed);
    const std::size_t window = locality == 0 ? n : locality;
    std::size_t cap = 0;
    for (std::size_t i = 0; i < n; ++i) cap += std::min(i, window);
    m = std::min(m, cap);

    std::vector<Vertex> label(n);
    std::iota(label.begin(), label.end(), 0);
    for (std::size_t i = n; i > 1; --i) std::swap(label[i - 1], label[draw(rng, i)]);

    std::set<std::pair<Vertex, Vertex>> used;
    std::vector<Edge> edges;
    auto add = [&](std::size_t i, std::size_t j) {
        Vertex u = label[i], v = label[j];
        if (u > v) std::swap(u, v);
        if (!used.emplace(u, v).second) return false;
        edges.push_back({u, v, 1 + draw(rng, max_weight)});
        return true;
    };
    for (std::size_t i = 1; i < n && edges.size() < m; ++i) {
        const std::size_t lo = i > window ? i - window : 0;
        add(i, lo + draw(rng, i - lo));
    }
    // chords: rejection sampling while sparse, enumeration once the rest is small
    std::size_t misses = 0;
    while (edges.size() < m && misses < 64) {
        const std::size_t i = 1 + draw(rng, n - 1);
        const std::size_t lo = i > window ? i - window : 0;
        if (add(i, lo + draw(rng, i - lo)))
            misses = 0;
        else
            ++misses;
    }
    if (edges.size() < m) {
        std::vector<std::pair<std::size_t, std::size_t>> free;
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = i > window ? i - window : 0; j < i; ++j) {
                Vertex u = label[i], v = label[j];
                if (u > v) std::swap(u, v);
                if (!used.count({u, v})) free.emplace_back(i, j);
            }
        for (std::size_t k = free.size(); k > 1; --k) std::swap(free[k - 1], free[draw(rng, k)]);
        for (std::size_t k = 0; edges.size() < m; ++k) add(free[k].first, free[k].second);
    }
    return Graph(n, max_weight, std::move(edges));
}

LowerBoundLayout lower_bound_layout(std::size_t rows, Dist max_weight) {
    if (rows == 0) throw InputError("matrix must be non-empty");
    if (max_weight < 1) throw InputError("max weight must be positive");
    LowerBoundLayout l;
    l.rows = rows;
    l.max_weight = max_weight;
    std::size_t q = 1;
    while (max_weight * q * q < rows) ++q;
    l.padded = static_cast<std::size_t>(max_weight) * q * q;
    l.stride = static_cast<std::size_t>(max_weight) * q;
    l.blocks = q;
    return l;
}

LowerBoundInstance gen_lower_bound_instance(const BitMatrix& x, Dist max_weight, std::size_t block) {
    for (const auto& row : x)
        if (row.size() != x.size()) throw InputError("bit matrix must be square");
    LowerBoundInstance inst;
    inst.layout = lower_bound_layout(x.size(), max_weight);
    const LowerBoundLayout& l = inst.layout;
    if (block < 1 || block > l.blocks)
        throw InputError("block " + std::to_string(block) + " outside [1, " + std::to_string(l.blocks) + "]");
    inst.block = block;

    // M' = min(M, r') equals M under this padding
    const Dist piece = max_weight;
    std::vector<Edge> edges;
    for (std::size_t i = 1; i <= l.rows; ++i)
        for (std::size_t j = 1; j <= l.rows; ++j)
            if (x[i - 1][j - 1]) edges.push_back({l.a(i), l.b(j), 1});
    edges.push_back({l.v(0), l.v(1), max_weight});
    for (std::size_t i = 1; i < l.stride; ++i) edges.push_back({l.v(i), l.v(i + 1), 1});

    Vertex next = l.v(l.stride) + 1;
    for (std::size_t i = 1; i <= l.stride; ++i) {
        Dist left = 2 * i - 1;
        Vertex at = l.v(i);
        const Vertex end = l.a((block - 1) * l.stride + i);
        while (left > 0) {
            const Dist w = std::min(left, piece);
            left -= w;
            const Vertex to = left == 0 ? end : next++;
            edges.push_back({at, to, w});
            at = to;
        }
    }
    inst.graph = Graph(next, max_weight, std::move(edges));
    inst.source = l.source();
    return inst;
}

BitMatrix decode_matrix(std::span<const Oracle> oracles, std::size_t rows, Dist max_weight) {
    const LowerBoundLayout l = lower_bound_layout(rows, max_weight);
    if (oracles.size() < l.blocks)
        throw InputError("missing block " + std::to_string(oracles.size() + 1) + " of " + std::to_string(l.blocks));
    BitMatrix x(rows, std::vector<std::uint8_t>(rows, 0));
    for (std::size_t k = 1; k <= l.blocks; ++k) {
        const Oracle& o = oracles[k - 1];
        if (o.source != l.source()) throw InputError("oracle of block " + std::to_string(k) + " has the wrong source");
        for (std::size_t i = 1; i <= l.stride; ++i) {
            const std::size_t row = (k - 1) * l.stride + i;
            if (row > rows) break;
            for (std::size_t j = 1; j <= rows; ++j) {
                const QueryAnswer ans = query_distance(o, l.b(j), l.v(i - 1), l.v(i));
                x[row - 1][j - 1] = ans.distance == l.stride + i ? 1 : 0;
            }
        }
    }
    return x;
}

}  // namespace ssdso

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ssdso/graph.hpp"
#include "ssdso/oracle.hpp"

namespace ssdso {

/// Random graph with n vertices and m edges (clamped to n(n-1)/2), weights
/// uniform in [1, M]. A random spanning tree comes first, so any m >= n - 1
/// is connected. With locality w > 0 tree parents and chords join vertices
/// at most w apart in a hidden random order, which yields deep trees.
Graph gen_random_graph(std::size_t n, std::size_t m, Dist max_weight, std::uint64_t seed,
                       std::size_t locality = 0);

using BitMatrix = std::vector<std::vector<std::uint8_t>>;

// Vertex layout of one block graph of the lower-bound family.
struct LowerBoundLayout {
    std::size_t rows = 0;    // r, size of the input matrix
    std::size_t padded = 0;  // r' = M q^2 >= r
    std::size_t stride = 0;  // S = sqrt(M r'), rows per block
    std::size_t blocks = 0;  // r' / S
    Dist max_weight = 1;

    Vertex a(std::size_t i) const noexcept { return static_cast<Vertex>(i - 1); }            // 1-based
    Vertex b(std::size_t j) const noexcept { return static_cast<Vertex>(padded + j - 1); }   // 1-based
    Vertex v(std::size_t i) const noexcept { return static_cast<Vertex>(2 * padded + i); }   // 0-based
    Vertex source() const noexcept { return v(stride); }
};

/// Padding rule for an r x r matrix and weight bound M.
LowerBoundLayout lower_bound_layout(std::size_t rows, Dist max_weight);

struct LowerBoundInstance {
    LowerBoundLayout layout;
    std::size_t block = 1;  // k, 1-based
    Graph graph;
    Vertex source = 0;
};

/// Block graph G_k encoding rows (k-1)S+1 .. kS of X. Throws InputError for
/// a non-square matrix or k outside [1, blocks].
LowerBoundInstance gen_lower_bound_instance(const BitMatrix& x, Dist max_weight, std::size_t block);

/// Threshold decoding: X[row][j] = 1 iff d(s, b_j, {v_{i-1}, v_i}) = S + i.
/// `oracles[k-1]` must be an edge oracle of block k. Throws InputError if a block is missing.
BitMatrix decode_matrix(std::span<const Oracle> oracles, std::size_t rows, Dist max_weight);

}  // namespace ssdso

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ssdso/types.hpp"

namespace ssdso {

struct Edge {
    Vertex u;
    Vertex v;
    Dist w;

    Vertex other(Vertex x) const noexcept { return x == u ? v : u; }
    friend bool operator==(const Edge&, const Edge&) = default;
};

struct Arc {
    Vertex to;
    EdgeId edge;
};

// Undirected graph with integer weights in [1, M]. Immutable after construction.
// Adjacency lists are sorted by neighbor id so every traversal order is canonical.
class Graph {
public:
    Graph() = default;
    /// Validates ids, weights, self-loops and duplicate pairs; throws InputError.
    Graph(std::size_t n, Dist max_weight, std::vector<Edge> edges);

    std::size_t num_vertices() const noexcept { return n_; }
    std::size_t num_edges() const noexcept { return edges_.size(); }
    Dist max_weight() const noexcept { return max_weight_; }

    const Edge& edge(EdgeId e) const;
    std::span<const Edge> edges() const noexcept { return edges_; }
    std::span<const Arc> neighbors(Vertex v) const;

    std::optional<EdgeId> find_edge(Vertex u, Vertex v) const;
    bool valid_vertex(Vertex v) const noexcept { return v < n_; }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.max_weight_ == b.max_weight_ && a.edges_ == b.edges_;
    }

private:
    std::size_t n_ = 0;
    Dist max_weight_ = 1;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_;  // CSR, size n + 1
    std::vector<Arc> arcs_;
};

}  // namespace ssdso

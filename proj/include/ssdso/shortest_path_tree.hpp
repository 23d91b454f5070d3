#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ssdso/graph.hpp"

namespace ssdso {

// Euler-tour LCA over a forest given by parent pointers, plus preorder
// numbering for constant-time ancestor tests.
class LcaIndex {
public:
    LcaIndex() = default;
    /// Roots are vertices with parent kNoVertex that are listed in `roots`;
    /// vertices not reachable from a root stay outside the index.
    LcaIndex(std::span<const Vertex> parent, std::span<const Vertex> roots);

    bool contains(Vertex v) const noexcept { return v < pre_.size() && pre_[v] != kNoVertex; }
    /// True iff a == b or a is a proper ancestor of b.
    bool is_ancestor(Vertex a, Vertex b) const noexcept {
        return contains(a) && contains(b) && pre_[a] <= pre_[b] && pre_[b] < pre_[a] + size_[a];
    }
    /// kNoVertex when u and v lie in different trees or outside the index.
    Vertex lca(Vertex u, Vertex v) const;

    std::span<const Vertex> preorder() const noexcept { return order_; }
    std::size_t preorder_index(Vertex v) const noexcept { return pre_[v]; }
    std::size_t subtree_size(Vertex v) const noexcept { return size_[v]; }

private:
    std::vector<Vertex> pre_;
    std::vector<Vertex> size_;
    std::vector<Vertex> order_;
    std::vector<Vertex> euler_;
    std::vector<Vertex> euler_depth_;
    std::vector<Vertex> first_;
    std::vector<std::vector<Vertex>> sparse_;  // positions into euler_, by level
};

struct Failure {
    std::optional<EdgeId> edge;
    std::optional<Vertex> vertex;
};

// Shortest path tree T_s. Ties are broken towards the smaller predecessor id,
// then the smaller edge id, so the tree is a function of (graph, source, failure).
class ShortestPathTree {
public:
    ShortestPathTree() = default;
    /// Rebuilds depth and the LCA index; used after deserialization.
    ShortestPathTree(Vertex source, std::vector<Vertex> parent, std::vector<EdgeId> parent_edge,
                     std::vector<Dist> dist);

    Vertex source() const noexcept { return source_; }
    std::size_t num_vertices() const noexcept { return dist_.size(); }
    bool reachable(Vertex v) const noexcept { return dist_[v] != kInf; }

    Dist dist(Vertex v) const noexcept { return dist_[v]; }
    Vertex parent(Vertex v) const noexcept { return parent_[v]; }
    EdgeId parent_edge(Vertex v) const noexcept { return parent_edge_[v]; }
    std::size_t depth(Vertex v) const noexcept { return depth_[v]; }

    std::span<const Dist> distances() const noexcept { return dist_; }
    std::span<const Vertex> parents() const noexcept { return parent_; }
    std::span<const EdgeId> parent_edges() const noexcept { return parent_edge_; }
    const LcaIndex& lca() const noexcept { return lca_; }

    bool is_ancestor(Vertex a, Vertex b) const noexcept { return lca_.is_ancestor(a, b); }

    /// Lower endpoint of a tree edge given by its endpoints, or kNoVertex.
    Vertex tree_child(Vertex u, Vertex v) const noexcept;
    /// Lower endpoint of tree edge e, or kNoVertex if e is not a tree edge.
    Vertex tree_child(const Graph& g, EdgeId e) const;

    /// Vertices of P(s, t) from s to t; empty if t is unreachable.
    std::vector<Vertex> root_path(Vertex t) const;

private:
    Vertex source_ = 0;
    std::vector<Vertex> parent_;
    std::vector<EdgeId> parent_edge_;
    std::vector<Dist> dist_;
    std::vector<std::size_t> depth_;
    LcaIndex lca_;
};

/// Dijkstra on g minus the failure; throws InputError on invalid ids.
ShortestPathTree shortest_path_tree(const Graph& g, Vertex source, const Failure& failure = {});

/// Distances only, same tie-free semantics; avoids the LCA build.
std::vector<Dist> shortest_distances(const Graph& g, Vertex source, const Failure& failure = {});

/// O(1) relevance test for a tree edge: true iff e lies on P(s, t).
/// Throws ContractError if e is not a tree edge.
bool is_tree_edge_on_root_path(const ShortestPathTree& tree, const Graph& g, Vertex t, EdgeId e);

}  // namespace ssdso

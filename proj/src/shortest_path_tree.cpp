#include "ssdso/shortest_path_tree.hpp"

#include <algorithm>
#include <bit>
#include <queue>
#include <string>

namespace ssdso {

LcaIndex::LcaIndex(std::span<const Vertex> parent, std::span<const Vertex> roots) {
    const std::size_t n = parent.size();
    pre_.assign(n, kNoVertex);
    size_.assign(n, 0);
    first_.assign(n, kNoVertex);

    // children in increasing id order
    std::vector<Vertex> child_count(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v)
        if (parent[v] != kNoVertex) ++child_count[parent[v] + 1];
    for (std::size_t v = 0; v < n; ++v) child_count[v + 1] += child_count[v];
    std::vector<Vertex> children(child_count[n]);
    std::vector<Vertex> fill(child_count.begin(), child_count.end() - 1);
    for (std::size_t v = 0; v < n; ++v)
        if (parent[v] != kNoVertex) children[fill[parent[v]]++] = static_cast<Vertex>(v);

    struct Frame {
        Vertex v;
        Vertex next_child;
        Vertex depth;
    };
    std::vector<Frame> stack;
    for (Vertex r : roots) {
        if (r >= n || pre_[r] != kNoVertex) continue;
        stack.push_back({r, child_count[r], 0});
        pre_[r] = static_cast<Vertex>(order_.size());
        order_.push_back(r);
        first_[r] = static_cast<Vertex>(euler_.size());
        euler_.push_back(r);
        euler_depth_.push_back(0);
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.next_child < child_count[f.v + 1]) {
                Vertex c = children[f.next_child++];
                Vertex d = f.depth + 1;
                pre_[c] = static_cast<Vertex>(order_.size());
                order_.push_back(c);
                first_[c] = static_cast<Vertex>(euler_.size());
                euler_.push_back(c);
                euler_depth_.push_back(d);
                stack.push_back({c, child_count[c], d});
            } else {
                Vertex v = f.v;
                size_[v] = static_cast<Vertex>(order_.size()) - pre_[v];
                stack.pop_back();
                if (!stack.empty()) {
                    euler_.push_back(stack.back().v);
                    euler_depth_.push_back(stack.back().depth);
                }
            }
        }
    }

    const std::size_t len = euler_.size();
    if (len == 0) return;
    const std::size_t levels = static_cast<std::size_t>(std::bit_width(len));
    sparse_.resize(levels);
    sparse_[0].resize(len);
    for (std::size_t i = 0; i < len; ++i) sparse_[0][i] = static_cast<Vertex>(i);
    for (std::size_t k = 1; k < levels; ++k) {
        const std::size_t span = std::size_t{1} << k;
        sparse_[k].resize(len - span + 1);
        for (std::size_t i = 0; i + span <= len; ++i) {
            Vertex a = sparse_[k - 1][i];
            Vertex b = sparse_[k - 1][i + span / 2];
            sparse_[k][i] = euler_depth_[b] < euler_depth_[a] ? b : a;
        }
    }
}

Vertex LcaIndex::lca(Vertex u, Vertex v) const {
    if (!contains(u) || !contains(v)) return kNoVertex;
    std::size_t a = first_[u], b = first_[v];
    if (a > b) std::swap(a, b);
    const std::size_t k = static_cast<std::size_t>(std::bit_width(b - a + 1)) - 1;
    Vertex x = sparse_[k][a];
    Vertex y = sparse_[k][b + 1 - (std::size_t{1} << k)];
    Vertex w = euler_[euler_depth_[y] < euler_depth_[x] ? y : x];
    // different trees of the forest share no ancestor
    if (!is_ancestor(w, u) || !is_ancestor(w, v)) return kNoVertex;
    return w;
}

namespace {

struct DijkstraResult {
    std::vector<Dist> dist;
    std::vector<Vertex> parent;
    std::vector<EdgeId> parent_edge;
};

DijkstraResult dijkstra(const Graph& g, Vertex source, const Failure& failure) {
    const std::size_t n = g.num_vertices();
    if (source >= n) throw InputError("source " + std::to_string(source) + " out of range");
    if (failure.edge && *failure.edge >= g.num_edges())
        throw InputError("forbidden edge " + std::to_string(*failure.edge) + " out of range");
    if (failure.vertex) {
        if (*failure.vertex >= n) throw InputError("forbidden vertex out of range");
        if (*failure.vertex == source) throw InputError("forbidden vertex equals the source");
    }
    const EdgeId banned_edge = failure.edge.value_or(kNoEdge);
    const Vertex banned_vertex = failure.vertex.value_or(kNoVertex);

    DijkstraResult r{std::vector<Dist>(n, kInf), std::vector<Vertex>(n, kNoVertex),
                     std::vector<EdgeId>(n, kNoEdge)};
    std::vector<char> done(n, 0);
    using Item = std::pair<Dist, Vertex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    r.dist[source] = 0;
    heap.emplace(0, source);
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (done[u]) continue;
        done[u] = 1;
        for (const Arc& a : g.neighbors(u)) {
            if (a.edge == banned_edge || a.to == banned_vertex || done[a.to]) continue;
            const Dist nd = d + g.edge(a.edge).w;
            Dist& cur = r.dist[a.to];
            // equal-distance candidates arrive before a.to is settled, since weights are positive
            if (nd < cur || (nd == cur && (u < r.parent[a.to] ||
                                           (u == r.parent[a.to] && a.edge < r.parent_edge[a.to])))) {
                const bool improved = nd < cur;
                cur = nd;
                r.parent[a.to] = u;
                r.parent_edge[a.to] = a.edge;
                if (improved) heap.emplace(nd, a.to);
            }
        }
    }
    return r;
}

}  // namespace

ShortestPathTree::ShortestPathTree(Vertex source, std::vector<Vertex> parent, std::vector<EdgeId> parent_edge,
                                   std::vector<Dist> dist)
    : source_(source), parent_(std::move(parent)), parent_edge_(std::move(parent_edge)), dist_(std::move(dist)) {
    const std::size_t n = dist_.size();
    if (parent_.size() != n || parent_edge_.size() != n || source_ >= n)
        throw InputError("inconsistent shortest path tree arrays");
    const Vertex roots[] = {source_};
    lca_ = LcaIndex(parent_, roots);
    depth_.assign(n, 0);
    for (Vertex v : lca_.preorder())
        if (v != source_) depth_[v] = depth_[parent_[v]] + 1;
    for (std::size_t v = 0; v < n; ++v)
        if ((dist_[v] != kInf) != lca_.contains(static_cast<Vertex>(v)))
            throw InputError("shortest path tree arrays disagree on reachability");
}

Vertex ShortestPathTree::tree_child(Vertex u, Vertex v) const noexcept {
    if (u >= parent_.size() || v >= parent_.size()) return kNoVertex;
    if (parent_[v] == u) return v;
    if (parent_[u] == v) return u;
    return kNoVertex;
}

Vertex ShortestPathTree::tree_child(const Graph& g, EdgeId e) const {
    const Edge& ed = g.edge(e);
    Vertex c = tree_child(ed.u, ed.v);
    if (c == kNoVertex || parent_edge_[c] != e) return kNoVertex;
    return c;
}

std::vector<Vertex> ShortestPathTree::root_path(Vertex t) const {
    std::vector<Vertex> path;
    if (t >= dist_.size() || dist_[t] == kInf) return path;
    path.resize(depth_[t] + 1);
    for (Vertex c = t;; c = parent_[c]) {
        path[depth_[c]] = c;
        if (c == source_) break;
    }
    return path;
}

ShortestPathTree shortest_path_tree(const Graph& g, Vertex source, const Failure& failure) {
    DijkstraResult r = dijkstra(g, source, failure);
    return ShortestPathTree(source, std::move(r.parent), std::move(r.parent_edge), std::move(r.dist));
}

std::vector<Dist> shortest_distances(const Graph& g, Vertex source, const Failure& failure) {
    return dijkstra(g, source, failure).dist;
}

bool is_tree_edge_on_root_path(const ShortestPathTree& tree, const Graph& g, Vertex t, EdgeId e) {
    if (t >= tree.num_vertices()) throw InputError("target out of range");
    const Vertex child = tree.tree_child(g, e);
    if (child == kNoVertex) throw ContractError("edge " + std::to_string(e) + " is not a tree edge");
    return tree.is_ancestor(child, t);
}

}  // namespace ssdso

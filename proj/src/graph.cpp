#include "ssdso/graph.hpp"

#include <algorithm>
#include <string>

namespace ssdso {

Graph::Graph(std::size_t n, Dist max_weight, std::vector<Edge> edges)
    : n_(n), max_weight_(max_weight), edges_(std::move(edges)) {
    if (max_weight_ < 1) throw InputError("max weight must be at least 1");
    if (n_ >= kNoVertex) throw InputError("too many vertices");
    if (edges_.size() >= kNoEdge) throw InputError("too many edges");

    std::vector<std::size_t> degree(n_, 0);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const Edge& e = edges_[i];
        const std::string where = "edge " + std::to_string(i);
        if (e.u >= n_ || e.v >= n_) throw InputError(where + ": vertex id out of range");
        if (e.u == e.v) throw InputError(where + ": self-loop");
        if (e.w < 1 || e.w > max_weight_)
            throw InputError(where + ": weight " + std::to_string(e.w) + " outside [1, " +
                             std::to_string(max_weight_) + "]");
        ++degree[e.u];
        ++degree[e.v];
    }

    offsets_.assign(n_ + 1, 0);
    for (std::size_t v = 0; v < n_; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
    arcs_.resize(offsets_[n_]);
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const Edge& e = edges_[i];
        arcs_[fill[e.u]++] = Arc{e.v, static_cast<EdgeId>(i)};
        arcs_[fill[e.v]++] = Arc{e.u, static_cast<EdgeId>(i)};
    }
    for (std::size_t v = 0; v < n_; ++v) {
        auto first = arcs_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]);
        auto last = arcs_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]);
        std::sort(first, last, [](const Arc& a, const Arc& b) { return a.to < b.to; });
        auto dup = std::adjacent_find(first, last, [](const Arc& a, const Arc& b) { return a.to == b.to; });
        if (dup != last)
            throw InputError("duplicate edge between " + std::to_string(v) + " and " +
                             std::to_string(dup->to) + " (edge " + std::to_string(std::next(dup)->edge) + ")");
    }
}

const Edge& Graph::edge(EdgeId e) const {
    if (e >= edges_.size()) throw InputError("edge id " + std::to_string(e) + " out of range");
    return edges_[e];
}

std::span<const Arc> Graph::neighbors(Vertex v) const {
    if (v >= n_) throw InputError("vertex id " + std::to_string(v) + " out of range");
    return {arcs_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

std::optional<EdgeId> Graph::find_edge(Vertex u, Vertex v) const {
    if (u >= n_ || v >= n_) return std::nullopt;
    auto adj = neighbors(u);
    auto it = std::lower_bound(adj.begin(), adj.end(), v, [](const Arc& a, Vertex x) { return a.to < x; });
    if (it != adj.end() && it->to == v) return it->edge;
    return std::nullopt;
}

}  // namespace ssdso

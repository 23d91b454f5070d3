#include "brute_force.hpp"

#include <functional>

#include "ssdso/parallel.hpp"

namespace ref {

using ssdso::kInf;

std::vector<Dist> distances(const ssdso::Graph& g, Vertex s, EdgeId banned_edge, Vertex banned_vertex) {
    const std::size_t n = g.num_vertices();
    std::vector<std::vector<std::pair<Vertex, Dist>>> adj(n);
    const auto edges = g.edges();
    for (EdgeId id = 0; id < edges.size(); ++id) {
        if (id == banned_edge) continue;
        const auto& e = edges[id];
        if (e.u == banned_vertex || e.v == banned_vertex) continue;
        adj[e.u].emplace_back(e.v, e.w);
        adj[e.v].emplace_back(e.u, e.w);
    }
    std::vector<Dist> dist(n, kInf);
    std::vector<char> done(n, 0);
    if (s == banned_vertex) return dist;
    dist[s] = 0;
    for (;;) {
        Vertex best = ssdso::kNoVertex;
        for (Vertex v = 0; v < n; ++v)
            if (!done[v] && dist[v] != kInf && (best == ssdso::kNoVertex || dist[v] < dist[best])) best = v;
        if (best == ssdso::kNoVertex) break;
        done[best] = 1;
        for (auto [to, w] : adj[best])
            if (dist[best] + w < dist[to]) dist[to] = dist[best] + w;
    }
    return dist;
}

std::vector<Dist> relaxation(const ssdso::Graph& g, Vertex s, EdgeId banned_edge, Vertex banned_vertex) {
    std::vector<Dist> dist(g.num_vertices(), kInf);
    if (s == banned_vertex) return dist;
    dist[s] = 0;
    const auto edges = g.edges();
    for (bool changed = true; changed;) {
        changed = false;
        for (EdgeId id = 0; id < edges.size(); ++id) {
            const auto& e = edges[id];
            if (id == banned_edge || e.u == banned_vertex || e.v == banned_vertex) continue;
            if (dist[e.u] != kInf && dist[e.u] + e.w < dist[e.v]) dist[e.v] = dist[e.u] + e.w, changed = true;
            if (dist[e.v] != kInf && dist[e.v] + e.w < dist[e.u]) dist[e.u] = dist[e.v] + e.w, changed = true;
        }
    }
    return dist;
}

Dist all_paths_min(const ssdso::Graph& g, Vertex s, Vertex t, EdgeId banned_edge, Vertex banned_vertex) {
    std::vector<char> on(g.num_vertices(), 0);
    Dist best = kInf;
    std::function<void(Vertex, Dist)> dfs = [&](Vertex v, Dist d) {
        if (v == t) {
            best = std::min(best, d);
            return;
        }
        on[v] = 1;
        for (const auto& a : g.neighbors(v)) {
            if (a.edge == banned_edge || a.to == banned_vertex || on[a.to]) continue;
            dfs(a.to, d + g.edge(a.edge).w);
        }
        on[v] = 0;
    };
    if (s != banned_vertex && t != banned_vertex) dfs(s, 0);
    return best;
}

bool walk_ancestor(const ssdso::ShortestPathTree& tree, Vertex a, Vertex b) {
    if (!tree.reachable(a) || !tree.reachable(b)) return false;
    for (Vertex c = b; c != ssdso::kNoVertex; c = tree.parent(c))
        if (c == a) return true;
    return false;
}

FailureTable failure_table(const ssdso::Graph& g, const ssdso::ShortestPathTree& tree, ssdso::FailureMode mode) {
    FailureTable table{mode, std::vector<std::vector<Dist>>(g.num_vertices())};
    ssdso::parallel_for(g.num_vertices(), [&](std::size_t i) {
        const Vertex v = static_cast<Vertex>(i);
        if (v == tree.source() || !tree.reachable(v)) return;
        if (mode == ssdso::FailureMode::edge)
            table.after[v] = distances(g, tree.source(), tree.parent_edge(v));
        else
            table.after[v] = distances(g, tree.source(), ssdso::kNoEdge, v);
    });
    return table;
}

Dist path_weight(const ssdso::Graph& g, const std::vector<Vertex>& path, EdgeId banned_edge, Vertex banned_vertex) {
    if (path.empty()) return kInf;
    Dist total = 0;
    for (Vertex v : path)
        if (v == banned_vertex || v >= g.num_vertices()) return kInf;
    for (std::size_t i = 1; i < path.size(); ++i) {
        const auto id = g.find_edge(path[i - 1], path[i]);
        if (!id || *id == banned_edge) return kInf;
        total += g.edge(*id).w;
    }
    return total;
}

}  // namespace ref

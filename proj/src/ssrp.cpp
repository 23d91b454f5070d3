#include "ssdso/ssrp.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>

#include "ssdso/parallel.hpp"

namespace ssdso {

SsrpTable::SsrpTable(FailureMode mode, Vertex source, std::vector<std::size_t> offsets, std::vector<Dist> values)
    : mode_(mode), source_(source), offsets_(std::move(offsets)), values_(std::move(values)) {
    if (offsets_.empty() || offsets_.back() != values_.size())
        throw InputError("ssrp table offsets do not match values");
}

SsrpTable::SsrpTable(FailureMode mode, const ShortestPathTree& tree) : mode_(mode), source_(tree.source()) {
    const std::size_t n = tree.num_vertices();
    offsets_.assign(n + 1, 0);
    for (std::size_t t = 0; t < n; ++t)
        offsets_[t + 1] = offsets_[t] + row_length(mode, tree, static_cast<Vertex>(t));
    values_.assign(offsets_[n], 0);
}

std::size_t SsrpTable::row_length(FailureMode mode, const ShortestPathTree& tree, Vertex t) {
    if (!tree.reachable(t)) return 0;
    const std::size_t d = tree.depth(t);
    if (mode == FailureMode::edge) return d;
    return d == 0 ? 0 : d - 1;
}

namespace {

SsrpTable baseline(const Graph& g, const ShortestPathTree& tree, FailureMode mode) {
    SsrpTable table(mode, tree);
    const auto order = tree.lca().preorder();
    std::vector<Vertex> failures;
    for (Vertex v : order)
        if (v != tree.source()) failures.push_back(v);

    parallel_for(failures.size(), [&](std::size_t i) {
        const Vertex v = failures[i];
        Failure f;
        if (mode == FailureMode::edge)
            f.edge = tree.parent_edge(v);
        else
            f.vertex = v;
        const std::vector<Dist> dist = shortest_distances(g, tree.source(), f);
        const std::size_t k = tree.depth(v);
        const std::size_t first = tree.lca().preorder_index(v);
        const std::size_t last = first + tree.lca().subtree_size(v);
        for (std::size_t p = first; p < last; ++p) {
            const Vertex t = order[p];
            if (mode == FailureMode::vertex && t == v) continue;
            // slot (t, k) belongs to exactly one failure
            table.row(t)[k - 1] = dist[t];
        }
    });
    return table;
}

}  // namespace

SsrpTable ssrp_edge_baseline(const Graph& g, const ShortestPathTree& tree) {
    return baseline(g, tree, FailureMode::edge);
}

SsrpTable ssrp_vertex_baseline(const Graph& g, const ShortestPathTree& tree) {
    return baseline(g, tree, FailureMode::vertex);
}

PathReplacementResult replacements_along_path(const Graph& g, const ShortestPathTree& tree_s, Vertex target) {
    if (target >= g.num_vertices()) throw InputError("target out of range");
    if (!tree_s.reachable(target)) throw InputError("target " + std::to_string(target) + " is unreachable");

    const std::size_t n = g.num_vertices();
    PathReplacementResult r;
    r.target = target;
    r.path = tree_s.root_path(target);
    const std::size_t p = r.path.size() - 1;
    r.entries.assign(p, {});
    r.target_tree = shortest_path_tree(g, target);

    auto on_path = [&](Vertex w) {
        return tree_s.reachable(w) && tree_s.depth(w) <= p && r.path[tree_s.depth(w)] == w;
    };

    // deepest path vertex that is a tree ancestor
    std::vector<Vertex> anchor(n, kNoVertex);
    for (Vertex w : tree_s.lca().preorder())
        anchor[w] = on_path(w) ? static_cast<Vertex>(tree_s.depth(w)) : anchor[tree_s.parent(w)];

    // minimal deepest-touch over all shortest s-w paths, in order of distance
    std::vector<Vertex> by_dist(tree_s.lca().preorder().begin(), tree_s.lca().preorder().end());
    std::sort(by_dist.begin(), by_dist.end(), [&](Vertex a, Vertex b) {
        return std::pair(tree_s.dist(a), a) < std::pair(tree_s.dist(b), b);
    });
    r.touch_depth.assign(n, kNoVertex);
    for (Vertex w : by_dist) {
        if (on_path(w)) {
            r.touch_depth[w] = static_cast<Vertex>(tree_s.depth(w));
            continue;
        }
        Vertex best = kNoVertex;
        for (const Arc& a : g.neighbors(w)) {
            if (!tree_s.reachable(a.to)) continue;
            if (tree_s.dist(a.to) + g.edge(a.edge).w == tree_s.dist(w)) best = std::min(best, r.touch_depth[a.to]);
        }
        r.touch_depth[w] = best;
    }

    std::vector<char> path_edge(g.num_edges(), 0);
    for (std::size_t k = 1; k <= p; ++k) path_edge[tree_s.parent_edge(r.path[k])] = 1;

    // candidate (value, divergence depth, edge id, last failure index it covers)
    using Cand = std::tuple<Dist, Vertex, EdgeId, Vertex>;
    std::vector<std::vector<Cand>> starts(p + 2);
    const auto& dist_t = r.target_tree.distances();
    for (EdgeId id = 0; id < g.num_edges(); ++id) {
        if (path_edge[id]) continue;
        const Edge& e = g.edge(id);
        if (!tree_s.reachable(e.u) || !tree_s.reachable(e.v)) continue;
        Vertex lo = e.u, hi = e.v;
        if (anchor[lo] > anchor[hi]) std::swap(lo, hi);
        if (anchor[lo] == anchor[hi]) continue;
        const Dist value = sat_add(sat_add(tree_s.dist(lo), e.w), dist_t[hi]);
        starts[anchor[lo] + 1].emplace_back(value, r.touch_depth[lo], id, anchor[hi]);
    }

    std::priority_queue<Cand, std::vector<Cand>, std::greater<>> heap;
    for (std::size_t k = 1; k <= p; ++k) {
        for (const Cand& c : starts[k]) heap.push(c);
        while (!heap.empty() && std::get<3>(heap.top()) < k) heap.pop();
        if (heap.empty() || std::get<0>(heap.top()) == kInf) continue;
        const auto& [value, div, id, last] = heap.top();
        r.entries[k - 1] = {value, r.path[div], id};
    }
    return r;
}

std::vector<Vertex> greedy_hitting_set(std::span<const std::vector<Vertex>> paths, std::size_t min_length) {
    std::vector<std::vector<Vertex>> sets;
    sets.reserve(paths.size());
    for (std::size_t i = 0; i < paths.size(); ++i) {
        if (paths[i].size() < min_length)
            throw InputError("path " + std::to_string(i) + " has " + std::to_string(paths[i].size()) +
                             " vertices, fewer than " + std::to_string(min_length));
        std::vector<Vertex> s = paths[i];
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        sets.push_back(std::move(s));
    }

    std::unordered_map<Vertex, std::vector<std::size_t>> containing;
    for (std::size_t i = 0; i < sets.size(); ++i)
        for (Vertex v : sets[i]) containing[v].push_back(i);

    // ordered by (count desc, id asc)
    std::set<std::pair<std::size_t, Vertex>, std::greater<>> ranked;
    std::unordered_map<Vertex, std::size_t> count;
    for (auto& [v, list] : containing) {
        count[v] = list.size();
        ranked.emplace(list.size(), kNoVertex - v);  // greater<> on ids, so store inverted
    }

    std::vector<char> hit(sets.size(), 0);
    std::size_t remaining = sets.size();
    std::vector<Vertex> chosen;
    while (remaining > 0) {
        const Vertex v = kNoVertex - ranked.begin()->second;
        chosen.push_back(v);
        for (std::size_t i : containing[v]) {
            if (hit[i]) continue;
            hit[i] = 1;
            --remaining;
            for (Vertex u : sets[i]) {
                std::size_t& c = count[u];
                ranked.erase({c, kNoVertex - u});
                --c;
                if (c > 0) ranked.emplace(c, kNoVertex - u);
            }
        }
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

}  // namespace ssdso

#include <algorithm>
#include <string>

#include "ssdso/oracle.hpp"
#include "ssdso/parallel.hpp"

namespace ssdso {

std::string_view to_string(CaseTag tag) noexcept {
    switch (tag) {
        case CaseTag::irrelevant: return "irrelevant";
        case CaseTag::near: return "near";
        case CaseTag::far_I: return "far_I";
        case CaseTag::far_II: return "far_II";
    }
    return "unknown";
}

namespace {

struct Resolved {
    QueryAnswer answer;
    Vertex pred = kNoVertex;  // last(t, failure) if known
    std::size_t near_index = 0;
    const BreakRecord* record = nullptr;
};

Resolved resolve(const Oracle& o, Vertex t, Vertex elem) {
    const ShortestPathTree& tree = o.tree;
    Resolved r;
    const Dist d = tree.dist(t);
    if (elem == kNoVertex || elem == o.source || !tree.is_ancestor(elem, t)) {
        r.answer = {d, CaseTag::irrelevant};
        r.pred = tree.parent(t);
        return r;
    }
    if (o.mode == FailureMode::vertex && elem == t) {
        r.answer = {kInf, CaseTag::near};
        return r;
    }
    const Vertex x = o.anchor[t];
    const std::size_t k = tree.depth(elem);
    const std::size_t top = tree.depth(x);
    if (k > top) {
        r.near_index = o.near_offsets[t] + k - top - 1;
        r.answer = {o.near_dist[r.near_index], CaseTag::near};
        if (o.has_paths) r.pred = o.near_pred[r.near_index];
        return r;
    }

    const std::size_t slot = o.far_slot[x];
    const std::size_t far_count = o.far_offsets[slot + 1] - o.far_offsets[slot];
    const Dist far = k <= far_count ? o.far_dist[o.far_offsets[slot] + k - 1] : kInf;
    const Dist via_x = sat_add(far, d - tree.dist(x));

    const auto list = o.break_points(t);
    const Dist key = tree.dist(tree.parent(elem));
    auto it = std::upper_bound(list.begin(), list.end(), key,
                               [](Dist k2, const BreakRecord& b) { return k2 < b.key; });
    if (it != list.begin() && std::prev(it)->dist < via_x) {
        r.record = &*std::prev(it);
        r.answer = {r.record->dist, CaseTag::far_II};
        if (o.has_paths) r.pred = r.record->pred;
    } else {
        r.answer = {via_x, CaseTag::far_I};
        r.pred = tree.parent(t);
    }
    return r;
}

void check_target(const Oracle& o, Vertex t) {
    if (t >= o.n) throw InputError("target " + std::to_string(t) + " out of range");
}

Vertex edge_element(const Oracle& o, EdgeId e) {
    if (o.mode != FailureMode::edge) throw InputError("edge query on a vertex-failure oracle");
    if (e >= o.m) throw InputError("edge id " + std::to_string(e) + " out of range");
    return o.edge_child[e];
}

Vertex vertex_element(const Oracle& o, Vertex v) {
    if (o.mode != FailureMode::vertex) throw InputError("vertex query on an edge-failure oracle");
    if (v >= o.n) throw InputError("vertex " + std::to_string(v) + " out of range");
    if (v == o.source) throw InputError("the source cannot fail");
    return v;
}

std::vector<Vertex> walk(const Oracle& o, Vertex t, Vertex elem) {
    const Resolved first = resolve(o, t, elem);
    if (first.answer.distance == kInf)
        throw InputError("no replacement path to " + std::to_string(t) + ": distance is infinite");
    if (!o.has_paths) throw ContractError("oracle has no path-reporting data");
    std::vector<Vertex> path{t};
    Vertex c = t;
    Vertex pred = first.pred;
    while (c != o.source) {
        if (pred == kNoVertex || path.size() > o.n) throw ContractError("broken predecessor chain");
        c = pred;
        path.push_back(c);
        if (c != o.source) pred = resolve(o, c, elem).pred;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace

QueryAnswer query_element(const Oracle& o, Vertex t, Vertex elem) {
    check_target(o, t);
    return resolve(o, t, elem).answer;
}

QueryAnswer query_distance(const Oracle& o, Vertex t, EdgeId e) {
    check_target(o, t);
    return resolve(o, t, edge_element(o, e)).answer;
}

QueryAnswer query_distance(const Oracle& o, Vertex t, Vertex u, Vertex v) {
    check_target(o, t);
    if (o.mode != FailureMode::edge) throw InputError("edge query on a vertex-failure oracle");
    if (u >= o.n || v >= o.n) throw InputError("edge endpoint out of range");
    return resolve(o, t, o.tree.tree_child(u, v)).answer;
}

QueryAnswer query_distance_vertex(const Oracle& o, Vertex t, Vertex v) {
    check_target(o, t);
    return resolve(o, t, vertex_element(o, v)).answer;
}

void augment_path_reporting(const Graph& g, Oracle& o) {
    if (g.num_vertices() != o.n || g.num_edges() != o.m || g.max_weight() != o.max_weight)
        throw ContractError("graph does not match the oracle");
    const ShortestPathTree& tree = o.tree;
    o.near_pred.assign(o.near_dist.size(), kNoVertex);

    // smallest-id neighbour y with d(s,t,f) = d(s,y,f) + w({y,t})
    auto last = [&](Vertex t, Vertex elem, Dist target) -> Vertex {
        if (target == kInf) return kNoVertex;
        const EdgeId banned = o.mode == FailureMode::edge ? tree.parent_edge(elem) : kNoEdge;
        for (const Arc& a : g.neighbors(t)) {
            if (a.edge == banned || (o.mode == FailureMode::vertex && a.to == elem)) continue;
            const Dist dy = resolve(o, a.to, elem).answer.distance;
            if (sat_add(dy, g.edge(a.edge).w) == target) return a.to;
        }
        throw ContractError("no predecessor realizes the replacement distance of " + std::to_string(t));
    };

    parallel_for(o.n, [&](std::size_t i) {
        const Vertex t = static_cast<Vertex>(i);
        if (!tree.reachable(t) || t == o.source) return;
        const std::vector<Vertex> path = tree.root_path(t);
        const std::size_t top = tree.depth(o.anchor[t]);
        for (std::size_t j = o.near_offsets[t]; j < o.near_offsets[t + 1]; ++j) {
            const Vertex elem = path[top + 1 + (j - o.near_offsets[t])];
            o.near_pred[j] = last(t, elem, o.near_dist[j]);
        }
        for (std::size_t j = o.break_offsets[t]; j < o.break_offsets[t + 1]; ++j) {
            BreakRecord& b = o.breaks[j];
            b.pred = last(t, path[b.depth], b.dist);
        }
    });
    o.has_paths = true;
}

std::vector<Vertex> report_path(const Oracle& o, Vertex t, EdgeId e) {
    check_target(o, t);
    return walk(o, t, edge_element(o, e));
}

std::vector<Vertex> report_path_vertex(const Oracle& o, Vertex t, Vertex v) {
    check_target(o, t);
    return walk(o, t, vertex_element(o, v));
}

}  // namespace ssdso

#include "ssdso/pivots.hpp"

#include <queue>

namespace ssdso {

PivotAssignment select_pivots(const ShortestPathTree& tree, std::size_t block) {
    if (block < 1) throw InputError("pivot block parameter must be at least 1");
    const std::size_t n = tree.num_vertices();
    const Vertex s = tree.source();
    const auto& lca = tree.lca();

    PivotAssignment out;
    out.block = block;
    out.assigned.assign(n, kNoVertex);

    std::vector<Vertex> live_children(n, 0);
    for (Vertex v : lca.preorder())
        if (v != s) ++live_children[tree.parent(v)];

    // max-heap on |P(s, v)|, smaller id first on ties
    auto cmp = [&](Vertex a, Vertex b) {
        if (tree.depth(a) != tree.depth(b)) return tree.depth(a) < tree.depth(b);
        return a > b;
    };
    std::priority_queue<Vertex, std::vector<Vertex>, decltype(cmp)> leaves(cmp);
    for (Vertex v : lca.preorder())
        if (live_children[v] == 0) leaves.push(v);

    std::vector<char> removed(n, 0);
    while (!leaves.empty()) {
        const Vertex v = leaves.top();
        leaves.pop();
        if (removed[v]) continue;
        if (tree.depth(v) + 1 <= block) break;
        Vertex x = v;
        for (std::size_t steps = 1; steps < block; ++steps) x = tree.parent(x);
        out.pivots.push_back(x);
        const std::size_t first = lca.preorder_index(x);
        const std::size_t last = first + lca.subtree_size(x);
        for (std::size_t p = first; p < last; ++p) {
            const Vertex w = lca.preorder()[p];
            if (removed[w]) continue;
            removed[w] = 1;
            out.assigned[w] = x;
        }
        const Vertex up = tree.parent(x);
        if (--live_children[up] == 0) leaves.push(up);
    }
    out.pivots.push_back(s);
    for (Vertex v : lca.preorder())
        if (!removed[v]) out.assigned[v] = s;
    return out;
}

std::vector<Vertex> anchor_pivots(const ShortestPathTree& tree, const PivotAssignment& pivots) {
    std::vector<Vertex> anchor(pivots.assigned);
    for (Vertex x : pivots.pivots)
        if (x != tree.source()) anchor[x] = pivots.assigned[tree.parent(x)];
    return anchor;
}

}  // namespace ssdso

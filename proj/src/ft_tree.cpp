#include "ssdso/ft_tree.hpp"

#include <algorithm>
#include <string>

namespace ssdso {

FtTreeStore build_ft_tree_store(const Oracle& o) {
    if (o.mode != FailureMode::edge) throw ContractError("fault-tolerant trees need an edge-failure oracle");
    if (!o.has_paths) throw ContractError("fault-tolerant trees need predecessor data");
    const ShortestPathTree& tree = o.tree;

    FtTreeStore ft;
    const std::size_t slots = o.pivots.pivots.size();
    std::vector<std::vector<Vertex>> by_anchor(slots);
    for (Vertex t = 0; t < o.n; ++t)
        if (tree.reachable(t) && t != o.source) by_anchor[o.far_slot[o.anchor[t]]].push_back(t);

    ft.target_offsets.push_back(0);
    ft.segment_offsets.push_back(0);
    ft.entry_offsets.push_back(0);
    ft.carry_offsets.push_back(0);
    ft.depth_offsets.push_back(0);
    std::vector<FtEntry> latest(o.n);
    std::vector<char> has_latest(o.n, 0);

    for (std::size_t slot = 0; slot < slots; ++slot) {
        const auto& members = by_anchor[slot];
        ft.targets.insert(ft.targets.end(), members.begin(), members.end());
        ft.target_offsets.push_back(ft.targets.size());

        std::vector<FtEntry> records;
        for (Vertex t : members)
            for (const BreakRecord& b : o.break_points(t)) records.push_back({t, b.depth, b.dist, b.pred});
        std::sort(records.begin(), records.end(), [](const FtEntry& a, const FtEntry& b) {
            return std::pair(a.depth, a.target) < std::pair(b.depth, b.target);
        });
        if (records.empty()) {
            ft.segment_offsets.push_back(ft.segment_start.size());
            ft.depth_offsets.push_back(ft.depth_segment.size());
            continue;
        }

        // whole depth groups; close once a segment holds h records and more than h remain
        const std::size_t h = members.size();
        std::vector<std::size_t> cuts{0};
        for (std::size_t i = 0, count = 0; i < records.size();) {
            std::size_t j = i;
            while (j < records.size() && records[j].depth == records[i].depth) ++j;
            count += j - i;
            i = j;
            if (count >= h && records.size() - i > h) {
                cuts.push_back(i);
                count = 0;
            }
        }
        cuts.push_back(records.size());

        const Vertex x = o.pivots.pivots[slot];
        const std::size_t first_segment = ft.segment_start.size();
        for (Vertex t : members) has_latest[t] = 0;
        for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
            ft.segment_start.push_back(c == 0 ? 1 : records[cuts[c]].depth);
            for (Vertex t : members)
                if (has_latest[t]) ft.carried.push_back(latest[t]);
            ft.carry_offsets.push_back(ft.carried.size());
            for (std::size_t r = cuts[c]; r < cuts[c + 1]; ++r) {
                ft.entries.push_back(records[r]);
                latest[records[r].target] = records[r];
                has_latest[records[r].target] = 1;
            }
            ft.entry_offsets.push_back(ft.entries.size());
        }
        ft.segment_offsets.push_back(ft.segment_start.size());

        Vertex local = 0;
        for (std::size_t k = 1; k <= tree.depth(x); ++k) {
            while (first_segment + local + 1 < ft.segment_start.size() && ft.segment_start[first_segment + local + 1] <= k)
                ++local;
            ft.depth_segment.push_back(local);
        }
        ft.depth_offsets.push_back(ft.depth_segment.size());
    }
    return ft;
}

std::vector<Vertex> report_tree(const FtTreeStore& ft, const Oracle& o, EdgeId e) {
    if (o.mode != FailureMode::edge) throw InputError("tree query on a vertex-failure oracle");
    if (e >= o.m) throw InputError("edge id " + std::to_string(e) + " out of range");
    if (!o.has_paths) throw ContractError("oracle has no path-reporting data");
    const ShortestPathTree& tree = o.tree;
    std::vector<Vertex> parent(tree.parents().begin(), tree.parents().end());
    const Vertex v = o.edge_child[e];
    if (v == kNoVertex) return parent;

    const std::size_t k = tree.depth(v);
    const auto& lca = tree.lca();
    const std::size_t first = lca.preorder_index(v), last = first + lca.subtree_size(v);

    // near targets
    for (std::size_t p = first; p < last; ++p) {
        const Vertex t = lca.preorder()[p];
        const std::size_t top = tree.depth(o.anchor[t]);
        if (k > top) {
            const std::size_t idx = o.near_offsets[t] + k - top - 1;
            parent[t] = o.near_dist[idx] == kInf ? kNoVertex : o.near_pred[idx];
        }
    }

    // far targets: anchors inside the subtree of v
    std::vector<const FtEntry*> rec(o.n, nullptr);
    for (std::size_t slot = 0; slot < o.pivots.pivots.size(); ++slot) {
        const Vertex x = o.pivots.pivots[slot];
        if (!tree.is_ancestor(v, x)) continue;
        const auto members = std::span(ft.targets).subspan(ft.target_offsets[slot],
                                                           ft.target_offsets[slot + 1] - ft.target_offsets[slot]);
        if (ft.num_segments(slot) > 0) {
            const std::size_t seg = ft.segment_offsets[slot] + ft.depth_segment[ft.depth_offsets[slot] + k - 1];
            for (std::size_t i = ft.carry_offsets[seg]; i < ft.carry_offsets[seg + 1]; ++i)
                rec[ft.carried[i].target] = &ft.carried[i];
            for (std::size_t i = ft.entry_offsets[seg]; i < ft.entry_offsets[seg + 1] && ft.entries[i].depth <= k; ++i)
                rec[ft.entries[i].target] = &ft.entries[i];
        }
        const std::size_t far_base = o.far_offsets[slot];
        const Dist via = o.far_dist[far_base + k - 1];
        for (Vertex t : members) {
            const Dist via_x = sat_add(via, tree.dist(t) - tree.dist(x));
            const FtEntry* r = rec[t];
            rec[t] = nullptr;
            if (r && r->dist < via_x)
                parent[t] = r->pred;
            else if (via_x == kInf)
                parent[t] = kNoVertex;
        }
    }
    return parent;
}

}  // namespace ssdso

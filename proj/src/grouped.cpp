#include "ssdso/grouped.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "oracle_internal.hpp"

namespace ssdso {

std::size_t constant_query_block(std::size_t n, Dist max_weight) {
    const double ratio = static_cast<double>(n) / static_cast<double>(max_weight);
    std::size_t b = static_cast<std::size_t>(std::cbrt(ratio));
    while (static_cast<double>(b) * b * b < ratio) ++b;
    while (b > 1 && static_cast<double>(b - 1) * (b - 1) * (b - 1) >= ratio) --b;
    return std::max<std::size_t>(b, 1);
}

GroupedOracle build_constant_query(const Graph& g, const ShortestPathTree& tree, const SsrpTable& ssrp) {
    const std::size_t n = g.num_vertices();
    const std::size_t block = std::min(constant_query_block(n, g.max_weight()), n);

    GroupedOracle out;
    out.base = detail::assemble_oracle(g, tree, ssrp, block);
    Oracle& o = out.base;
    out.group_of.assign(n, kNoVertex);
    out.slot_of.assign(n, kNoVertex);

    std::vector<std::vector<Vertex>> targets(n);
    for (Vertex t = 0; t < n; ++t)
        if (tree.reachable(t) && t != o.source) targets[o.anchor[t]].push_back(t);

    out.value_offsets.push_back(0);
    out.pointer_offsets.push_back(0);
    for (Vertex x : o.pivots.pivots) {
        const auto& all = targets[x];
        if (all.empty()) continue;
        const std::size_t groups = all.size() <= 2 * block ? 1 : all.size() / block;
        const std::size_t base_size = all.size() / groups, extra = all.size() % groups;
        const std::size_t len = tree.depth(x);
        const std::vector<Vertex> path = tree.root_path(x);
        std::size_t at = 0;
        for (std::size_t gi = 0; gi < groups; ++gi) {
            const std::size_t size = base_size + (gi < extra ? 1 : 0);
            const std::span<const Vertex> members(all.data() + at, size);
            at += size;
            const Vertex id = static_cast<Vertex>(out.group_anchor.size());

            std::vector<Vertex> positions;
            for (std::size_t slot = 0; slot < size; ++slot) {
                out.group_of[members[slot]] = id;
                out.slot_of[members[slot]] = static_cast<Vertex>(slot);
                for (const BreakRecord& b : o.break_points(members[slot])) positions.push_back(b.depth);
            }
            std::sort(positions.begin(), positions.end());
            positions.erase(std::unique(positions.begin(), positions.end()), positions.end());

            // latest record of each target at or above every shared position
            std::vector<Dist> table(positions.size() * size, kInf);
            for (std::size_t slot = 0; slot < size; ++slot) {
                const auto list = o.break_points(members[slot]);
                std::size_t r = 0;
                Dist current = kInf;
                for (std::size_t p = 0; p < positions.size(); ++p) {
                    while (r < list.size() && list[r].depth <= positions[p]) current = list[r++].dist;
                    table[p * size + slot] = current;
                }
            }

            std::vector<Vertex> ptr(len, kNoVertex);
            std::size_t p = 0;
            for (std::size_t k = 1; k <= len && !positions.empty(); ++k) {
                while (p + 1 < positions.size() && positions[p + 1] <= k) ++p;
                if (positions[p] > k) continue;
                const Vertex elem = path[k];
                bool far_two = false;
                for (Vertex t : members) far_two |= query_element(o, t, elem).case_tag == CaseTag::far_II;
                if (far_two) ptr[k - 1] = static_cast<Vertex>(p);
            }

            out.group_anchor.push_back(x);
            out.group_size.push_back(static_cast<Vertex>(size));
            out.union_count.push_back(positions.size());
            out.values.insert(out.values.end(), table.begin(), table.end());
            out.value_offsets.push_back(out.values.size());
            out.pointers.insert(out.pointers.end(), ptr.begin(), ptr.end());
            out.pointer_offsets.push_back(out.pointers.size());
        }
    }
    o.breaks.clear();
    o.break_offsets.assign(n + 1, 0);
    return out;
}

QueryAnswer query_constant_element(const GroupedOracle& go, Vertex t, Vertex elem, QueryCounter* counter) {
    const Oracle& o = go.base;
    if (t >= o.n) throw InputError("target " + std::to_string(t) + " out of range");
    std::uint64_t local = 0;
    auto done = [&](QueryAnswer a) {
        if (counter) {
            const std::uint64_t before = counter->ops;
            counter->ops += local;
            counter->finish(before);
        }
        return a;
    };
    const ShortestPathTree& tree = o.tree;
    const Dist d = tree.dist(t);
    local += 2;  // dist and ancestor test
    if (elem == kNoVertex || elem == o.source || !tree.is_ancestor(elem, t)) return done({d, CaseTag::irrelevant});
    ++local;
    if (o.mode == FailureMode::vertex && elem == t) return done({kInf, CaseTag::near});
    const Vertex x = o.anchor[t];
    const std::size_t k = tree.depth(elem);
    const std::size_t top = tree.depth(x);
    local += 4;
    if (k > top) {
        local += 2;
        return done({o.near_dist[o.near_offsets[t] + k - top - 1], CaseTag::near});
    }
    const std::size_t slot = o.far_slot[x];
    const std::size_t far_count = o.far_offsets[slot + 1] - o.far_offsets[slot];
    const Dist far = k <= far_count ? o.far_dist[o.far_offsets[slot] + k - 1] : kInf;
    const Dist via_x = sat_add(far, d - tree.dist(x));
    local += 6;

    const Vertex group = go.group_of[t];
    const Vertex pos = go.pointers[go.pointer_offsets[group] + k - 1];
    local += 3;
    if (pos == kNoVertex) return done({via_x, CaseTag::far_I});
    const Dist cand = go.values[go.value_offsets[group] + std::size_t{pos} * go.group_size[group] + go.slot_of[t]];
    local += 4;
    if (cand < via_x) return done({cand, CaseTag::far_II});
    return done({via_x, CaseTag::far_I});
}

QueryAnswer query_constant(const GroupedOracle& o, Vertex t, EdgeId e, QueryCounter* counter) {
    if (o.base.mode != FailureMode::edge) throw InputError("edge query on a vertex-failure oracle");
    if (e >= o.base.m) throw InputError("edge id " + std::to_string(e) + " out of range");
    return query_constant_element(o, t, o.base.edge_child[e], counter);
}

QueryAnswer query_constant_vertex(const GroupedOracle& o, Vertex t, Vertex v, QueryCounter* counter) {
    if (o.base.mode != FailureMode::vertex) throw InputError("vertex query on an edge-failure oracle");
    if (v >= o.base.n) throw InputError("vertex " + std::to_string(v) + " out of range");
    if (v == o.base.source) throw InputError("the source cannot fail");
    return query_constant_element(o, t, v, counter);
}

}  // namespace ssdso

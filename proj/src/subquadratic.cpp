#include "ssdso/subquadratic.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>
#include <string>

#include "ssdso/parallel.hpp"
#include "ssdso/verify.hpp"

namespace ssdso {

namespace {

std::size_t min_block(std::size_t n, double c) {
    const double lo = std::ceil(c * std::log(static_cast<double>(std::max<std::size_t>(n, 1))));
    return std::max<std::size_t>(1, static_cast<std::size_t>(lo));
}

RandomPivotSet with_members(const Graph& g, const ShortestPathTree& tree, std::vector<Vertex> members,
                            std::size_t block) {
    RandomPivotSet r;
    r.block = block;
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    r.index_of.assign(g.num_vertices(), kNoVertex);
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (members[i] >= g.num_vertices())
            throw InputError("random pivot " + std::to_string(members[i]) + " out of range");
        r.index_of[members[i]] = static_cast<Vertex>(i);
    }
    r.along.resize(members.size());
    parallel_for(members.size(), [&](std::size_t i) {
        if (tree.reachable(members[i])) r.along[i] = replacements_along_path(g, tree, members[i]);
    });
    r.members = std::move(members);
    return r;
}

// Latest pair at or above element k, kInf if none.
Dist pair_at(const FarTwoPairs& p, std::size_t k) {
    auto it = std::upper_bound(p.pairs.begin(), p.pairs.end(), k,
                               [](std::size_t key, const FarTwoPair& q) { return key < q.depth; });
    return it == p.pairs.begin() ? kInf : std::prev(it)->dist;
}

}  // namespace

std::size_t clamp_block(std::size_t n, std::size_t block, double c) {
    const std::size_t hi = std::max<std::size_t>(n, 1);
    const std::size_t lo = std::min(min_block(n, c), hi);
    return std::clamp(block, lo, hi);
}

std::size_t subquadratic_block(std::size_t n, std::size_t m, Dist max_weight, double c) {
    const double value = std::pow(static_cast<double>(n), 11.0 / 8.0) /
                         (std::pow(static_cast<double>(max_weight), 1.0 / 8.0) *
                          std::sqrt(static_cast<double>(std::max<std::size_t>(m, 1))));
    return clamp_block(n, static_cast<std::size_t>(std::ceil(value)), c);
}

RandomPivotSet sample_random_pivots(const Graph& g, const ShortestPathTree& tree, std::size_t block, double c,
                                    std::uint64_t seed) {
    if (c <= 0) throw InputError("sampling constant c must be positive");
    const std::size_t n = g.num_vertices();
    block = clamp_block(n, block, c);
    const double p = std::min(1.0, c * std::log(static_cast<double>(std::max<std::size_t>(n, 1))) /
                                       static_cast<double>(block));
    std::mt19937_64 rng(seed);
    std::vector<Vertex> members;
    for (Vertex v = 0; v < n; ++v) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        if (v == tree.source() || u < p) members.push_back(v);
    }
    RandomPivotSet r = with_members(g, tree, std::move(members), block);
    r.c = c;
    r.seed = seed;
    r.probability = p;
    return r;
}

RandomPivotSet forced_random_pivots(const Graph& g, const ShortestPathTree& tree, std::vector<Vertex> members,
                                    std::size_t block) {
    members.push_back(tree.source());
    RandomPivotSet r = with_members(g, tree, std::move(members), std::max<std::size_t>(block, 1));
    r.probability = static_cast<double>(r.members.size()) / static_cast<double>(std::max<std::size_t>(g.num_vertices(), 1));
    return r;
}

ProperPivotIndex assign_proper_pivots(const ShortestPathTree& tree, const PivotAssignment& regular, Dist max_weight,
                                      std::size_t block) {
    const std::size_t n = tree.num_vertices();
    const Vertex s = tree.source();
    const Dist reach = 4 * max_weight * static_cast<Dist>(block);
    ProperPivotIndex out;
    out.regular = regular;
    out.first.assign(n, kNoVertex);
    out.second.assign(n, kNoVertex);

    // pivots on the current root path, in preorder
    const auto& lca = tree.lca();
    std::vector<Vertex> stack;
    for (Vertex v : lca.preorder()) {
        while (!stack.empty() && !tree.is_ancestor(stack.back(), v)) stack.pop_back();
        if (v != s) {
            // deepest pivot x on the stack with dist(x) + reach <= dist(v)
            auto it = std::upper_bound(stack.begin(), stack.end(), tree.dist(v), [&](Dist d, Vertex x) {
                return d < sat_add(tree.dist(x), reach);
            });
            out.first[v] = it == stack.begin() ? s : *std::prev(it);
        } else {
            out.first[v] = s;
        }
        if (regular.is_pivot(v)) stack.push_back(v);
    }
    for (Vertex v = 0; v < n; ++v)
        if (out.first[v] != kNoVertex) out.second[v] = out.first[v] == s ? s : out.first[out.first[v]];
    return out;
}

FarPivotData far_pivot_data(const Graph& g, const ShortestPathTree& tree, Vertex x) {
    FarPivotData d;
    d.pivot = x;
    d.along = replacements_along_path(g, tree, x);
    std::vector<Dist> values(d.along.entries.size());
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = d.along.entries[i].dist;
    d.rmq = RangeMaxIndex(std::move(values));
    return d;
}

FarTwoPairs search_far_two(const ShortestPathTree& tree, Vertex t, const FarPivotData& x2, const RandomPivotSet& r) {
    const Vertex x = x2.pivot;
    if (x == t || !tree.is_ancestor(x, t)) throw ContractError("search pivot must lie strictly above the target");
    if (x2.along.path.size() != tree.depth(x) + 1) throw ContractError("far-I data does not match the pivot");
    FarTwoPairs out;
    out.target = t;
    out.pivot = x;
    const std::size_t count = tree.depth(x);
    if (count == 0) return out;
    const Dist to_t = tree.dist(t) - tree.dist(x);
    const auto& path = x2.along.path;

    // pivots whose shortest path to t avoids P(s, x2)
    std::vector<std::size_t> usable;
    for (std::size_t i = 0; i < r.members.size(); ++i) {
        const Vertex chi = r.members[i];
        if (!tree.reachable(chi)) continue;
        const Dist d = r.along[i].target_tree.dist(t);
        if (d < to_t) usable.push_back(i);
    }

    std::vector<IntervalTask> stack{{1, count, kInf, 0}};
    while (!stack.empty()) {
        const IntervalTask task = stack.back();
        stack.pop_back();
        if (task.a > task.b || task.lower > task.upper) continue;
        const auto [top, idx] = x2.rmq.query(task.a - 1, task.b - 1);
        const Dist mu = sat_add(top, to_t);
        const std::size_t j = idx + 1;
        if (mu <= task.lower) continue;

        Dist delta = kInf;
        std::size_t split = 0;
        Vertex via = kNoVertex;
        for (std::size_t i : usable) {
            const Vertex chi = r.members[i];
            const auto& rp = r.along[i];
            Dist value;
            std::size_t div;
            if (tree.is_ancestor(path[j], chi)) {
                const auto& entry = rp.at(j);
                if (entry.dist == kInf) continue;
                value = entry.dist;
                div = tree.depth(entry.divergence);
            } else {
                value = tree.dist(chi);
                div = x2.along.touch_depth[chi];
            }
            const Dist total = sat_add(value, rp.target_tree.dist(t));
            if (total < delta || (total == delta && div < split)) {
                delta = total;
                split = div;
                via = chi;
            }
        }
        ++out.searches;

        if (delta >= mu || delta > task.upper) {
            ++out.unsuccessful;
            stack.push_back({j + 1, task.b, task.upper, task.lower});
            continue;
        }
        if (split >= j) throw ContractError("replacement path diverges below the failing edge");
        if (delta < task.lower) ++out.bound_violations;
        const std::size_t lo = std::max(task.a, split + 1);
        const std::size_t i = x2.rmq.first_above(lo - 1, j - 1, delta - to_t) + 1;
        out.pairs.push_back({delta, static_cast<Vertex>(i), path[split], via});
        stack.push_back({j + 1, task.b, delta - 1, task.lower});
        stack.push_back({task.a, i - 1, task.upper, delta + 1});
    }
    std::sort(out.pairs.begin(), out.pairs.end(),
              [](const FarTwoPair& a, const FarTwoPair& b) { return a.depth < b.depth; });
    return out;
}

NearCaseResult near_case_subquadratic(const Graph& g, const ShortestPathTree& tree, const ProperPivotIndex& proper,
                                      const std::vector<FarPivotData>& far_data,
                                      const std::vector<Vertex>& far_slot,
                                      const std::vector<FarTwoPairs>& far_pairs) {
    const std::size_t n = g.num_vertices();
    const Vertex s = tree.source();
    NearCaseResult out;
    out.first.assign(n, 0);
    out.offsets.assign(n + 1, 0);
    for (Vertex t = 0; t < n; ++t) {
        std::size_t len = 0;
        if (tree.reachable(t) && t != s) {
            out.first[t] = static_cast<Vertex>(tree.depth(proper.second[t]) + 1);
            len = tree.depth(t) + 1 - out.first[t];
        }
        out.offsets[t + 1] = out.offsets[t] + len;
    }
    out.dist.assign(out.offsets[n], kInf);
    out.pred.assign(out.offsets[n], kNoVertex);

    // V_e for the tree edge above v: targets below v whose D2-pivot lies above v
    std::vector<std::vector<Vertex>> members(n);
    for (Vertex t = 0; t < n; ++t) {
        if (!tree.reachable(t) || t == s) continue;
        for (Vertex v = t; v != proper.second[t]; v = tree.parent(v)) members[v].push_back(t);
    }
    std::vector<Vertex> edges;
    for (Vertex v = 0; v < n; ++v) {
        std::sort(members[v].begin(), members[v].end());
        if (!members[v].empty()) edges.push_back(v);
    }
    out.graphs = edges.size();

    auto known = [&](Vertex y, Vertex v, std::size_t k) -> Dist {
        if (!tree.reachable(y)) return kInf;
        if (!tree.is_ancestor(v, y)) return tree.dist(y);
        const Vertex x2 = proper.second[y];
        if (tree.depth(x2) < k || far_slot[x2] == kNoVertex || far_pairs[y].pivot != x2)
            throw ContractError("shortcut distance of vertex " + std::to_string(y) + " is unresolved");
        const Dist via = sat_add(far_data[far_slot[x2]].far(k), tree.dist(y) - tree.dist(x2));
        return std::min(via, pair_at(far_pairs[y], k));
    };

    parallel_for(edges.size(), [&](std::size_t ei) {
        const Vertex v = edges[ei];
        const EdgeId failed = tree.parent_edge(v);
        const std::size_t k = tree.depth(v);
        const auto& set = members[v];
        auto local = [&](Vertex y) -> std::size_t {
            auto it = std::lower_bound(set.begin(), set.end(), y);
            return it != set.end() && *it == y ? static_cast<std::size_t>(it - set.begin()) : set.size();
        };
        std::vector<Dist> dist(set.size(), kInf);
        std::vector<Vertex> pred(set.size(), kNoVertex);
        for (std::size_t i = 0; i < set.size(); ++i) {
            for (const Arc& a : g.neighbors(set[i])) {
                if (a.edge == failed || local(a.to) < set.size()) continue;
                const Dist d = sat_add(known(a.to, v, k), g.edge(a.edge).w);
                if (d < dist[i] || (d == dist[i] && a.to < pred[i])) {
                    dist[i] = d;
                    pred[i] = a.to;
                }
            }
        }
        using Item = std::pair<Dist, std::size_t>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
        for (std::size_t i = 0; i < set.size(); ++i)
            if (dist[i] != kInf) heap.push({dist[i], i});
        std::vector<char> done(set.size(), 0);
        while (!heap.empty()) {
            const auto [d, i] = heap.top();
            heap.pop();
            if (done[i] || d != dist[i]) continue;
            done[i] = 1;
            for (const Arc& a : g.neighbors(set[i])) {
                if (a.edge == failed) continue;
                const std::size_t j = local(a.to);
                if (j == set.size() || done[j]) continue;
                const Dist nd = d + g.edge(a.edge).w;
                if (nd < dist[j] || (nd == dist[j] && set[i] < pred[j])) {
                    dist[j] = nd;
                    pred[j] = set[i];
                    heap.push({nd, j});
                }
            }
        }
        for (std::size_t i = 0; i < set.size(); ++i) {
            const Vertex t = set[i];
            const std::size_t slot = out.offsets[t] + k - out.first[t];
            out.dist[slot] = dist[i];
            out.pred[slot] = pred[i];
        }
    });
    return out;
}

SubquadraticResult build_subquadratic(const Graph& g, Vertex source, const SubquadraticParams& params) {
    const std::size_t n = g.num_vertices();
    if (!g.valid_vertex(source)) throw InputError("source " + std::to_string(source) + " out of range");
    if (params.c <= 0) throw InputError("sampling constant c must be positive");
    const Dist M = g.max_weight();

    SubquadraticResult result;
    SubquadraticStats& st = result.stats;
    const ShortestPathTree tree = shortest_path_tree(g, source);

    // regular pivots, exactly as the deterministic build chooses them
    const bool dense = M > n;
    const std::size_t regular_block = dense ? n : default_block(n);
    const PivotAssignment regular = select_pivots(tree, regular_block);

    const std::size_t block =
        params.block == 0 ? subquadratic_block(n, g.num_edges(), M, params.c) : clamp_block(n, params.block, params.c);
    RandomPivotSet r;
    if (params.full_sample) {
        std::vector<Vertex> all(n);
        for (Vertex v = 0; v < n; ++v) all[v] = v;
        r = forced_random_pivots(g, tree, std::move(all), block);
    } else {
        r = sample_random_pivots(g, tree, block, params.c, params.seed);
    }
    st.sample_block = block;
    st.probability = r.probability;
    st.random_pivots = r.members.size();
    st.sample_bound = 2.0 * params.c * static_cast<double>(n) * std::log(static_cast<double>(std::max<std::size_t>(n, 1))) /
                          static_cast<double>(block) + 1.0;
    st.sample_within_bound = static_cast<double>(st.random_pivots) <= st.sample_bound;
    st.regular_pivots = regular.pivots.size();

    const ProperPivotIndex proper = assign_proper_pivots(tree, regular, M, block);

    std::vector<Vertex> far_slot(n, kNoVertex);
    for (std::size_t i = 0; i < regular.pivots.size(); ++i) far_slot[regular.pivots[i]] = static_cast<Vertex>(i);
    std::vector<FarPivotData> far_data(regular.pivots.size());
    parallel_for(far_data.size(), [&](std::size_t i) { far_data[i] = far_pivot_data(g, tree, regular.pivots[i]); });

    std::vector<FarTwoPairs> pairs(n);
    parallel_for(n, [&](std::size_t i) {
        const Vertex t = static_cast<Vertex>(i);
        if (!tree.reachable(t) || t == source) return;
        pairs[t] = search_far_two(tree, t, far_data[far_slot[proper.second[t]]], r);
    });
    const double unsuccessful_scale = std::pow(static_cast<double>(M), 0.75) * std::pow(static_cast<double>(n), 0.75);
    for (const auto& p : pairs) {
        st.searches += p.searches;
        st.unsuccessful_total += p.unsuccessful;
        st.unsuccessful_max = std::max(st.unsuccessful_max, p.unsuccessful);
        st.pairs_total += p.pairs.size();
        st.interval_bound_violations += p.bound_violations;
    }
    st.unsuccessful_constant = static_cast<double>(st.unsuccessful_max) / unsuccessful_scale;

    const NearCaseResult near = near_case_subquadratic(g, tree, proper, far_data, far_slot, pairs);
    st.near_graphs = near.graphs;
    st.near_elements = near.dist.size();
    const Dist reach = 4 * M * static_cast<Dist>(block);
    for (Vertex t = 0; t < n; ++t) {
        if (!tree.reachable(t) || t == source) continue;
        const Vertex x2 = proper.second[t];
        const Vertex outer = x2 == source ? source : proper.second[x2];
        for (Vertex v = t; v != x2; v = tree.parent(v)) {
            if (tree.dist(v) - tree.dist(x2) > reach) ++st.near_literal_violations;
            if (tree.dist(v) - tree.dist(outer) > reach) ++st.near_literal_violations_outer;
        }
    }

    // reassemble relative to the regular anchors
    Oracle& o = result.oracle;
    o.mode = FailureMode::edge;
    o.n = n;
    o.m = g.num_edges();
    o.max_weight = M;
    o.source = source;
    o.block = regular_block;
    o.dense = dense;
    o.tree = tree;
    o.pivots = regular;
    o.rebuild_indexes();

    o.near_offsets.assign(n + 1, 0);
    for (Vertex t = 0; t < n; ++t) {
        const std::size_t len = tree.reachable(t) ? tree.depth(t) - tree.depth(o.anchor[t]) : 0;
        o.near_offsets[t + 1] = o.near_offsets[t] + len;
    }
    o.near_dist.assign(o.near_offsets[n], kInf);
    for (Vertex t = 0; t < n; ++t) {
        if (!tree.reachable(t) || t == source) continue;
        const std::size_t top = tree.depth(o.anchor[t]);
        for (std::size_t k = top + 1; k <= tree.depth(t); ++k) o.near_dist[o.near_offsets[t] + k - top - 1] = near.at(t, k);
    }

    o.far_offsets.assign(regular.pivots.size() + 1, 0);
    for (std::size_t i = 0; i < regular.pivots.size(); ++i) {
        const auto& entries = far_data[i].along.entries;
        o.far_offsets[i + 1] = o.far_offsets[i] + entries.size();
        for (const auto& e : entries) o.far_dist.push_back(e.dist);
    }

    std::vector<std::vector<BreakRecord>> lists(n);
    std::vector<char> non_monotone(n, 0);
    parallel_for(n, [&](std::size_t i) {
        const Vertex t = static_cast<Vertex>(i);
        if (!tree.reachable(t) || t == source) return;
        const Vertex x = o.anchor[t];
        const FarPivotData& fx = far_data[far_slot[x]];
        const Dist to_t = tree.dist(t) - tree.dist(x);
        const std::size_t upper = tree.depth(proper.second[t]);
        const auto& plist = pairs[t].pairs;
        auto& out = lists[t];
        Dist prev = kInf;
        for (std::size_t l = 0; l < plist.size(); ++l) {
            const std::size_t a = plist[l].depth;
            const std::size_t b = l + 1 < plist.size() ? plist[l + 1].depth - 1 : upper;
            if (a > b) continue;
            const Dist d = plist[l].dist;
            const std::size_t k = fx.rmq.first_above(a - 1, b - 1, d >= to_t ? d - to_t : 0) + 1;
            if (k > b) continue;
            if (prev != kInf && d >= prev) {
                non_monotone[t] = 1;
                continue;
            }
            out.push_back({tree.dist(fx.along.path[k - 1]), d, static_cast<Vertex>(k), kNoVertex});
            prev = d;
        }
        for (std::size_t k = upper + 1; k <= tree.depth(x); ++k) {
            const Dist d = near.at(t, k);
            if (d >= sat_add(fx.far(k), to_t)) continue;
            if (prev != kInf && d > prev) {
                non_monotone[t] = 1;
                continue;
            }
            if (d < prev) out.push_back({tree.dist(fx.along.path[k - 1]), d, static_cast<Vertex>(k), kNoVertex});
            prev = d;
        }
    });

    const double bound = break_point_bound(FailureMode::edge, n, M);
    o.break_offsets.assign(n + 1, 0);
    for (Vertex t = 0; t < n; ++t) {
        if (static_cast<double>(lists[t].size()) > bound) ++st.pair_bound_violations;
        st.monotonicity_violations += non_monotone[t];
        o.break_offsets[t + 1] = o.break_offsets[t] + lists[t].size();
    }
    for (auto& list : lists) o.breaks.insert(o.breaks.end(), list.begin(), list.end());

    if (params.paths) {
        try {
            augment_path_reporting(g, o);
        } catch (const ContractError&) {
            st.paths_ok = false;
            o.has_paths = false;
            o.near_pred.clear();
            for (auto& b : o.breaks) b.pred = kNoVertex;
        }
    }

    if (params.verify) {
        const VerifyReport report = verify_oracle(g, o);
        st.verified = true;
        st.verify_checked = report.checked;
        st.verify_mismatches = report.mismatch_count;
    }
    return result;
}

}  // namespace ssdso

#include "ssdso/verify.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "ssdso/io.hpp"
#include "ssdso/parallel.hpp"

namespace ssdso {

namespace {

using Answer = std::function<Dist(Vertex t, Vertex elem)>;

// One direct search per failure, diffed against every target's answer.
VerifyReport diff_all(const Graph& g, const Oracle& o, const Answer& answer) {
    const ShortestPathTree& tree = o.tree;
    const std::size_t n = o.n;
    std::vector<Vertex> elems;
    for (Vertex v = 0; v < n; ++v)
        if (tree.reachable(v) && v != o.source) elems.push_back(v);

    std::vector<std::vector<Mismatch>> found(elems.size());
    std::vector<std::size_t> counts(elems.size(), 0);
    parallel_for(elems.size(), [&](std::size_t i) {
        const Vertex v = elems[i];
        Failure f;
        std::uint32_t id = v;
        if (o.mode == FailureMode::edge) {
            f.edge = tree.parent_edge(v);
            id = tree.parent_edge(v);
        } else {
            f.vertex = v;
        }
        const std::vector<Dist> expect = shortest_distances(g, o.source, f);
        for (Vertex t = 0; t < n; ++t) {
            const Dist got = answer(t, v);
            if (got == expect[t]) continue;
            ++counts[i];
            if (found[i].size() < VerifyReport::kMaxListed) found[i].push_back({t, o.mode, id, expect[t], got});
        }
    });

    VerifyReport r;
    r.checked = elems.size() * n;
    for (std::size_t i = 0; i < elems.size(); ++i) {
        r.mismatch_count += counts[i];
        for (const Mismatch& m : found[i])
            if (r.mismatches.size() < VerifyReport::kMaxListed) r.mismatches.push_back(m);
    }
    return r;
}

}  // namespace

std::string Mismatch::message(const Graph& g) const {
    std::ostringstream out;
    out << "t=" << target << " failure=";
    if (mode == FailureMode::edge) {
        out << "edge " << failure;
        if (failure < g.num_edges()) out << " {" << g.edge(failure).u << "," << g.edge(failure).v << "}";
    } else {
        out << "vertex " << failure;
    }
    out << " expected=" << dist_to_string(expected) << " got=" << dist_to_string(got);
    return out.str();
}

double standard_space_scale(std::uint64_t n, std::uint64_t max_weight) {
    const double dn = static_cast<double>(n);
    return std::sqrt(static_cast<double>(max_weight)) * dn * std::sqrt(dn) + dn;
}

double grouped_space_scale(std::uint64_t n, std::uint64_t max_weight) {
    const double dn = static_cast<double>(n);
    return std::cbrt(static_cast<double>(max_weight)) * std::pow(dn, 5.0 / 3.0) + dn;
}

VerifyReport verify_oracle(const Graph& g, const Oracle& o) {
    if (g.num_vertices() != o.n || g.num_edges() != o.m) throw InputError("oracle was built for another graph");
    VerifyReport r = diff_all(g, o, [&](Vertex t, Vertex elem) { return query_element(o, t, elem).distance; });
    r.words = payload_words(serialize_oracle(o));
    r.space_constant = static_cast<double>(r.words) / standard_space_scale(o.n, o.max_weight);
    for (Vertex t = 0; t < o.n; ++t) r.max_break_points = std::max(r.max_break_points, o.break_points(t).size());
    r.break_point_ratio = static_cast<double>(r.max_break_points) /
                          std::sqrt(static_cast<double>(o.max_weight) * static_cast<double>(o.n));
    return r;
}

VerifyReport verify_oracle(const Graph& g, const GroupedOracle& go) {
    const Oracle& o = go.base;
    if (g.num_vertices() != o.n || g.num_edges() != o.m) throw InputError("oracle was built for another graph");
    VerifyReport r = diff_all(g, o, [&](Vertex t, Vertex elem) { return query_constant_element(go, t, elem).distance; });
    // op counts in a sequential pass so the counter is not shared across workers
    QueryCounter total;
    for (Vertex v = 0; v < o.n; ++v) {
        if (!o.tree.reachable(v) || v == o.source) continue;
        for (Vertex t = 0; t < o.n; ++t) query_constant_element(go, t, v, &total);
    }
    r.max_query_ops = total.max_ops;
    r.words = payload_words(serialize_oracle(go));
    r.space_constant = static_cast<double>(r.words) / grouped_space_scale(o.n, o.max_weight);
    for (std::size_t gi = 0; gi < go.union_count.size(); ++gi)
        r.max_break_points = std::max<std::size_t>(r.max_break_points, go.union_count[gi]);
    r.break_point_ratio = static_cast<double>(r.max_break_points) /
                          std::sqrt(static_cast<double>(o.max_weight) * static_cast<double>(o.n));
    return r;
}

std::string bench_csv_header() { return "instance,n,m,M,mode,variant,build_ms,query_ns,words"; }

std::string bench_csv_row(const BenchRow& row) {
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(3);
    out << row.instance << ',' << row.n << ',' << row.m << ',' << row.max_weight << ',' << row.mode << ','
        << row.variant << ',' << row.build_ms << ',' << row.query_ns << ',' << row.words;
    return out.str();
}

}  // namespace ssdso

// Python bindings: build, query, serialize and verify oracles.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "ssdso/ft_tree.hpp"
#include "ssdso/generators.hpp"
#include "ssdso/grouped.hpp"
#include "ssdso/io.hpp"
#include "ssdso/oracle.hpp"
#include "ssdso/subquadratic.hpp"
#include "ssdso/verify.hpp"

namespace py = pybind11;
using namespace ssdso;

namespace {

using EdgeTuple = std::tuple<Vertex, Vertex, Dist>;

Graph make_graph(std::size_t n, const std::vector<EdgeTuple>& edges) {
    std::vector<Edge> list;
    list.reserve(edges.size());
    Dist max_weight = 1;
    for (const auto& [u, v, w] : edges) {
        list.push_back({u, v, w});
        max_weight = std::max(max_weight, w);
    }
    return Graph(n, max_weight, list);
}

std::vector<EdgeTuple> edge_list(const Graph& g) {
    std::vector<EdgeTuple> out;
    for (const Edge& e : g.edges()) out.emplace_back(e.u, e.v, e.w);
    return out;
}

py::object distance(Dist d) { return d == kInf ? py::object(py::none()) : py::object(py::int_(d)); }

FailureMode parse_mode(const std::string& s) {
    if (s == "edge") return FailureMode::edge;
    if (s == "vertex") return FailureMode::vertex;
    throw InputError("mode must be 'edge' or 'vertex'");
}

// Oracle handle as seen from Python; owns one stored blob's worth of state.
struct PyOracle {
    StoredOracle so;

    const Oracle& base() const { return so.base(); }

    void check_target(Vertex t) const {
        if (t >= base().n) throw InputError("target out of range");
    }

    Vertex edge_element(Vertex u, Vertex v) const {
        if (base().mode != FailureMode::edge) throw InputError("edge failure on a vertex-failure oracle");
        if (u >= base().n || v >= base().n) throw InputError("edge endpoint out of range");
        return base().tree.tree_child(u, v);
    }

    Vertex vertex_element(Vertex v) const {
        if (base().mode != FailureMode::vertex) throw InputError("vertex failure on an edge-failure oracle");
        if (v >= base().n) throw InputError("vertex out of range");
        if (v == base().source) throw InputError("the source cannot fail");
        return v;
    }

    QueryAnswer answer(Vertex t, Vertex elem) const {
        check_target(t);
        return so.grouped ? query_constant_element(so.grouped_oracle, t, elem) : query_element(base(), t, elem);
    }

    const Oracle& with_paths() const {
        if (so.grouped || !so.oracle.has_paths) throw InputError("oracle was built without paths");
        return so.oracle;
    }

    std::vector<std::uint8_t> blob() const {
        if (so.grouped) return serialize_oracle(so.grouped_oracle);
        return serialize_oracle(so.oracle, so.ft ? &*so.ft : nullptr);
    }
};

PyOracle build(const Graph& g, Vertex source, const std::string& mode_name, const std::string& variant, bool paths,
               bool ft_tree) {
    const FailureMode mode = parse_mode(mode_name);
    if (source >= g.num_vertices()) throw InputError("source out of range");
    const auto tree = shortest_path_tree(g, source);
    const auto table = mode == FailureMode::edge ? ssrp_edge_baseline(g, tree) : ssrp_vertex_baseline(g, tree);
    PyOracle out;
    if (variant == "constant") {
        if (paths || ft_tree) throw InputError("paths and ft_tree need the standard variant");
        out.so.grouped = true;
        out.so.grouped_oracle = build_constant_query(g, tree, table);
        return out;
    }
    if (variant != "standard") throw InputError("variant must be 'standard' or 'constant'");
    out.so.oracle = build_oracle(g, tree, table);
    if (paths || ft_tree) augment_path_reporting(g, out.so.oracle);
    if (ft_tree) {
        if (mode != FailureMode::edge) throw InputError("ft_tree needs edge mode");
        out.so.ft = build_ft_tree_store(out.so.oracle);
    }
    return out;
}

py::dict stats_dict(const SubquadraticStats& st) {
    py::dict d;
    d["sample_block"] = st.sample_block;
    d["probability"] = st.probability;
    d["random_pivots"] = st.random_pivots;
    d["sample_bound"] = st.sample_bound;
    d["sample_within_bound"] = st.sample_within_bound;
    d["regular_pivots"] = st.regular_pivots;
    d["searches"] = st.searches;
    d["unsuccessful_total"] = st.unsuccessful_total;
    d["unsuccessful_max"] = st.unsuccessful_max;
    d["unsuccessful_constant"] = st.unsuccessful_constant;
    d["pairs_total"] = st.pairs_total;
    d["pair_bound_violations"] = st.pair_bound_violations;
    d["interval_bound_violations"] = st.interval_bound_violations;
    d["monotonicity_violations"] = st.monotonicity_violations;
    d["near_graphs"] = st.near_graphs;
    d["near_elements"] = st.near_elements;
    d["paths_ok"] = st.paths_ok;
    d["verified"] = st.verified;
    d["verify_checked"] = st.verify_checked;
    d["verify_mismatches"] = st.verify_mismatches;
    return d;
}

}  // namespace

PYBIND11_MODULE(ssdso, m) {
    m.doc() = "Single-source distance sensitivity oracles";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<ContractError>(m, "ContractError", PyExc_RuntimeError);

    py::class_<Graph>(m, "Graph")
        .def(py::init(&make_graph), py::arg("n"), py::arg("edges"),
             "Undirected graph from (u, v, w) triples with integer weights in [1, M].")
        .def_property_readonly("n", &Graph::num_vertices)
        .def_property_readonly("m", &Graph::num_edges)
        .def_property_readonly("max_weight", &Graph::max_weight)
        .def("edges", &edge_list)
        .def("find_edge", &Graph::find_edge, py::arg("u"), py::arg("v"))
        .def("to_text", [](const Graph& g, Vertex source) { return write_graph(g, source); }, py::arg("source") = 0);

    m.def("parse_graph",
          [](const std::string& text) {
              GraphFile f = parse_graph(text);
              return py::make_tuple(std::move(f.graph), f.source);
          },
          py::arg("text"), "Parse the graph text format; returns (graph, source).");
    m.def("random_graph", &gen_random_graph, py::arg("n"), py::arg("m"), py::arg("max_weight") = 1,
          py::arg("seed") = 1, py::arg("locality") = 0, "Seeded connected random graph.");

    py::class_<PyOracle>(m, "Oracle")
        .def_property_readonly("n", [](const PyOracle& o) { return o.base().n; })
        .def_property_readonly("source", [](const PyOracle& o) { return o.base().source; })
        .def_property_readonly("mode", [](const PyOracle& o) { return o.base().mode == FailureMode::edge ? "edge" : "vertex"; })
        .def_property_readonly("variant", [](const PyOracle& o) { return o.so.grouped ? "constant" : "standard"; })
        .def_property_readonly("has_paths", [](const PyOracle& o) { return !o.so.grouped && o.so.oracle.has_paths; })
        .def_property_readonly("has_ft_tree", [](const PyOracle& o) { return o.so.ft.has_value(); })
        .def("words", [](const PyOracle& o) { return payload_words(o.blob()); })
        .def("query",
             [](const PyOracle& o, Vertex t, Vertex u, Vertex v) { return distance(o.answer(t, o.edge_element(u, v)).distance); },
             py::arg("target"), py::arg("u"), py::arg("v"), "d(s, t, {u,v}); None when t is cut off.")
        .def("query_vertex",
             [](const PyOracle& o, Vertex t, Vertex v) { return distance(o.answer(t, o.vertex_element(v)).distance); },
             py::arg("target"), py::arg("vertex"))
        .def("case",
             [](const PyOracle& o, Vertex t, Vertex u, Vertex v) {
                 return std::string(to_string(o.answer(t, o.edge_element(u, v)).case_tag));
             },
             py::arg("target"), py::arg("u"), py::arg("v"))
        .def("path",
             [](const PyOracle& o, Vertex t, Vertex u, Vertex v) {
                 const Oracle& b = o.with_paths();
                 o.check_target(t);
                 const Vertex elem = o.edge_element(u, v);
                 return elem == kNoVertex ? b.tree.root_path(t) : report_path(b, t, b.tree.parent_edge(elem));
             },
             py::arg("target"), py::arg("u"), py::arg("v"))
        .def("path_vertex",
             [](const PyOracle& o, Vertex t, Vertex v) {
                 const Oracle& b = o.with_paths();
                 o.check_target(t);
                 return report_path_vertex(b, t, o.vertex_element(v));
             },
             py::arg("target"), py::arg("vertex"))
        .def("tree",
             [](const PyOracle& o, Vertex u, Vertex v) {
                 if (!o.so.ft) throw InputError("oracle was built without ft_tree");
                 const Vertex elem = o.edge_element(u, v);
                 std::vector<Vertex> parent(o.base().tree.parents().begin(), o.base().tree.parents().end());
                 if (elem != kNoVertex) parent = report_tree(*o.so.ft, o.so.oracle, o.base().tree.parent_edge(elem));
                 std::vector<std::optional<Vertex>> out;
                 for (Vertex p : parent) out.push_back(p == kNoVertex ? std::nullopt : std::optional<Vertex>(p));
                 return out;
             },
             py::arg("u"), py::arg("v"), "Parent of every vertex in the shortest path tree of G minus {u,v}.")
        .def("to_bytes", [](const PyOracle& o) {
            const auto b = o.blob();
            return py::bytes(reinterpret_cast<const char*>(b.data()), b.size());
        })
        .def_static("from_bytes",
                    [](const py::bytes& data) {
                        const std::string s = data;
                        return PyOracle{deserialize_oracle(std::vector<std::uint8_t>(s.begin(), s.end()))};
                    },
                    py::arg("data"));

    m.def("build", &build, py::arg("graph"), py::arg("source") = 0, py::arg("mode") = "edge",
          py::arg("variant") = "standard", py::arg("paths") = false, py::arg("ft_tree") = false);

    m.def("build_subquadratic",
          [](const Graph& g, Vertex source, std::uint64_t seed, double c, std::size_t block, bool verify) {
              SubquadraticParams p;
              p.seed = seed;
              p.c = c;
              p.block = block;
              p.verify = verify;
              SubquadraticResult r = build_subquadratic(g, source, p);
              PyOracle o;
              o.so.oracle = std::move(r.oracle);
              return py::make_tuple(std::move(o), stats_dict(r.stats));
          },
          py::arg("graph"), py::arg("source") = 0, py::arg("seed") = 1, py::arg("c") = 3.0, py::arg("block") = 0,
          py::arg("verify") = false, "Randomized edge-failure build; returns (oracle, stats).");

    m.def("verify",
          [](const Graph& g, const PyOracle& o) {
              const VerifyReport r = o.so.grouped ? verify_oracle(g, o.so.grouped_oracle) : verify_oracle(g, o.so.oracle);
              py::dict d;
              d["checked"] = r.checked;
              d["mismatch_count"] = r.mismatch_count;
              std::vector<std::string> listed;
              for (const Mismatch& mm : r.mismatches) listed.push_back(mm.message(g));
              d["mismatches"] = listed;
              d["words"] = r.words;
              d["space_constant"] = r.space_constant;
              d["max_break_points"] = r.max_break_points;
              d["max_query_ops"] = r.max_query_ops;
              d["ok"] = r.ok();
              return d;
          },
          py::arg("graph"), py::arg("oracle"));

    m.def("lower_bound_instance",
          [](const BitMatrix& x, Dist max_weight, std::size_t block) {
              LowerBoundInstance inst = gen_lower_bound_instance(x, max_weight, block);
              return py::make_tuple(std::move(inst.graph), inst.source, inst.layout.blocks);
          },
          py::arg("matrix"), py::arg("max_weight"), py::arg("block"), "Returns (graph, source, block_count).");
    m.def("decode_lower_bound",
          [](const std::vector<PyOracle>& oracles, std::size_t rows, Dist max_weight) {
              std::vector<Oracle> list;
              for (const PyOracle& o : oracles) {
                  if (o.so.grouped) throw InputError("decode needs standard edge oracles");
                  list.push_back(o.so.oracle);
              }
              return decode_matrix(list, rows, max_weight);
          },
          py::arg("oracles"), py::arg("rows"), py::arg("max_weight"));
}

// Command-line front end: build, query and check oracles stored as blob files.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "ssdso/ft_tree.hpp"
#include "ssdso/generators.hpp"
#include "ssdso/grouped.hpp"
#include "ssdso/io.hpp"
#include "ssdso/oracle.hpp"
#include "ssdso/subquadratic.hpp"
#include "ssdso/verify.hpp"

using namespace ssdso;

namespace {

constexpr int kOk = 0, kMismatch = 1, kBadInput = 2, kInternal = 3;

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

FailureMode parse_mode(const std::string& s) {
    if (s == "edge") return FailureMode::edge;
    if (s == "vertex") return FailureMode::vertex;
    throw InputError("mode must be edge or vertex");
}

struct Failing {
    std::vector<Vertex> edge;  // two endpoints when set
    long long vertex = -1;
};

void add_failure(CLI::App* cmd, Failing& f) {
    auto* e = cmd->add_option("--fail-edge", f.edge, "Failing edge given by its endpoints")->expected(2);
    auto* v = cmd->add_option("--fail-vertex", f.vertex, "Failing vertex");
    e->excludes(v);
}

// Element addressing of a failure against the oracle's tree.
Vertex failure_element(const Oracle& o, const Failing& f) {
    if (!f.edge.empty()) {
        if (o.mode != FailureMode::edge) throw InputError("--fail-edge needs an edge-failure oracle");
        if (f.edge[0] >= o.n || f.edge[1] >= o.n) throw InputError("edge endpoint out of range");
        return o.tree.tree_child(f.edge[0], f.edge[1]);
    }
    if (f.vertex >= 0) {
        if (o.mode != FailureMode::vertex) throw InputError("--fail-vertex needs a vertex-failure oracle");
        if (static_cast<std::uint64_t>(f.vertex) >= o.n) throw InputError("vertex out of range");
        if (static_cast<Vertex>(f.vertex) == o.source) throw InputError("the source cannot fail");
        return static_cast<Vertex>(f.vertex);
    }
    throw InputError("give --fail-edge u v or --fail-vertex v");
}

void check_target(const Oracle& o, long long t) {
    if (t < 0 || static_cast<std::uint64_t>(t) >= o.n) throw InputError("--target out of range");
}

StoredOracle load(const std::string& path) { return deserialize_oracle(read_binary_file(path)); }

BitMatrix read_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open matrix file " + path);
    BitMatrix x;
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::uint8_t> row;
        for (char c : line) {
            if (c == '0' || c == '1')
                row.push_back(static_cast<std::uint8_t>(c - '0'));
            else if (c != ' ' && c != '\t' && c != '\r')
                throw InputError("matrix file holds characters other than 0 and 1");
        }
        if (!row.empty()) x.push_back(std::move(row));
    }
    if (x.empty()) throw InputError("matrix file is empty");
    return x;
}

std::string matrix_text(const BitMatrix& x) {
    std::string out;
    for (const auto& row : x) {
        for (auto bit : row) out.push_back(bit ? '1' : '0');
        out.push_back('\n');
    }
    return out;
}

// Mean query time over every (target, tree failure) pair.
double mean_query_ns(const StoredOracle& so) {
    const Oracle& o = so.base();
    std::size_t count = 0;
    Dist sink = 0;
    const auto start = Clock::now();
    for (Vertex v = 0; v < o.n; ++v) {
        if (!o.tree.reachable(v) || v == o.source) continue;
        for (Vertex t = 0; t < o.n; ++t) {
            sink ^= so.grouped ? query_constant_element(so.grouped_oracle, t, v).distance
                               : query_element(o, t, v).distance;
            ++count;
        }
    }
    const double ns = std::chrono::duration<double, std::nano>(Clock::now() - start).count();
    if (sink == 42) std::cerr << "";
    return count ? ns / static_cast<double>(count) : 0.0;
}

struct BuildOptions {
    std::string mode = "edge";
    std::string variant = "standard";
    bool paths = false;
    bool ft = false;
};

StoredOracle build_stored(const GraphFile& f, const BuildOptions& opt) {
    const FailureMode mode = parse_mode(opt.mode);
    if (opt.variant != "standard" && opt.variant != "constant") throw InputError("variant must be standard or constant");
    const auto tree = shortest_path_tree(f.graph, f.source);
    const auto table = mode == FailureMode::edge ? ssrp_edge_baseline(f.graph, tree) : ssrp_vertex_baseline(f.graph, tree);
    StoredOracle out;
    if (opt.variant == "constant") {
        if (opt.paths || opt.ft) throw InputError("--paths and --ft-tree need the standard variant");
        out.grouped = true;
        out.grouped_oracle = build_constant_query(f.graph, tree, table);
        return out;
    }
    out.oracle = build_oracle(f.graph, tree, table);
    if (opt.paths || opt.ft) augment_path_reporting(f.graph, out.oracle);
    if (opt.ft) {
        if (mode != FailureMode::edge) throw InputError("--ft-tree needs edge mode");
        out.ft = build_ft_tree_store(out.oracle);
    }
    return out;
}

std::vector<std::uint8_t> blob_of(const StoredOracle& so) {
    if (so.grouped) return serialize_oracle(so.grouped_oracle);
    return serialize_oracle(so.oracle, so.ft ? &*so.ft : nullptr);
}

void print_stats(const SubquadraticStats& st, std::ostream& out) {
    out << "sample_L " << st.sample_block << "\n"
        << "sample_probability " << st.probability << "\n"
        << "random_pivots " << st.random_pivots << " (bound " << st.sample_bound << ", "
        << (st.sample_within_bound ? "within" : "exceeded") << ")\n"
        << "regular_pivots " << st.regular_pivots << "\n"
        << "searches " << st.searches << "\n"
        << "unsuccessful_total " << st.unsuccessful_total << "\n"
        << "unsuccessful_max_per_target " << st.unsuccessful_max << "\n"
        << "unsuccessful_constant " << st.unsuccessful_constant << "\n"
        << "far_two_pairs " << st.pairs_total << "\n"
        << "break_point_bound_violations " << st.pair_bound_violations << "\n"
        << "interval_bound_violations " << st.interval_bound_violations << "\n"
        << "monotonicity_violations " << st.monotonicity_violations << "\n"
        << "near_graphs " << st.near_graphs << "\n"
        << "near_elements " << st.near_elements << "\n"
        << "near_literal_violations " << st.near_literal_violations << "\n"
        << "near_literal_violations_outer " << st.near_literal_violations_outer << "\n"
        << "paths " << (st.paths_ok ? "ok" : "unavailable") << "\n";
    if (st.verified)
        out << "verify_checked " << st.verify_checked << "\n"
            << "verify_mismatches " << st.verify_mismatches << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Single-source distance sensitivity oracles"};
    app.require_subcommand(1);
    int status = kOk;

    std::string graph_path, oracle_path, out_path;
    long long target = -1;
    Failing failing;
    BuildOptions bopt;

    auto* build = app.add_subcommand("build", "Build an oracle from a graph file");
    build->add_option("--graph", graph_path, "Graph file")->required();
    build->add_option("--oracle", oracle_path, "Output blob")->required();
    build->add_option("--mode", bopt.mode, "edge or vertex")->check(CLI::IsMember({"edge", "vertex"}));
    build->add_option("--variant", bopt.variant, "standard or constant")->check(CLI::IsMember({"standard", "constant"}));
    build->add_flag("--paths", bopt.paths, "Store predecessors for path reporting");
    build->add_flag("--ft-tree", bopt.ft, "Store fault-tolerant tree segments (edge mode)");
    build->callback([&] {
        const auto start = Clock::now();
        const GraphFile f = read_graph_file(graph_path);
        const StoredOracle so = build_stored(f, bopt);
        const auto blob = blob_of(so);
        write_binary_file(oracle_path, blob);
        std::cout << "built " << bopt.variant << ' ' << bopt.mode << " oracle: n=" << f.graph.num_vertices()
                  << " m=" << f.graph.num_edges() << " M=" << f.graph.max_weight() << " words=" << payload_words(blob)
                  << " time_ms=" << ms_since(start) << "\n";
    });

    SubquadraticParams sp;
    auto* subq = app.add_subcommand("build-subq", "Randomized edge-failure build for sparse graphs");
    subq->add_option("--graph", graph_path, "Graph file")->required();
    subq->add_option("--oracle", oracle_path, "Output blob")->required();
    subq->add_option("--seed", sp.seed, "Sampling seed");
    subq->add_option("--c", sp.c, "Sampling constant")->check(CLI::PositiveNumber);
    subq->add_option("--L", sp.block, "Sampling block (0 selects the default)");
    subq->add_flag("--verify", sp.verify, "Recompute every failure after the build");
    subq->add_flag("--paths,!--no-paths", sp.paths, "Store predecessors (default on)");
    subq->callback([&] {
        const auto start = Clock::now();
        const GraphFile f = read_graph_file(graph_path);
        const auto result = build_subquadratic(f.graph, f.source, sp);
        const auto blob = serialize_oracle(result.oracle);
        write_binary_file(oracle_path, blob);
        std::cout << "built subquadratic edge oracle: n=" << f.graph.num_vertices() << " m=" << f.graph.num_edges()
                  << " words=" << payload_words(blob) << " time_ms=" << ms_since(start) << "\n";
        print_stats(result.stats, std::cout);
        if (result.stats.verified && result.stats.verify_mismatches > 0) status = kMismatch;
    });

    auto* query = app.add_subcommand("query", "Replacement distance for one target and failure");
    query->add_option("--oracle", oracle_path, "Oracle blob")->required();
    query->add_option("--target", target, "Target vertex")->required();
    add_failure(query, failing);
    query->callback([&] {
        const StoredOracle so = load(oracle_path);
        const Oracle& o = so.base();
        check_target(o, target);
        const Vertex elem = failure_element(o, failing);
        const Vertex t = static_cast<Vertex>(target);
        const QueryAnswer a = so.grouped ? query_constant_element(so.grouped_oracle, t, elem) : query_element(o, t, elem);
        std::cout << dist_to_string(a.distance) << ' ' << to_string(a.case_tag) << "\n";
    });

    auto* path = app.add_subcommand("path", "Replacement path for one target and failure");
    path->add_option("--oracle", oracle_path, "Oracle blob built with --paths")->required();
    path->add_option("--target", target, "Target vertex")->required();
    add_failure(path, failing);
    path->callback([&] {
        const StoredOracle so = load(oracle_path);
        if (so.grouped) throw InputError("the constant-query variant does not report paths");
        const Oracle& o = so.oracle;
        if (!o.has_paths) throw InputError("oracle was built without --paths");
        check_target(o, target);
        const Vertex t = static_cast<Vertex>(target);
        std::vector<Vertex> p;
        if (!failing.edge.empty()) {
            const Vertex elem = failure_element(o, failing);
            p = elem == kNoVertex ? o.tree.root_path(t) : report_path(o, t, o.tree.parent_edge(elem));
        } else {
            p = report_path_vertex(o, t, failure_element(o, failing));
        }
        const Dist d = query_element(o, t, failure_element(o, failing)).distance;
        std::cout << "distance " << dist_to_string(d) << "\npath";
        for (Vertex v : p) std::cout << ' ' << v;
        std::cout << "\n";
    });

    auto* tree = app.add_subcommand("tree", "Shortest path tree of G minus one edge");
    tree->add_option("--oracle", oracle_path, "Oracle blob built with --ft-tree")->required();
    tree->add_option("--fail-edge", failing.edge, "Failing edge given by its endpoints")->expected(2)->required();
    tree->callback([&] {
        const StoredOracle so = load(oracle_path);
        if (so.grouped || !so.ft) throw InputError("oracle was built without --ft-tree");
        const Oracle& o = so.oracle;
        const Vertex elem = failure_element(o, failing);
        std::vector<Vertex> parent(o.tree.parents().begin(), o.tree.parents().end());
        if (elem != kNoVertex) parent = report_tree(*so.ft, o, o.tree.parent_edge(elem));
        for (Vertex v = 0; v < parent.size(); ++v)
            std::cout << v << ' ' << (parent[v] == kNoVertex ? std::string("-") : std::to_string(parent[v])) << "\n";
    });

    auto* verify = app.add_subcommand("verify", "Recompute every failure and diff against the oracle");
    verify->add_option("--graph", graph_path, "Graph file")->required();
    verify->add_option("--oracle", oracle_path, "Oracle blob")->required();
    verify->callback([&] {
        const GraphFile f = read_graph_file(graph_path);
        const StoredOracle so = load(oracle_path);
        if (so.base().source != f.source) throw InputError("oracle source differs from the graph file");
        const VerifyReport r = so.grouped ? verify_oracle(f.graph, so.grouped_oracle) : verify_oracle(f.graph, so.oracle);
        for (const Mismatch& m : r.mismatches) std::cout << "mismatch " << m.message(f.graph) << "\n";
        std::cout << "checked " << r.checked << "\nmismatches " << r.mismatch_count << "\nwords " << r.words
                  << "\nspace_constant " << r.space_constant << "\nmax_break_points " << r.max_break_points
                  << "\nbreak_point_ratio " << r.break_point_ratio << "\n";
        if (so.grouped) std::cout << "max_query_ops " << r.max_query_ops << "\n";
        status = r.ok() ? kOk : kMismatch;
    });

    std::size_t gn = 100, gm = 0, locality = 0;
    Dist gM = 1;
    std::uint64_t seed = 1;
    long long source = 0;
    auto* gen = app.add_subcommand("gen", "Write a seeded random graph");
    gen->add_option("--n", gn, "Vertices")->check(CLI::PositiveNumber);
    gen->add_option("--m", gm, "Edges (default 2n)");
    gen->add_option("--M", gM, "Maximum weight")->check(CLI::PositiveNumber);
    gen->add_option("--seed", seed, "Seed");
    gen->add_option("--locality", locality, "Window for deep graphs (0 = uniform)");
    gen->add_option("--source", source, "Source vertex");
    gen->add_option("--out", out_path, "Output graph file (stdout if omitted)");
    gen->callback([&] {
        if (source < 0 || static_cast<std::size_t>(source) >= gn) throw InputError("--source out of range");
        const Graph g = gen_random_graph(gn, gm == 0 ? 2 * gn : gm, gM, seed, locality);
        if (out_path.empty())
            std::cout << write_graph(g, static_cast<Vertex>(source));
        else
            write_graph_file(out_path, g, static_cast<Vertex>(source));
    });

    std::string matrix_path;
    std::size_t block = 1, random_rows = 0;
    auto* genlb = app.add_subcommand("gen-lb", "Write one block graph of the lower-bound family");
    genlb->add_option("--matrix", matrix_path, "Bit matrix file (rows of 0/1); written when --random is given")
        ->required();
    genlb->add_option("--random", random_rows, "Draw a random r x r matrix with --seed first");
    genlb->add_option("--seed", seed, "Seed for --random");
    genlb->add_option("--M", gM, "Maximum weight")->check(CLI::PositiveNumber);
    genlb->add_option("--block", block, "Block index k (1-based)");
    genlb->add_option("--graph", out_path, "Output graph file")->required();
    genlb->callback([&] {
        if (random_rows > 0) {
            std::mt19937_64 rng(seed);
            BitMatrix x(random_rows, std::vector<std::uint8_t>(random_rows));
            for (auto& row : x)
                for (auto& bit : row) bit = static_cast<std::uint8_t>(rng() & 1);
            std::ofstream(matrix_path) << matrix_text(x);
        }
        const BitMatrix x = read_matrix(matrix_path);
        const auto inst = gen_lower_bound_instance(x, gM, block);
        write_graph_file(out_path, inst.graph, inst.source);
        std::cout << "block " << block << " of " << inst.layout.blocks << ": n=" << inst.graph.num_vertices()
                  << " m=" << inst.graph.num_edges() << " s=" << inst.source << "\n";
    });

    std::vector<std::string> oracle_paths;
    std::size_t rows = 0;
    auto* declb = app.add_subcommand("decode-lb", "Recover the bit matrix from block oracles");
    declb->add_option("--oracle", oracle_paths, "Edge oracle blob per block, in block order")->required();
    declb->add_option("--rows", rows, "Matrix order r")->required()->check(CLI::PositiveNumber);
    declb->add_option("--M", gM, "Maximum weight")->check(CLI::PositiveNumber);
    declb->add_option("--expect", matrix_path, "Matrix file to compare against");
    declb->callback([&] {
        std::vector<Oracle> blocks;
        for (const auto& p : oracle_paths) {
            StoredOracle so = load(p);
            if (so.grouped) throw InputError("decode-lb needs standard edge oracles");
            blocks.push_back(std::move(so.oracle));
        }
        const BitMatrix x = decode_matrix(blocks, rows, gM);
        std::cout << matrix_text(x);
        if (!matrix_path.empty() && read_matrix(matrix_path) != x) {
            std::cout << "decoded matrix differs from " << matrix_path << "\n";
            status = kMismatch;
        }
    });

    std::vector<std::string> bench_graphs;
    std::vector<std::string> variants{"standard"};
    auto* bench = app.add_subcommand("bench", "CSV rows with build time, query time and words");
    bench->add_option("--graph", bench_graphs, "Graph files")->required();
    bench->add_option("--mode", bopt.mode, "edge or vertex")->check(CLI::IsMember({"edge", "vertex"}));
    bench->add_option("--variant", variants, "standard, constant or subq (repeatable)")
        ->check(CLI::IsMember({"standard", "constant", "subq"}));
    bench->add_option("--seed", sp.seed, "Seed for subq");
    bench->callback([&] {
        std::cout << bench_csv_header() << "\n";
        for (const auto& gp : bench_graphs) {
            const GraphFile f = read_graph_file(gp);
            for (const auto& variant : variants) {
                BenchRow row;
                row.instance = gp;
                row.n = f.graph.num_vertices();
                row.m = f.graph.num_edges();
                row.max_weight = f.graph.max_weight();
                row.mode = bopt.mode;
                row.variant = variant;
                const auto start = Clock::now();
                StoredOracle so;
                if (variant == "subq") {
                    if (bopt.mode != "edge") throw InputError("subq supports edge mode only");
                    so.oracle = build_subquadratic(f.graph, f.source, sp).oracle;
                } else {
                    BuildOptions b = bopt;
                    b.variant = variant;
                    so = build_stored(f, b);
                }
                row.build_ms = ms_since(start);
                row.words = payload_words(blob_of(so));
                row.query_ns = mean_query_ns(so);
                std::cout << bench_csv_row(row) << "\n";
            }
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kBadInput;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const ContractError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
    return status;
}

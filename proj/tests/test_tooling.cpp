#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>

#include "ssdso/ft_tree.hpp"
#include "ssdso/generators.hpp"
#include "ssdso/grouped.hpp"
#include "ssdso/io.hpp"
#include "ssdso/verify.hpp"
#include "support/brute_force.hpp"
#include "support/corpus.hpp"

using namespace ssdso;

namespace {

Oracle build(const Graph& g, FailureMode mode, Vertex s = 0) {
    const auto tree = shortest_path_tree(g, s);
    const auto table = mode == FailureMode::edge ? ssrp_edge_baseline(g, tree) : ssrp_vertex_baseline(g, tree);
    return build_oracle(g, tree, table);
}

GroupedOracle build_grouped(const Graph& g, FailureMode mode) {
    const auto tree = shortest_path_tree(g, 0);
    const auto table = mode == FailureMode::edge ? ssrp_edge_baseline(g, tree) : ssrp_vertex_baseline(g, tree);
    return build_constant_query(g, tree, table);
}

void same_answers(const Oracle& a, const Oracle& b) {
    REQUIRE(a.n == b.n);
    for (Vertex v = 0; v < a.n; ++v)
        for (Vertex t = 0; t < a.n; ++t) REQUIRE(query_element(a, t, v) == query_element(b, t, v));
}

BitMatrix random_matrix(std::size_t r, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    BitMatrix x(r, std::vector<std::uint8_t>(r));
    for (auto& row : x)
        for (auto& bit : row) bit = static_cast<std::uint8_t>(rng() & 1);
    return x;
}

std::vector<Oracle> block_oracles(const BitMatrix& x, Dist M) {
    std::vector<Oracle> out;
    const auto layout = lower_bound_layout(x.size(), M);
    for (std::size_t k = 1; k <= layout.blocks; ++k) {
        const auto inst = gen_lower_bound_instance(x, M, k);
        out.push_back(build(inst.graph, FailureMode::edge, inst.source));
    }
    return out;
}

}  // namespace

TEST_CASE("parse the four cycle") {
    const auto f = parse_graph("# a comment\n4 4 1 0\n0 1 1\n1 3 1\n\n0 2 1\n# inner\n2 3 1\n");
    CHECK(f.source == 0);
    CHECK(f.graph.num_vertices() == 4);
    CHECK(f.graph.num_edges() == 4);
    CHECK(f.graph.find_edge(1, 3).has_value());
    CHECK(write_graph(f.graph, f.source) == "4 4 1 0\n0 1 1\n1 3 1\n0 2 1\n2 3 1\n");
}

TEST_CASE("parse errors name the line") {
    auto message = [](const std::string& text) {
        try {
            parse_graph(text);
        } catch (const InputError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(message("3 2 1 0\n0 1 1\n1 2 0\n").find("line 3") != std::string::npos);
    CHECK(message("3 2 1 0\n0 1 1\n1 2 0\n").find("weight 0") != std::string::npos);
    CHECK(message("3 2 4 0\n0 1 5\n1 2 1\n").find("line 2") != std::string::npos);
    CHECK(message("3 2 1 0\n0 1 1\n1 0 1\n").find("line 3: duplicate") != std::string::npos);
    CHECK(message("3 2 1 0\n0 0 1\n1 2 1\n").find("line 2: self-loop") != std::string::npos);
    CHECK(message("3 2 1\n").find("line 1") != std::string::npos);
    CHECK(message("3 2 1 0\n0 1 1\n").find("expected 2 edges") != std::string::npos);
    CHECK(message("3 1 1 0\n0 x 1\n").find("line 2") != std::string::npos);
    CHECK(message("3 1 1 5\n").find("source") != std::string::npos);
    CHECK(message("3 1 1 0\n0 1 1\n1 2 1\n").find("line 3") != std::string::npos);
    CHECK(message("").find("missing header") != std::string::npos);
}

TEST_CASE("graph text round trip") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const std::size_t n = 2 + seed % 60;
        const Graph g = gen_random_graph(n, n + seed, 1 + seed % 9, seed);
        const Vertex s = static_cast<Vertex>(seed % n);
        const std::string text = write_graph(g, s);
        const auto back = parse_graph(text);
        REQUIRE(back.graph == g);
        CHECK(back.source == s);
        CHECK(write_graph(back.graph, back.source) == text);
    }
}

TEST_CASE("oracle blob round trip answers identically") {
    const auto corpus = ref::main_corpus();
    for (std::size_t i = 0; i < corpus.size(); i += 11) {
        const Graph g = corpus[i].graph();
        for (FailureMode mode : {FailureMode::edge, FailureMode::vertex}) {
            Oracle o = build(g, mode);
            if (i % 2 == 0) augment_path_reporting(g, o);
            const auto blob = serialize_oracle(o);
            const auto back = deserialize_oracle(blob);
            REQUIRE_FALSE(back.grouped);
            CHECK(back.oracle.has_paths == o.has_paths);
            same_answers(o, back.oracle);
            CHECK(serialize_oracle(back.oracle) == blob);
        }
    }
}

TEST_CASE("grouped and tree blobs round trip") {
    const Graph g = gen_random_graph(90, 300, 4, 77);
    for (FailureMode mode : {FailureMode::edge, FailureMode::vertex}) {
        const GroupedOracle go = build_grouped(g, mode);
        const auto blob = serialize_oracle(go);
        const auto back = deserialize_oracle(blob);
        REQUIRE(back.grouped);
        for (Vertex v = 0; v < 90; ++v)
            for (Vertex t = 0; t < 90; ++t)
                REQUIRE(query_constant_element(go, t, v) == query_constant_element(back.grouped_oracle, t, v));
        CHECK(serialize_oracle(back.grouped_oracle) == blob);
    }

    Oracle o = build(g, FailureMode::edge);
    augment_path_reporting(g, o);
    const FtTreeStore ft = build_ft_tree_store(o);
    const auto blob = serialize_oracle(o, &ft);
    const auto back = deserialize_oracle(blob);
    REQUIRE(back.ft.has_value());
    for (EdgeId e = 0; e < g.num_edges(); ++e) CHECK(report_tree(*back.ft, back.oracle, e) == report_tree(ft, o, e));
    CHECK(serialize_oracle(back.oracle, &*back.ft) == blob);
    CHECK_THROWS_AS(serialize_oracle(build(g, FailureMode::edge), &ft), ContractError);
}

TEST_CASE("damaged blobs are rejected with structured errors") {
    const Graph g = gen_random_graph(30, 50, 2, 4);
    const auto blob = serialize_oracle(build(g, FailureMode::edge));
    auto kind_of = [](std::vector<std::uint8_t> bytes) {
        try {
            deserialize_oracle(bytes);
        } catch (const BlobError& e) {
            return static_cast<int>(e.kind());
        }
        return -1;
    };
    CHECK(kind_of(blob) == -1);
    for (std::size_t cut : {std::size_t{0}, std::size_t{5}, std::size_t{20}, blob.size() / 2, blob.size() - 1})
        CHECK(kind_of(std::vector<std::uint8_t>(blob.begin(), blob.begin() + static_cast<std::ptrdiff_t>(cut))) ==
              static_cast<int>(BlobError::Kind::truncated));
    auto bad = blob;
    bad[0] = 'X';
    CHECK(kind_of(bad) == static_cast<int>(BlobError::Kind::bad_magic));
    bad = blob;
    bad[6] = 2;
    CHECK(kind_of(bad) == static_cast<int>(BlobError::Kind::version_mismatch));
    bad = blob;
    bad.push_back(0);
    CHECK(kind_of(bad) == static_cast<int>(BlobError::Kind::corrupt));
    bad = blob;
    bad[8] = 9;  // mode byte
    CHECK(kind_of(bad) == static_cast<int>(BlobError::Kind::corrupt));
}

TEST_CASE("repeated builds give identical bytes") {
    const Graph g = gen_random_graph(120, 400, 16, 5);
    for (FailureMode mode : {FailureMode::edge, FailureMode::vertex}) {
        CHECK(serialize_oracle(build(g, mode)) == serialize_oracle(build(g, mode)));
        CHECK(serialize_oracle(build_grouped(g, mode)) == serialize_oracle(build_grouped(g, mode)));
    }
}

TEST_CASE("payload words exclude the header") {
    const Graph g = gen_random_graph(40, 80, 1, 8);
    const auto blob = serialize_oracle(build(g, FailureMode::edge));
    CHECK((blob.size() - 42) % 8 == 0);
    CHECK(payload_words(blob) == (blob.size() - 42) / 8);
}

TEST_CASE("verify reports nothing on correct oracles") {
    const auto corpus = ref::main_corpus();
    for (std::size_t i = 0; i < corpus.size(); i += 13) {
        const Graph g = corpus[i].graph();
        for (FailureMode mode : {FailureMode::edge, FailureMode::vertex}) {
            const auto r = verify_oracle(g, build(g, mode));
            CHECK(r.ok());
            CHECK(r.checked > 0);
            CHECK(r.words > 0);
            CHECK(r.break_point_ratio <= (mode == FailureMode::edge ? 3.0 : 5.0));
            const auto rg = verify_oracle(g, build_grouped(g, mode));
            CHECK(rg.ok());
            CHECK(rg.max_query_ops > 0);
        }
    }
}

TEST_CASE("verify lists damaged answers") {
    const Graph g = gen_random_graph(40, 90, 3, 12);
    Oracle o = build(g, FailureMode::edge);
    REQUIRE_FALSE(o.near_dist.empty());
    o.near_dist[0] += 1;
    const auto r = verify_oracle(g, o);
    REQUIRE(r.mismatch_count == 1);
    const Mismatch& m = r.mismatches.front();
    CHECK(m.got == m.expected + 1);
    const std::string text = m.message(g);
    CHECK(text.find("t=" + std::to_string(m.target)) != std::string::npos);
    CHECK(text.find("edge " + std::to_string(m.failure)) != std::string::npos);
    CHECK(text.find("expected=" + dist_to_string(m.expected)) != std::string::npos);
    CHECK(text.find("got=" + dist_to_string(m.got)) != std::string::npos);
}

TEST_CASE("bench rows are CSV") {
    BenchRow row{"g1", 10, 20, 4, "edge", "standard", 1.5, 250.25, 1234};
    CHECK(bench_csv_header() == "instance,n,m,M,mode,variant,build_ms,query_ns,words");
    CHECK(bench_csv_row(row) == "g1,10,20,4,edge,standard,1.500,250.250,1234");
}

TEST_CASE("lower-bound example: identity of order four") {
    BitMatrix x(4, std::vector<std::uint8_t>(4, 0));
    for (std::size_t i = 0; i < 4; ++i) x[i][i] = 1;
    const auto inst = gen_lower_bound_instance(x, 1, 1);
    const auto& l = inst.layout;
    CHECK(l.stride == 2);
    CHECK(l.blocks == 2);
    CHECK(inst.source == l.v(2));
    CHECK(inst.graph.find_edge(l.v(0), l.v(1)).has_value());
    CHECK(inst.graph.find_edge(l.v(1), l.v(2)).has_value());
    const EdgeId e1 = *inst.graph.find_edge(l.v(0), l.v(1));
    const auto d = ref::distances(inst.graph, inst.source, e1);
    CHECK(d[l.b(1)] == 3);
    CHECK(d[l.b(2)] > 3);
    CHECK(decode_matrix(block_oracles(x, 1), 4, 1) == x);
    CHECK_THROWS_AS(gen_lower_bound_instance(x, 1, 3), InputError);
    CHECK_THROWS_AS(gen_lower_bound_instance(x, 1, 0), InputError);
}

TEST_CASE("lower-bound all-zero matrix") {
    const BitMatrix x(9, std::vector<std::uint8_t>(9, 0));
    for (Dist M : {1, 4}) {
        const auto l = lower_bound_layout(9, M);
        for (std::size_t k = 1; k <= l.blocks; ++k) {
            const auto inst = gen_lower_bound_instance(x, M, k);
            for (std::size_t i = 1; i <= l.stride; ++i) {
                const EdgeId e = *inst.graph.find_edge(l.v(i - 1), l.v(i));
                const auto d = ref::distances(inst.graph, inst.source, e);
                for (std::size_t j = 1; j <= 9; ++j) CHECK((d[l.b(j)] == kInf || d[l.b(j)] > l.stride + i));
            }
        }
        CHECK(decode_matrix(block_oracles(x, M), 9, M) == x);
    }
}

TEST_CASE("lower-bound random 16 by 16") {
    for (Dist M : {1, 4})
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            const BitMatrix x = random_matrix(16, seed * 31 + M);
            CHECK(decode_matrix(block_oracles(x, M), 16, M) == x);
        }
    const BitMatrix x = random_matrix(16, 1);
    auto partial = block_oracles(x, 1);
    partial.pop_back();
    CHECK_THROWS_AS(decode_matrix(partial, 16, 1), InputError);
    CHECK_THROWS_AS(gen_lower_bound_instance(BitMatrix{{1, 0}}, 1, 1), InputError);
}

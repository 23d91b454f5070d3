#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ssdso/graph.hpp"
#include "ssdso/grouped.hpp"
#include "ssdso/oracle.hpp"

namespace ssdso {

struct Mismatch {
    Vertex target = kNoVertex;
    FailureMode mode = FailureMode::edge;
    std::uint32_t failure = 0;  // edge id or vertex id
    Dist expected = kInf;
    Dist got = kInf;

    std::string message(const Graph& g) const;
};

struct VerifyReport {
    std::size_t checked = 0;
    std::size_t mismatch_count = 0;
    std::vector<Mismatch> mismatches;  // the first kMaxListed in failure order

    std::size_t words = 0;             // serialized payload
    double space_constant = 0;         // words / (sqrt(M) n^{3/2} + n), or the grouped normalizer
    std::size_t max_break_points = 0;
    double break_point_ratio = 0;      // max_break_points / sqrt(Mn)
    std::uint64_t max_query_ops = 0;   // constant-query variant only

    static constexpr std::size_t kMaxListed = 100;
    bool ok() const noexcept { return mismatch_count == 0; }
};

/// Recomputes every (target, failure on the tree) pair by direct search.
VerifyReport verify_oracle(const Graph& g, const Oracle& o);
VerifyReport verify_oracle(const Graph& g, const GroupedOracle& o);

double standard_space_scale(std::uint64_t n, std::uint64_t max_weight);  // sqrt(M) n^{3/2} + n
double grouped_space_scale(std::uint64_t n, std::uint64_t max_weight);   // M^{1/3} n^{5/3} + n

struct BenchRow {
    std::string instance;
    std::uint64_t n = 0, m = 0, max_weight = 1;
    std::string mode;
    std::string variant;
    double build_ms = 0;
    double query_ns = 0;  // mean over all (t, failure) queries
    std::size_t words = 0;
};

std::string bench_csv_header();
std::string bench_csv_row(const BenchRow& row);

}  // namespace ssdso

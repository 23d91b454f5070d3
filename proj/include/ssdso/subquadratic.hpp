#pragma once

#include <cstdint>
#include <vector>

#include "ssdso/graph.hpp"
#include "ssdso/oracle.hpp"
#include "ssdso/pivots.hpp"
#include "ssdso/range_max.hpp"
#include "ssdso/ssrp.hpp"

namespace ssdso {

// Random pivots R with their replacement data along P(s, chi).
struct RandomPivotSet {
    std::size_t block = 1;    // L
    double c = 3.0;
    std::uint64_t seed = 0;
    double probability = 1.0;
    std::vector<Vertex> members;               // sorted, contains s
    std::vector<PathReplacementResult> along;  // parallel to members (includes T_chi)
    std::vector<Vertex> index_of;              // per vertex, position in members or kNoVertex
};

/// Sampling block n^{11/8} / (M^{1/8} m^{1/2}) clamped to [ceil(c ln n), n].
std::size_t subquadratic_block(std::size_t n, std::size_t m, Dist max_weight, double c);
/// Clamps a requested block to [ceil(c ln n), n].
std::size_t clamp_block(std::size_t n, std::size_t block, double c);

/// Each vertex joins with probability min(1, c ln n / L), s always. The
/// draw sequence depends only on the seed.
RandomPivotSet sample_random_pivots(const Graph& g, const ShortestPathTree& tree, std::size_t block, double c,
                                    std::uint64_t seed);
/// Deterministic pivot set (used to test the search with R = V and similar).
RandomPivotSet forced_random_pivots(const Graph& g, const ShortestPathTree& tree, std::vector<Vertex> members,
                                    std::size_t block);

struct ProperPivotIndex {
    PivotAssignment regular;   // D with L = ceil(sqrt(n))
    std::vector<Vertex> first;   // D1[t]
    std::vector<Vertex> second;  // D2[t] = D1[D1[t]], s when D1[t] = s
};

/// Proper pivot: the pivot on P(s, t) closest to t with d(x, t) >= 4ML, else s.
ProperPivotIndex assign_proper_pivots(const ShortestPathTree& tree, const PivotAssignment& regular, Dist max_weight,
                                      std::size_t block);

// Far-I data of one regular pivot x.
struct FarPivotData {
    Vertex pivot = kNoVertex;
    PathReplacementResult along;  // d(s, x, e) with divergence data
    RangeMaxIndex rmq;            // over along.entries[].dist

    Dist far(std::size_t k) const noexcept { return along.entries[k - 1].dist; }
};

FarPivotData far_pivot_data(const Graph& g, const ShortestPathTree& tree, Vertex x);

struct FarTwoPair {
    Dist dist = kInf;
    Vertex depth = 0;               // distinguished element
    Vertex divergence = kNoVertex;  // z on P(s, x2)
    Vertex via = kNoVertex;         // the random pivot realizing dist
};

struct FarTwoPairs {
    Vertex target = kNoVertex;
    Vertex pivot = kNoVertex;       // x2
    std::vector<FarTwoPair> pairs;  // by increasing depth
    std::size_t searches = 0;
    std::size_t unsuccessful = 0;
    std::size_t bound_violations = 0;  // successful probes with delta below the interval's lower bound
};

struct IntervalTask {
    std::size_t a = 1, b = 0;  // element depths on P(s, x2)
    Dist upper = kInf;         // Delta
    Dist lower = 0;            // delta_low
};

/// Recursive interval search for the far-II pairs of t relative to x2.
/// Throws ContractError if x2 is not a strict ancestor of t or lacks data.
FarTwoPairs search_far_two(const ShortestPathTree& tree, Vertex t, const FarPivotData& x2, const RandomPivotSet& r);

// Replacement distances for failures on P(x2(t), t), from the G_e runs.
struct NearCaseResult {
    std::vector<std::size_t> offsets;  // per target + 1; element k at offsets[t] + k - first[t]
    std::vector<Vertex> first;         // depth of the first element covered (depth(x2) + 1)
    std::vector<Dist> dist;
    std::vector<Vertex> pred;          // predecessor in the shortest path tree of G_e
    std::size_t graphs = 0;            // number of G_e built

    Dist at(Vertex t, std::size_t k) const noexcept { return dist[offsets[t] + k - first[t]]; }
};

/// d(s, t, e) for every target t and e on P(x2(t), t). `far_pairs` and
/// `far_data` supply the already known far-case distances of boundary vertices.
NearCaseResult near_case_subquadratic(const Graph& g, const ShortestPathTree& tree, const ProperPivotIndex& proper,
                                      const std::vector<FarPivotData>& far_data,
                                      const std::vector<Vertex>& far_slot,
                                      const std::vector<FarTwoPairs>& far_pairs);

struct SubquadraticParams {
    double c = 3.0;
    std::uint64_t seed = 1;
    std::size_t block = 0;          // sampling L; 0 selects the default formula
    bool verify = false;            // exhaustive recomputation after the build
    bool full_sample = false;       // R = V
    bool paths = true;
};

struct SubquadraticStats {
    std::size_t sample_block = 0;
    double probability = 1.0;
    std::size_t random_pivots = 0;
    double sample_bound = 0;        // 2 c n ln n / L + 1
    bool sample_within_bound = true;
    std::size_t regular_pivots = 0;

    std::size_t searches = 0;
    std::size_t unsuccessful_total = 0;
    std::size_t unsuccessful_max = 0;
    double unsuccessful_constant = 0;  // max over targets of unsuccessful / (M^{3/4} n^{3/4})
    std::size_t pairs_total = 0;
    std::size_t pair_bound_violations = 0;
    std::size_t interval_bound_violations = 0;
    std::size_t monotonicity_violations = 0;

    std::size_t near_graphs = 0;
    std::size_t near_elements = 0;
    std::size_t near_literal_violations = 0;        // d(D2[t], v) > 4LM
    std::size_t near_literal_violations_outer = 0;  // d(D2[D2[t]], v) > 4LM
    bool paths_ok = true;

    bool verified = false;
    std::size_t verify_checked = 0;
    std::size_t verify_mismatches = 0;
};

struct SubquadraticResult {
    Oracle oracle;
    SubquadraticStats stats;
};

/// Randomized build for edge failures; the oracle layout equals build_oracle's.
SubquadraticResult build_subquadratic(const Graph& g, Vertex source, const SubquadraticParams& params = {});

}  // namespace ssdso

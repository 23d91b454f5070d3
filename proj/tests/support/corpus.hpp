#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ssdso/graph.hpp"

namespace ref {

struct CorpusEntry {
    std::size_t n = 0;
    std::size_t m = 0;
    ssdso::Dist max_weight = 1;
    std::uint64_t seed = 0;
    std::size_t locality = 0;

    std::string name() const;
    ssdso::Graph graph() const;
    ssdso::Vertex source() const { return 0; }
};

/// n in {50,100,150,200}, M in {1,4,16}, densities from trees to n^2/4,
/// plus deep local variants of the sparse ones. 132 graphs.
std::vector<CorpusEntry> main_corpus();

/// Sparse graphs (m <= 4n) for the randomized build.
std::vector<CorpusEntry> sparse_corpus();

}  // namespace ref

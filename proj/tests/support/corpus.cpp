#include "corpus.hpp"

#include "ssdso/generators.hpp"

namespace ref {

std::string CorpusEntry::name() const {
    return "n" + std::to_string(n) + "_m" + std::to_string(m) + "_M" + std::to_string(max_weight) + "_w" +
           std::to_string(locality) + "_seed" + std::to_string(seed);
}

ssdso::Graph CorpusEntry::graph() const { return ssdso::gen_random_graph(n, m, max_weight, seed, locality); }

std::vector<CorpusEntry> main_corpus() {
    std::vector<CorpusEntry> out;
    std::uint64_t seed = 1000;
    for (std::size_t n : {50, 100, 150, 200}) {
        for (ssdso::Dist M : {1, 4, 16}) {
            const std::size_t dense[] = {n - 1, 3 * n / 2, 2 * n, 4 * n, n * 7, n * n / 8, n * n / 4};
            for (std::size_t m : dense) out.push_back({n, m, M, seed++, 0});
            for (std::size_t m : {n - 1, 3 * n / 2, 2 * n, 4 * n}) out.push_back({n, m, M, seed++, 4});
        }
    }
    return out;
}

std::vector<CorpusEntry> sparse_corpus() {
    std::vector<CorpusEntry> out;
    for (const CorpusEntry& e : main_corpus())
        if (e.m <= 4 * e.n) out.push_back(e);
    return out;
}

}  // namespace ref

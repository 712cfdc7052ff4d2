#pragma once

#include <random>
#include <string>
#include <vector>

#include "pcs/synth.hpp"

namespace pcs::test {

// Fixture label ids, matching data/fixture/gptree.txt.
inline constexpr LabelId R = 0, CM = 1, ML = 2, AI = 3, IS = 4, DMS = 5, HW = 6;
// Fixture vertex ids.
inline constexpr VertexId A = 0, B = 1, C = 2, D = 3, E = 4, F = 5;

inline PTree tree(std::vector<LabelId> ids) {
    std::sort(ids.begin(), ids.end());
    return PTree(std::move(ids));
}

inline std::string data_dir() { return PCS_DATA_DIR; }

// Small random instances for oracle-style checks: bounded sizes keep the
// subtree lattice enumerable.
struct SmallCase {
    ProfiledGraph graph;
    std::uint64_t seed;
};

inline SmallCase small_case(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    SynthConfig cfg;
    cfg.n = 8 + static_cast<int>(rng() % 23);        // <= 30
    cfg.m = 10 + static_cast<int>(rng() % 111);      // <= 120
    cfg.labels = 4 + static_cast<int>(rng() % 5);    // <= 8
    cfg.max_depth = 2 + static_cast<int>(rng() % 3);
    cfg.token_pool = 4 + static_cast<int>(rng() % 6);
    cfg.min_tokens = 0;
    cfg.max_tokens = 2 + static_cast<int>(rng() % 7);
    return {random_profiled_graph(cfg, seed), seed};
}

}  // namespace pcs::test

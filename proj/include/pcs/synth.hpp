#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "pcs/graph.hpp"

namespace pcs {

// Random taxonomy with `labels` nodes, depth capped at max_depth. Ids are
// assigned in insertion order, root 0.
GPTree random_gptree(int labels, int max_depth, std::mt19937_64& rng);

// m distinct undirected edges over n vertices, no self-loops. Stops early when
// the graph is saturated.
std::vector<std::pair<VertexId, VertexId>> random_edges(int n, int m, std::mt19937_64& rng);

// Per-vertex token lists drawn from a pool of `pool` synthetic tokens,
// count uniform in [min_tokens, max_tokens]. Small pools give vertices shared
// labels, hence nontrivial communities.
std::vector<std::vector<std::string>> random_tokens(int n, int pool, int min_tokens,
                                                    int max_tokens, std::mt19937_64& rng);

struct SynthConfig {
    int n = 100;
    int m = 300;
    int labels = 40;
    int max_depth = 5;
    int token_pool = 30;
    int min_tokens = 1;
    int max_tokens = 8;
};

// Full pipeline: random GP-tree, random simple graph, token-digest P-trees.
ProfiledGraph random_profiled_graph(const SynthConfig& cfg, std::uint64_t seed);

// The six-vertex example graph bundled with the CLI (researchers A..F mapped
// to ids 0..5, CCS-style labels r, CM, ML, AI, IS, DMS, HW).
ProfiledGraph fig2_fixture();

// Sub-dataset builders for scalability sweeps.
ProfiledGraph induce_vertices(const ProfiledGraph& g, const std::vector<VertexId>& keep);
ProfiledGraph sample_vertex_fraction(const ProfiledGraph& g, double fraction,
                                     std::uint64_t seed);
ProfiledGraph sample_ptree_fraction(const ProfiledGraph& g, double fraction,
                                    std::uint64_t seed);
ProfiledGraph sample_gptree_fraction(const ProfiledGraph& g, double fraction,
                                     std::uint64_t seed);

}  // namespace pcs

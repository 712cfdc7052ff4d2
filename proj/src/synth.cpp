#include "pcs/synth.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace pcs {

GPTree random_gptree(int labels, int max_depth, std::mt19937_64& rng) {
    if (labels < 1) labels = 1;
    if (max_depth < 1) max_depth = 1;
    std::vector<LabelId> parent(labels, -1);
    std::vector<int> depth(labels, 1);
    std::vector<std::string> names(labels);
    names[0] = "r";
    std::vector<LabelId> eligible = {0};
    for (LabelId l = 1; l < labels; ++l) {
        std::uniform_int_distribution<std::size_t> pick(0, eligible.size() - 1);
        LabelId p = eligible[pick(rng)];
        parent[l] = p;
        depth[l] = depth[p] + 1;
        if (depth[l] < max_depth) eligible.push_back(l);
        names[l] = "L" + std::to_string(l);
    }
    return GPTree::from_parents(std::move(parent), std::move(names));
}

std::vector<std::pair<VertexId, VertexId>> random_edges(int n, int m, std::mt19937_64& rng) {
    std::vector<std::pair<VertexId, VertexId>> edges;
    if (n < 2) return edges;
    const long long max_edges = static_cast<long long>(n) * (n - 1) / 2;
    if (m > max_edges) m = static_cast<int>(max_edges);
    std::set<std::pair<VertexId, VertexId>> used;
    std::uniform_int_distribution<VertexId> pick(0, n - 1);
    while (static_cast<int>(edges.size()) < m) {
        VertexId u = pick(rng), v = pick(rng);
        if (u == v) continue;
        if (u > v) std::swap(u, v);
        if (used.insert({u, v}).second) edges.push_back({u, v});
    }
    return edges;
}

std::vector<std::vector<std::string>> random_tokens(int n, int pool, int min_tokens,
                                                    int max_tokens, std::mt19937_64& rng) {
    std::vector<std::vector<std::string>> out(n);
    std::uniform_int_distribution<int> count(min_tokens, max_tokens);
    std::uniform_int_distribution<int> pick(0, std::max(1, pool) - 1);
    for (int v = 0; v < n; ++v) {
        int c = count(rng);
        out[v].reserve(c);
        for (int i = 0; i < c; ++i) out[v].push_back("tok" + std::to_string(pick(rng)));
    }
    return out;
}

ProfiledGraph random_profiled_graph(const SynthConfig& cfg, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    GPTree gp = random_gptree(cfg.labels, cfg.max_depth, rng);
    auto edges = random_edges(cfg.n, cfg.m, rng);
    auto tokens = random_tokens(cfg.n, cfg.token_pool, cfg.min_tokens, cfg.max_tokens, rng);
    auto ptrees = synthesize_ptrees(gp, tokens, seed);
    return make_profiled_graph(cfg.n, edges, std::move(ptrees), std::move(gp));
}

ProfiledGraph induce_vertices(const ProfiledGraph& g, const std::vector<VertexId>& keep) {
    std::vector<int> local(g.n, -1);
    for (std::size_t i = 0; i < keep.size(); ++i) local[keep[i]] = static_cast<int>(i);
    std::vector<std::pair<VertexId, VertexId>> edges;
    std::vector<PTree> ptrees;
    ptrees.reserve(keep.size());
    for (VertexId v : keep) {
        ptrees.push_back(g.ptrees[v]);
        for (VertexId u : g.adj[v])
            if (local[u] != -1 && local[v] < local[u]) edges.push_back({local[v], local[u]});
    }
    return make_profiled_graph(static_cast<int>(keep.size()), edges, std::move(ptrees),
                               g.gptree);
}

ProfiledGraph sample_vertex_fraction(const ProfiledGraph& g, double fraction,
                                     std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<VertexId> order(g.n);
    for (int v = 0; v < g.n; ++v) order[v] = v;
    std::shuffle(order.begin(), order.end(), rng);
    auto count = static_cast<std::size_t>(fraction * g.n + 0.5);
    count = std::min(count, order.size());
    std::vector<VertexId> keep(order.begin(), order.begin() + count);
    std::sort(keep.begin(), keep.end());
    return induce_vertices(g, keep);
}

ProfiledGraph sample_ptree_fraction(const ProfiledGraph& g, double fraction,
                                    std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<PTree> ptrees;
    ptrees.reserve(g.n);
    for (VertexId v = 0; v < g.n; ++v) {
        std::vector<LabelId> kept;
        for (LabelId l : g.ptrees[v].nodes)
            if (coin(rng) < fraction) kept.push_back(l);
        ptrees.push_back(close_under_parents(kept, g.gptree));
    }
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (VertexId u = 0; u < g.n; ++u)
        for (VertexId v : g.adj[u])
            if (u < v) edges.push_back({u, v});
    return make_profiled_graph(g.n, edges, std::move(ptrees), g.gptree);
}

ProfiledGraph sample_gptree_fraction(const ProfiledGraph& g, double fraction,
                                     std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    const GPTree& gp = g.gptree;
    std::vector<char> keep(gp.size(), 0);
    keep[0] = 1;
    for (LabelId l = 1; l < gp.size(); ++l)
        if (coin(rng) < fraction) keep[l] = 1;
    // Close the kept set under parents and relabel densely.
    for (LabelId l = 0; l < gp.size(); ++l)
        if (keep[l])
            for (LabelId cur = l; cur != -1; cur = gp.parent(cur)) keep[cur] = 1;
    std::vector<LabelId> remap(gp.size(), -1);
    std::vector<std::string> names;
    for (LabelId l = 0; l < gp.size(); ++l) {
        if (!keep[l]) continue;
        remap[l] = static_cast<LabelId>(names.size());
        names.push_back(gp.name(l));
    }
    std::vector<LabelId> parent;
    parent.reserve(names.size());
    for (LabelId l = 0; l < gp.size(); ++l)
        if (keep[l]) parent.push_back(l == 0 ? -1 : remap[gp.parent(l)]);
    GPTree sub = GPTree::from_parents(std::move(parent), std::move(names));
    std::vector<PTree> ptrees;
    ptrees.reserve(g.n);
    for (VertexId v = 0; v < g.n; ++v) {
        std::vector<LabelId> kept;
        for (LabelId l : g.ptrees[v].nodes)
            if (keep[l]) kept.push_back(remap[l]);
        std::sort(kept.begin(), kept.end());
        ptrees.push_back(PTree(std::move(kept)));
    }
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (VertexId u = 0; u < g.n; ++u)
        for (VertexId v : g.adj[u])
            if (u < v) edges.push_back({u, v});
    return make_profiled_graph(g.n, edges, std::move(ptrees), std::move(sub));
}

ProfiledGraph fig2_fixture() {
    // Labels: 0 r, 1 CM, 2 ML, 3 AI, 4 IS, 5 DMS, 6 HW.
    GPTree gp = GPTree::from_parents({-1, 0, 1, 1, 0, 4, 0},
                                     {"r", "CM", "ML", "AI", "IS", "DMS", "HW"});
    // Vertices: 0 A, 1 B, 2 C, 3 D, 4 E, 5 F.
    std::vector<std::pair<VertexId, VertexId>> edges = {
        {0, 1}, {0, 3}, {0, 4}, {1, 3}, {1, 4}, {3, 4}, {1, 2}, {2, 3}, {4, 5}};
    std::vector<PTree> ptrees = {
        close_under_parents({4, 5, 6}, gp),           // A: IS, DMS, HW
        close_under_parents({1, 2, 3}, gp),           // B: CM, ML, AI
        close_under_parents({1, 2, 3}, gp),           // C: CM, ML, AI
        close_under_parents({1, 2, 3, 4, 5, 6}, gp),  // D: everything
        close_under_parents({4, 5, 6}, gp),           // E: IS, DMS, HW
        close_under_parents({6}, gp),                 // F: HW
    };
    return make_profiled_graph(6, edges, std::move(ptrees), std::move(gp));
}

}  // namespace pcs

#include "pcs/query.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <unordered_set>

namespace pcs {

namespace {

std::vector<VertexId> intersect_sorted(const std::vector<VertexId>& a,
                                       const std::vector<VertexId>& b) {
    std::vector<VertexId> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// One restricted peel, with work accounting. `candidates` must be sorted.
std::vector<VertexId> counted_peel(const std::vector<std::vector<VertexId>>& adj,
                                   const std::vector<VertexId>& candidates, int k, VertexId q,
                                   QueryCounters& counters) {
    if (candidates.empty()) return {};
    counters.gkt_computations++;
    counters.gkt_candidate_vertices += candidates.size();
    return k_core_component(adj, candidates, k, q);
}

PTree path_tree(LabelId leaf, const GPTree& gp) {
    auto path = gp.root_path(leaf);
    std::sort(path.begin(), path.end());
    return PTree(std::move(path));
}

// Apriori-style search shared by basic and incre. `verify` receives the parent
// tree with its members plus the one-node extension and returns the extension's
// members when feasible.
template <typename Verify>
ResultSet run_apriori(const ProfiledGraph& g, const PTree& bound,
                      std::vector<VertexId> base_members, Verify&& verify,
                      QueryCounters counters, QueryTrace* trace) {
    std::vector<std::pair<std::vector<VertexId>, PTree>> raw;
    if (base_members.empty()) return normalize({}, g, counters);

    std::vector<std::pair<SubtreeCursor, std::vector<VertexId>>> stack;
    stack.push_back({make_cursor(PTree{}, g.gptree), std::move(base_members)});
    while (!stack.empty()) {
        auto [cur, members] = std::move(stack.back());
        stack.pop_back();
        auto exts = extend_rightmost(cur, bound, g.gptree);
        counters.subtrees_generated += exts.size();
        bool any_feasible = false;
        for (auto& ext : exts) {
            if (trace) trace->generated.push_back(ext.tree);
            auto ext_members = verify(cur.tree, members, ext.tree, counters);
            if (!ext_members.empty()) {
                any_feasible = true;
                stack.push_back({std::move(ext), std::move(ext_members)});
            }
        }
        if (!any_feasible) raw.push_back({std::move(members), std::move(cur.tree)});
    }
    return normalize(std::move(raw), g, counters);
}

LabelId single_new_node(const PTree& tree, const PTree& parent) {
    // Precondition: parent ⊂ tree with exactly one extra node.
    for (std::size_t i = 0, j = 0; i < tree.nodes.size(); ++i) {
        if (j >= parent.nodes.size() || tree.nodes[i] != parent.nodes[j])
            return tree.nodes[i];
        ++j;
    }
    return -1;
}

}  // namespace

const std::optional<std::vector<VertexId>>* FeasibilityCache::find(const PTree& t) const {
    auto it = memo_.find(t);
    return it == memo_.end() ? nullptr : &it->second;
}

const std::optional<std::vector<VertexId>>& FeasibilityCache::store(
    const PTree& t, std::optional<std::vector<VertexId>> members) {
    return memo_[t] = std::move(members);
}

ResultSet query_basic(const ProfiledGraph& g, VertexId q, int k, QueryTrace* trace) {
    if (q < 0 || q >= g.n) throw DataError("query vertex " + std::to_string(q) + " out of range");
    QueryCounters counters;
    std::vector<VertexId> all(g.n);
    for (int v = 0; v < g.n; ++v) all[v] = v;
    auto gk = counted_peel(g.adj, all, k, q, counters);

    auto verify = [&g, k, q, &gk](const PTree&, const std::vector<VertexId>&, const PTree& tree,
                                  QueryCounters& c) {
        // Scan the plain core for P-tree containment, then peel the survivors.
        c.subtrees_verified++;
        c.gkt_computations++;
        c.gkt_candidate_vertices += gk.size();
        std::vector<VertexId> filtered;
        for (VertexId v : gk)
            if (is_subtree(tree, g.ptrees[v])) filtered.push_back(v);
        return k_core_component(g.adj, filtered, k, q);
    };
    return run_apriori(g, g.ptrees[q], gk, verify, counters, trace);
}

ResultSet query_incre(const CPTreeIndex& idx, VertexId q, int k) {
    const ProfiledGraph* g = idx.graph();
    if (!g) throw DataError("query_incre: index has no graph attached");
    if (q < 0 || q >= g->n)
        throw DataError("query vertex " + std::to_string(q) + " out of range");
    QueryCounters counters;
    PTree tq = idx.restore_ptree(q);
    auto gk = idx.global_cltree().k_hat_core(k, q);

    auto verify = [&idx, g, k, q](const PTree& parent, const std::vector<VertexId>& parent_members,
                                  const PTree& tree, QueryCounters& c) -> std::vector<VertexId> {
        LabelId x = single_new_node(tree, parent);
        auto cand = intersect_sorted(parent_members, idx.get(k, q, x));
        if (cand.size() < static_cast<std::size_t>(k) + 1) return {};  // no peel needed
        c.subtrees_verified++;
        return counted_peel(g->adj, cand, k, q, c);
    };
    return run_apriori(*g, tq, gk, verify, counters, nullptr);
}

std::optional<std::vector<VertexId>> verify_ptree(const CPTreeIndex& idx, VertexId q, int k,
                                                  const PTree& t, FeasibilityCache& cache,
                                                  QueryCounters& counters,
                                                  const PTree* context_parent,
                                                  const std::vector<VertexId>* context_members) {
    if (const auto* hit = cache.find(t)) return *hit;
    const ProfiledGraph* g = idx.graph();
    if (!g) throw DataError("verify_ptree: index has no graph attached");

    std::optional<std::vector<VertexId>> result;
    if (t.empty()) {
        auto members = idx.global_cltree().k_hat_core(k, q);
        if (!members.empty()) result = std::move(members);
        return cache.store(t, std::move(result));
    }
    auto leaves = tree_leaves(t, idx.gptree());
    if (leaves.size() == 1) {
        // A root path is answered by the index exactly: the vertices holding
        // the leaf label hold the whole path by closure.
        auto members = idx.get(k, q, leaves.front());
        if (!members.empty()) result = std::move(members);
        return cache.store(t, std::move(result));
    }

    // Anti-monotonicity against what is already known: an infeasible subtree
    // poisons every supertree, and a feasible parent's member set bounds ours.
    const std::vector<VertexId>* parent_bound = nullptr;
    for (const auto& p : parent_subtrees(t, idx.gptree())) {
        if (const auto* hit = cache.find(p)) {
            if (!hit->has_value()) return cache.store(t, std::nullopt);
            if (!parent_bound) parent_bound = &**hit;
        }
    }

    std::vector<VertexId> cand;
    if (context_parent && context_members && context_parent->size() + 1 == t.size() &&
        is_subtree(*context_parent, t)) {
        LabelId x = single_new_node(t, *context_parent);
        cand = intersect_sorted(*context_members, idx.get(k, q, x));
    } else {
        cand = idx.get(k, q, leaves.front());
        for (std::size_t i = 1; i < leaves.size() && !cand.empty(); ++i)
            cand = intersect_sorted(cand, idx.get(k, q, leaves[i]));
        if (parent_bound && !cand.empty()) cand = intersect_sorted(cand, *parent_bound);
    }
    // A connected k-core needs at least k+1 vertices including q; candidates
    // below that are settled by the index bound alone, without a peel.
    if (cand.size() < static_cast<std::size_t>(k) + 1 ||
        !std::binary_search(cand.begin(), cand.end(), q))
        return cache.store(t, std::nullopt);

    counters.subtrees_verified++;
    auto members = counted_peel(g->adj, cand, k, q, counters);
    if (!members.empty()) result = std::move(members);
    return cache.store(t, std::move(result));
}

std::optional<Cut> find_i(const CPTreeIndex& idx, VertexId q, int k, FeasibilityCache& cache,
                          QueryCounters& counters) {
    PTree tq = idx.restore_ptree(q);
    auto base = verify_ptree(idx, q, k, PTree{}, cache, counters);
    if (!base) return std::nullopt;
    if (tq.empty()) return Cut{PTree{}, tq};

    std::vector<std::pair<SubtreeCursor, std::vector<VertexId>>> stack;
    stack.push_back({make_cursor(PTree{}, idx.gptree()), *base});
    while (!stack.empty()) {
        auto [cur, members] = std::move(stack.back());
        stack.pop_back();
        auto exts = extend_rightmost(cur, tq, idx.gptree());
        counters.subtrees_generated += exts.size();
        for (auto& ext : exts) {
            auto m = verify_ptree(idx, q, k, ext.tree, cache, counters, &cur.tree, &members);
            if (!m) return Cut{ext.tree, cur.tree};
            stack.push_back({std::move(ext), std::move(*m)});
        }
    }
    return Cut{PTree{}, tq};  // every subtree feasible, T(q) included
}

std::optional<Cut> find_d(const CPTreeIndex& idx, VertexId q, int k, FeasibilityCache& cache,
                          QueryCounters& counters) {
    PTree tq = idx.restore_ptree(q);
    auto top = verify_ptree(idx, q, k, tq, cache, counters);
    if (top) return Cut{PTree{}, tq};

    std::vector<PTree> stack = {tq};
    std::unordered_set<PTree, PTreeHash> visited = {tq};
    while (!stack.empty()) {
        PTree t = std::move(stack.back());
        stack.pop_back();
        if (t.empty()) continue;  // nothing below the empty tree
        auto parents = parent_subtrees(t, idx.gptree());
        counters.subtrees_generated += parents.size();
        for (auto& p : parents) {
            auto m = verify_ptree(idx, q, k, p, cache, counters);
            if (m) return Cut{t, p};
            if (visited.insert(p).second) stack.push_back(std::move(p));
        }
    }
    return std::nullopt;  // even the empty tree is infeasible
}

std::optional<Cut> find_p(const CPTreeIndex& idx, VertexId q, int k, FeasibilityCache& cache,
                          QueryCounters& counters) {
    const GPTree& gp = idx.gptree();
    PTree tq = idx.restore_ptree(q);
    if (tq.empty()) {
        auto base = verify_ptree(idx, q, k, PTree{}, cache, counters);
        if (!base) return std::nullopt;
        return Cut{PTree{}, tq};
    }

    // Seed with a feasible leaf, tracing frontiers up when none qualifies.
    std::vector<LabelId> frontier = tree_leaves(tq, gp);
    LabelId seed = -1;
    for (;;) {
        for (LabelId t : frontier) {
            if (verify_ptree(idx, q, k, path_tree(t, gp), cache, counters)) {
                seed = t;
                break;
            }
        }
        if (seed != -1) break;
        std::vector<LabelId> next;
        for (LabelId t : frontier)
            if (t != 0) next.push_back(gp.parent(t));
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        if (next.empty()) {
            // Not even the root label is feasible; the cut sits on the empty tree.
            auto base = verify_ptree(idx, q, k, PTree{}, cache, counters);
            if (!base) return std::nullopt;
            return Cut{path_tree(0, gp), PTree{}};
        }
        frontier = std::move(next);
    }

    PTree f = path_tree(seed, gp);
    std::vector<VertexId> f_members = *verify_ptree(idx, q, k, f, cache, counters);

    // Merge the remaining labels greedily, deepest frontier first then the rest
    // of T(q) in canonical order.
    std::vector<LabelId> worklist;
    for (LabelId t : frontier)
        if (t != seed) worklist.push_back(t);
    std::vector<LabelId> rest(tq.nodes);
    std::sort(rest.begin(), rest.end(),
              [&gp](LabelId a, LabelId b) { return gp.rank(a) < gp.rank(b); });
    for (LabelId t : rest) worklist.push_back(t);
    std::vector<char> queued(gp.size(), 0);
    std::vector<LabelId> merged_order;
    for (LabelId t : worklist)
        if (!queued[t]) {
            queued[t] = 1;
            merged_order.push_back(t);
        }

    for (LabelId t : merged_order) {
        if (f.contains(t)) continue;
        PTree candidate = tree_union(f, path_tree(t, gp));
        counters.subtrees_generated++;
        const PTree* ctx = candidate.size() == f.size() + 1 ? &f : nullptr;
        auto m = verify_ptree(idx, q, k, candidate, cache, counters, ctx,
                              ctx ? &f_members : nullptr);
        if (m) {
            f = std::move(candidate);
            f_members = std::move(*m);
            continue;
        }
        // Walk t's root path to the last feasible prefix; the next node on the
        // path yields the infeasible side of the cut.
        auto path = gp.root_path(t);
        std::size_t lo = 0, hi = path.size() - 1;
        while (lo + 1 < hi) {
            std::size_t mid = (lo + hi) / 2;
            PTree probe = tree_union(f, path_tree(path[mid], gp));
            counters.subtrees_generated++;
            if (probe == f || verify_ptree(idx, q, k, probe, cache, counters))
                lo = mid;
            else
                hi = mid;
        }
        PTree feasible_side = tree_union(f, path_tree(path[lo], gp));
        PTree infeasible_side = tree_union(f, path_tree(path[hi], gp));
        return Cut{std::move(infeasible_side), std::move(feasible_side)};
    }
    return Cut{PTree{}, tq};  // merged everything: T(q) itself is feasible
}

ResultSet expand_ptree(const CPTreeIndex& idx, VertexId q, int k, const Cut& cut,
                       FeasibilityCache& cache, QueryCounters& counters) {
    const ProfiledGraph* g = idx.graph();
    if (!g) throw DataError("expand_ptree: index has no graph attached");
    const GPTree& gp = idx.gptree();
    PTree tq = idx.restore_ptree(q);

    std::unordered_map<PTree, std::vector<VertexId>, PTreeHash> found;
    auto record = [&found](const PTree& t, const std::vector<VertexId>& members) {
        found.emplace(t, members);
    };

    if (cut.infeasible.empty()) {
        // Degenerate cut: T(q) itself is feasible and is the unique maximal
        // subtree of the search space.
        auto m = verify_ptree(idx, q, k, cut.feasible, cache, counters);
        if (m) record(cut.feasible, *m);
        std::vector<std::pair<std::vector<VertexId>, PTree>> raw;
        for (auto& [tree, members] : found) raw.push_back({members, tree});
        return normalize(std::move(raw), *g, counters);
    }

    struct CutKey {
        PTree inf, feas;
        bool operator==(const CutKey&) const = default;
    };
    struct CutKeyHash {
        std::size_t operator()(const CutKey& c) const {
            return PTreeHash{}(c.inf) * 1000003u ^ PTreeHash{}(c.feas);
        }
    };
    std::unordered_set<CutKey, CutKeyHash> visited;
    std::deque<Cut> queue;
    auto push = [&](PTree inf, PTree feas) {
        CutKey key{inf, feas};
        if (visited.insert(std::move(key)).second)
            queue.push_back(Cut{std::move(inf), std::move(feas)});
    };
    push(cut.infeasible, cut.feasible);

    while (!queue.empty()) {
        Cut current = std::move(queue.front());
        queue.pop_front();
        const PTree& inf = current.infeasible;
        auto parents = parent_subtrees(inf, gp);
        counters.subtrees_generated += parents.size();
        for (auto& y : parents) {
            auto my = verify_ptree(idx, q, k, y, cache, counters);
            if (my) {
                record(y, *my);
                auto kids = child_subtrees(y, tq, gp);
                counters.subtrees_generated += kids.size();
                for (auto& kid : kids) {
                    auto mk = verify_ptree(idx, q, k, kid, cache, counters, &y, &*my);
                    if (!mk) {
                        push(kid, y);
                    } else {
                        record(kid, *mk);
                        PTree c = common_child(kid, inf);
                        // c contains the infeasible side, so it is infeasible
                        // by anti-monotonicity; seed the cache with that.
                        if (!cache.find(c)) cache.store(c, std::nullopt);
                        push(std::move(c), kid);
                    }
                }
            } else if (!y.empty()) {
                auto grand = parent_subtrees(y, gp);
                counters.subtrees_generated += grand.size();
                for (auto& k2 : grand) {
                    auto mk2 = verify_ptree(idx, q, k, k2, cache, counters);
                    if (mk2) {
                        record(k2, *mk2);
                        push(y, k2);
                    }
                }
            }
        }
    }

    std::vector<std::pair<std::vector<VertexId>, PTree>> raw;
    raw.reserve(found.size());
    for (auto& [tree, members] : found) raw.push_back({members, tree});
    return normalize(std::move(raw), *g, counters);
}

ResultSet query_advanced(const CPTreeIndex& idx, VertexId q, int k, CutStrategy strategy) {
    const ProfiledGraph* g = idx.graph();
    if (!g) throw DataError("query_advanced: index has no graph attached");
    if (q < 0 || q >= g->n)
        throw DataError("query vertex " + std::to_string(q) + " out of range");
    FeasibilityCache cache;
    QueryCounters counters;
    std::optional<Cut> cut;
    switch (strategy) {
        case CutStrategy::I: cut = find_i(idx, q, k, cache, counters); break;
        case CutStrategy::D: cut = find_d(idx, q, k, cache, counters); break;
        case CutStrategy::P: cut = find_p(idx, q, k, cache, counters); break;
    }
    if (!cut) {
        ResultSet empty;
        empty.counters = counters;
        return empty;
    }
    return expand_ptree(idx, q, k, *cut, cache, counters);
}

ResultSet normalize(std::vector<std::pair<std::vector<VertexId>, PTree>> raw,
                    const ProfiledGraph& g, QueryCounters counters) {
    std::vector<std::pair<PTree, std::vector<VertexId>>> entries;
    for (auto& [members, tree] : raw) {
        if (members.empty()) continue;
        std::vector<PTree> member_trees;
        member_trees.reserve(members.size());
        for (VertexId v : members) member_trees.push_back(g.ptrees[v]);
        PTree mct = maximal_common_subtree(member_trees);
        bool seen = false;
        for (auto& [m, _] : entries)
            if (m == mct) {
                seen = true;
                break;
            }
        if (!seen) entries.push_back({std::move(mct), members});
    }
    // Profile cohesiveness: drop themes strictly contained in another theme.
    std::vector<char> dead(entries.size(), 0);
    for (std::size_t i = 0; i < entries.size(); ++i)
        for (std::size_t j = 0; j < entries.size(); ++j) {
            if (i == j || dead[i]) continue;
            if (entries[i].first != entries[j].first &&
                is_subtree(entries[i].first, entries[j].first))
                dead[i] = 1;
        }
    ResultSet rs;
    rs.counters = counters;
    for (std::size_t i = 0; i < entries.size(); ++i)
        if (!dead[i]) rs.communities.push_back({std::move(entries[i].second),
                                                std::move(entries[i].first)});
    std::sort(rs.communities.begin(), rs.communities.end(),
              [&g](const Community& a, const Community& b) {
                  return canonical_less(a.mct, b.mct, g.gptree);
              });
    return rs;
}

std::uint64_t oracle_subtree_bound() {
    if (const char* env = std::getenv("PCS_ORACLE_BOUND")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 1ull << 16;
}

ResultSet query_oracle(const ProfiledGraph& g, VertexId q, int k, std::uint64_t bound) {
    if (q < 0 || q >= g.n) throw DataError("query vertex " + std::to_string(q) + " out of range");
    const PTree& tq = g.ptrees[q];
    std::uint64_t space = count_subtrees(tq, g.gptree);
    if (space > bound)
        throw DataError("oracle: search space " + std::to_string(space) +
                        " exceeds bound " + std::to_string(bound));

    // Enumerate every parent-closed subset of T(q) directly; preorder ranks
    // guarantee a node's parent is decided before the node.
    std::vector<LabelId> order(tq.nodes);
    const GPTree& gp = g.gptree;
    std::sort(order.begin(), order.end(),
              [&gp](LabelId a, LabelId b) { return gp.rank(a) < gp.rank(b); });

    QueryCounters counters;
    std::unordered_map<PTree, std::optional<std::vector<VertexId>>, PTreeHash> feas;
    std::vector<LabelId> current;
    auto evaluate = [&](const PTree& t) {
        counters.subtrees_generated++;
        counters.subtrees_verified++;
        auto members = gkt_direct(g, q, k, t);
        counters.gkt_computations++;
        counters.gkt_candidate_vertices += g.n;
        feas[t] = members.empty() ? std::nullopt
                                  : std::optional<std::vector<VertexId>>(std::move(members));
    };

    std::vector<char> in_current(gp.size(), 0);
    auto emit = [&]() {
        std::vector<LabelId> sorted(current);
        std::sort(sorted.begin(), sorted.end());
        evaluate(PTree(std::move(sorted)));
    };
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == order.size()) {
            emit();
            return;
        }
        LabelId node = order[i];
        self(self, i + 1);  // exclude node (and transitively its subtree)
        if (node == 0 || in_current[gp.parent(node)]) {
            current.push_back(node);
            in_current[node] = 1;
            self(self, i + 1);
            in_current[node] = 0;
            current.pop_back();
        }
    };
    rec(rec, 0);

    std::vector<std::pair<std::vector<VertexId>, PTree>> raw;
    for (auto& [tree, members] : feas) {
        if (!members) continue;
        bool maximal = true;
        for (const PTree& child : child_subtrees(tree, tq, gp)) {
            auto it = feas.find(child);
            if (it != feas.end() && it->second) {
                maximal = false;
                break;
            }
        }
        if (maximal) raw.push_back({*members, tree});
    }
    return normalize(std::move(raw), g, counters);
}

}  // namespace pcs

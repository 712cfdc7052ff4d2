#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "pcs/cpindex.hpp"
#include "pcs/subtree.hpp"

namespace pcs {

// One profiled community: a vertex set plus the maximal common subtree of its
// members' P-trees (the community theme).
struct Community {
    std::vector<VertexId> vertices;  // sorted
    PTree mct;

    bool operator==(const Community&) const = default;
};

struct QueryCounters {
    std::uint64_t subtrees_generated = 0;   // trees produced by enumeration / lattice moves
    std::uint64_t subtrees_verified = 0;    // feasibility checks that ran a restricted peel
    std::uint64_t gkt_computations = 0;     // peel executions
    std::uint64_t gkt_candidate_vertices = 0;  // summed peel input sizes
};

struct ResultSet {
    std::vector<Community> communities;  // sorted by mct canonical order
    QueryCounters counters;

    bool same_communities(const ResultSet& other) const {
        return communities == other.communities;
    }
};

// Border cut: `infeasible` is a lattice child of `feasible`. An empty
// infeasible side marks the degenerate cut (∅, T(q)) used when the whole
// P-tree of q is feasible.
struct Cut {
    PTree infeasible;
    PTree feasible;
};

// Memoized feasibility results, keyed by subtree node set. A cached entry is
// the exact member set of G_k[T], or nullopt when infeasible.
class FeasibilityCache {
public:
    const std::optional<std::vector<VertexId>>* find(const PTree& t) const;
    const std::optional<std::vector<VertexId>>& store(const PTree& t,
                                                      std::optional<std::vector<VertexId>> members);
    std::size_t size() const { return memo_.size(); }

private:
    std::unordered_map<PTree, std::optional<std::vector<VertexId>>, PTreeHash> memo_;
};

enum class CutStrategy { I, D, P };

// Optional instrumentation for tests.
struct QueryTrace {
    std::vector<PTree> generated;
};

// Exhaustive rightmost-extension search over subtrees of T(q), verifying each
// candidate against the plain k-core of q and pruning by anti-monotonicity.
ResultSet query_basic(const ProfiledGraph& g, VertexId q, int k, QueryTrace* trace = nullptr);

// Same search, but every verification peels inside the members found for the
// parent subtree intersected with the indexed core of the added label.
ResultSet query_incre(const CPTreeIndex& idx, VertexId q, int k);

// G_k[t], memoized. Single-leaf subtrees are answered from the index alone;
// other trees peel inside the intersection of their leaves' indexed cores, or
// inside context_members ∩ get(new node) when the tree extends a known
// feasible parent by one node.
std::optional<std::vector<VertexId>> verify_ptree(const CPTreeIndex& idx, VertexId q, int k,
                                                  const PTree& t, FeasibilityCache& cache,
                                                  QueryCounters& counters,
                                                  const PTree* context_parent = nullptr,
                                                  const std::vector<VertexId>* context_members = nullptr);

// Initial-cut searches. nullopt means no feasible subtree exists at all (not
// even the empty tree), in which case the query answer is empty.
std::optional<Cut> find_i(const CPTreeIndex& idx, VertexId q, int k, FeasibilityCache& cache,
                          QueryCounters& counters);
std::optional<Cut> find_d(const CPTreeIndex& idx, VertexId q, int k, FeasibilityCache& cache,
                          QueryCounters& counters);
std::optional<Cut> find_p(const CPTreeIndex& idx, VertexId q, int k, FeasibilityCache& cache,
                          QueryCounters& counters);

// Border expansion seeded by one cut; visits adjacent cuts breadth-first and
// records every feasible subtree it proves, deduplicating visited cuts.
ResultSet expand_ptree(const CPTreeIndex& idx, VertexId q, int k, const Cut& cut,
                       FeasibilityCache& cache, QueryCounters& counters);

ResultSet query_advanced(const CPTreeIndex& idx, VertexId q, int k, CutStrategy strategy);

// Recomputes each candidate's maximal common subtree from its member P-trees,
// merges equal themes, and drops themes strictly contained in another.
ResultSet normalize(std::vector<std::pair<std::vector<VertexId>, PTree>> raw,
                    const ProfiledGraph& g, QueryCounters counters);

// Brute force over every subtree of T(q) (subset enumeration, not rightmost
// extension), with gkt_direct as the only verifier. Throws DataError when
// count_subtrees(T(q)) exceeds the bound.
std::uint64_t oracle_subtree_bound();  // PCS_ORACLE_BOUND env override, default 65536
ResultSet query_oracle(const ProfiledGraph& g, VertexId q, int k,
                       std::uint64_t bound = oracle_subtree_bound());

}  // namespace pcs

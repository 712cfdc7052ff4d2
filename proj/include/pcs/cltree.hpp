#pragma once

#include <span>
#include <vector>

#include "pcs/graph.hpp"

namespace pcs {

struct CoreDecomposition {
    std::vector<int> core_number;  // max k such that the vertex is in the k-core
    int max_core = 0;
};

// Batagelj-Zaversnik bucket peeling, O(n + m).
CoreDecomposition core_decomposition(const std::vector<std::vector<VertexId>>& adj);

struct CLNode {
    int level = 0;
    std::vector<VertexId> vertices;  // vertices whose core number equals level
    int parent = -1;
    std::vector<int> children;
    bool synthetic = false;  // the level-0 root that ties components together

    bool operator==(const CLNode&) const = default;
};

// Tree of nested connected k-cores. A non-synthetic node at level k together
// with its descendants' vertices is one connected k-core component; each
// vertex is stored exactly once, at its own core level.
class CLTree {
public:
    CLTree() = default;

    // adj uses local ids 0..n-1; vertex lists are translated through
    // local_to_global when given (per-label induced subgraphs).
    static CLTree build(const std::vector<std::vector<VertexId>>& adj);
    static CLTree build(const std::vector<std::vector<VertexId>>& adj,
                        const std::vector<VertexId>& local_to_global);

    // Reassembles a tree from persisted nodes, rebuilding child links and the
    // vertex-to-node map. Throws DataError on inconsistent links.
    static CLTree from_parts(std::vector<CLNode> nodes, int root);

    // Connected k-core component containing q, sorted; empty when q's core
    // number is below k or q is not in this tree.
    std::vector<VertexId> k_hat_core(int k, VertexId q) const;

    int node_of(VertexId v) const;  // -1 when v is not stored
    const std::vector<CLNode>& nodes() const { return nodes_; }
    int root() const { return root_; }
    const std::vector<VertexId>& members() const { return members_; }

    bool operator==(const CLTree&) const = default;

private:
    std::vector<CLNode> nodes_;
    int root_ = -1;
    std::vector<VertexId> members_;      // sorted global ids
    std::vector<int> node_of_member_;    // parallel to members_

    friend class CPTreeIndex;
};

// Peels `candidates` (sorted vertex ids) down to minimum degree k inside the
// induced subgraph and returns the connected component containing q, sorted.
std::vector<VertexId> k_core_component(const std::vector<std::vector<VertexId>>& adj,
                                       std::span<const VertexId> candidates, int k, VertexId q);

// G_k[T]: restrict to vertices whose P-tree contains t, peel to min degree k,
// return the component of q. Index-free reference implementation.
std::vector<VertexId> gkt_direct(const ProfiledGraph& g, VertexId q, int k, const PTree& t);

}  // namespace pcs

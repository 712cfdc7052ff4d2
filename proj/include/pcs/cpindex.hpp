#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <vector>

#include "pcs/cltree.hpp"
#include "pcs/graph.hpp"

namespace pcs {

// One node per label occurring in any P-tree, linked in GP-tree shape. Holds
// the vertices carrying the label and the CL-tree of their induced subgraph.
struct CPTreeNode {
    LabelId label = -1;
    LabelId parent_label = -1;
    std::vector<LabelId> child_labels;
    std::vector<VertexId> vertices;            // sorted
    std::shared_ptr<const CLTree> cltree;      // null when delegated
    LabelId delegate = -1;                     // child with an identical subgraph
};

struct IndexBuildOptions {
    // Drop CL-trees of nodes whose vertex set equals all of their children's;
    // queries are answered through the child instead. Answers are unchanged.
    bool compress = false;
};

class CPTreeIndex {
public:
    CPTreeIndex() = default;

    static CPTreeIndex build(std::shared_ptr<const ProfiledGraph> g, IndexBuildOptions opts = {});

    // Connected k-core containing q within the subgraph of vertices carrying
    // `label`; empty for absent labels or vertices. Total function.
    std::vector<VertexId> get(int k, VertexId q, LabelId label) const;

    // Rebuilds T(q) from the head map by walking leaf labels up to the root.
    PTree restore_ptree(VertexId q) const;

    const GPTree& gptree() const { return gptree_; }
    int vertex_count() const { return n_; }
    const ProfiledGraph* graph() const { return graph_.get(); }
    const CLTree& global_cltree() const { return global_cltree_; }

    bool has_node(LabelId l) const;
    const CPTreeNode& node(LabelId l) const { return nodes_[l]; }
    const std::vector<LabelId>& head(VertexId v) const { return head_map_[v]; }
    std::vector<LabelId> present_labels() const;

    // Sum over labels of |vertex set|; equals the sum of all P-tree sizes.
    std::uint64_t stored_vertex_entries() const;

    // Versioned little-endian format with a trailing checksum; the graph
    // adjacency is not stored, so deserialize optionally re-attaches it.
    void serialize(std::ostream& out) const;
    static CPTreeIndex deserialize(std::istream& in,
                                   std::shared_ptr<const ProfiledGraph> g = nullptr);

    bool same_index(const CPTreeIndex& other) const;

private:
    std::shared_ptr<const ProfiledGraph> graph_;
    GPTree gptree_;
    int n_ = 0;
    std::vector<CPTreeNode> nodes_;      // indexed by label; present_[l] gates validity
    std::vector<char> present_;
    std::vector<std::vector<LabelId>> head_map_;
    CLTree global_cltree_;

    const CLTree* cltree_for(LabelId l) const;  // follows delegation
};

}  // namespace pcs

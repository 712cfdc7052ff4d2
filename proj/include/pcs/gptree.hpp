#pragma once

#include <string>
#include <vector>

namespace pcs {

// Label of a GP-tree node. Ids are dense, 0 is always the root.
using LabelId = int;
using VertexId = int;

// The global label taxonomy. Every P-tree is an induced rooted subtree of it.
// Immutable after construction; child lists are kept in ascending-id order,
// which fixes the canonical (depth-first) label order used for enumeration.
class GPTree {
public:
    GPTree() = default;

    // parent[i] is the parent label of i, -1 for the root (which must be id 0).
    // Throws DataError on multiple roots, cycles, or dangling parents.
    static GPTree from_parents(std::vector<LabelId> parent,
                               std::vector<std::string> names);

    int size() const { return static_cast<int>(parent_.size()); }
    bool valid_label(LabelId l) const { return l >= 0 && l < size(); }

    LabelId parent(LabelId l) const { return parent_[l]; }
    const std::vector<LabelId>& children(LabelId l) const { return children_[l]; }
    int depth(LabelId l) const { return depth_[l]; }   // root has depth 1
    int rank(LabelId l) const { return rank_[l]; }     // depth-first position, root = 0
    const std::string& name(LabelId l) const { return names_[l]; }

    // root .. l, inclusive
    std::vector<LabelId> root_path(LabelId l) const;
    int max_depth() const { return max_depth_; }

private:
    std::vector<LabelId> parent_;
    std::vector<std::vector<LabelId>> children_;
    std::vector<int> depth_;
    std::vector<int> rank_;
    std::vector<std::string> names_;
    int max_depth_ = 0;
};

}  // namespace pcs

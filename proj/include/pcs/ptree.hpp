#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pcs/gptree.hpp"

namespace pcs {

// A P-tree is stored as its label-id set, sorted ascending. The tree structure
// is induced from the GP-tree, so the set must be closed under parents: with
// that invariant, subset/union/intersection of node sets implement the
// corresponding tree operations exactly.
struct PTree {
    std::vector<LabelId> nodes;

    PTree() = default;
    explicit PTree(std::vector<LabelId> sorted_nodes) : nodes(std::move(sorted_nodes)) {}

    bool empty() const { return nodes.empty(); }
    std::size_t size() const { return nodes.size(); }
    bool contains(LabelId l) const;

    bool operator==(const PTree&) const = default;
};

struct PTreeHash {
    std::size_t operator()(const PTree& t) const;
};

// Minimal superset of `labels` closed under GP-tree parents.
PTree close_under_parents(const std::vector<LabelId>& labels, const GPTree& gp);

// True iff every node of t has its parent in t (and the root when non-empty).
bool is_parent_closed(const PTree& t, const GPTree& gp);

}  // namespace pcs

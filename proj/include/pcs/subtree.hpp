#pragma once

#include <cstdint>
#include <vector>

#include "pcs/gptree.hpp"
#include "pcs/ptree.hpp"

namespace pcs {

// s is an induced rooted subtree of t. With parent-closed node sets this is a
// plain subset test.
bool is_subtree(const PTree& s, const PTree& t);

// Root-to-rightmost-leaf path of t. The rightmost child of a node is its last
// present child in canonical sibling order.
std::vector<LabelId> rightmost_path(const PTree& t, const GPTree& gp);

// A subtree plus its rightmost path, so repeated extension does not recompute
// the path from scratch.
struct SubtreeCursor {
    PTree tree;
    std::vector<LabelId> rightmost_path;
};

SubtreeCursor make_cursor(const PTree& t, const GPTree& gp);

// All rightmost-path extensions of cur.tree inside bound. Each output adds one
// node that becomes the new rightmost leaf; enumerating breadth/depth-first
// from the empty tree this visits every subtree of bound exactly once.
std::vector<SubtreeCursor> extend_rightmost(const SubtreeCursor& cur, const PTree& bound,
                                            const GPTree& gp);

// Convenience wrapper over extend_rightmost; outputs ordered by the canonical
// rank of the added node.
std::vector<PTree> generate_subtrees(const PTree& t_prime, const PTree& bound,
                                     const GPTree& gp);

// Number of subtrees of t, including the empty tree. Computed by the product
// rule over child branches (independent of the rightmost-extension machinery,
// so it can serve as its oracle). Saturates instead of overflowing.
std::uint64_t count_subtrees(const PTree& t, const GPTree& gp);

// Lattice neighbors: parents remove one leaf, children add one node anywhere
// under the bound (no rightmost restriction).
std::vector<PTree> parent_subtrees(const PTree& t, const GPTree& gp);
std::vector<PTree> child_subtrees(const PTree& t, const PTree& bound, const GPTree& gp);

// Common child of two lattice children of the same parent: the node-set union.
PTree common_child(const PTree& ci, const PTree& cj);

// Node-set intersection of all inputs; parent-closure is preserved.
// Throws std::invalid_argument on an empty list.
PTree maximal_common_subtree(const std::vector<PTree>& trees);

// Nodes of t with no child inside t, ascending by canonical rank.
std::vector<LabelId> tree_leaves(const PTree& t, const GPTree& gp);

PTree tree_union(const PTree& a, const PTree& b);
PTree tree_intersection(const PTree& a, const PTree& b);

// Lexicographic comparison of canonical rank sequences, for deterministic
// ordering of result lists.
bool canonical_less(const PTree& a, const PTree& b, const GPTree& gp);

}  // namespace pcs

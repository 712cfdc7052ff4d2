#include "pcs/subtree.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace pcs {

namespace {

constexpr std::uint64_t kCountCap = std::uint64_t(1) << 62;

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > kCountCap / a) return kCountCap;
    return a * b;
}

// Insert one id into a sorted vector, returning a copy.
PTree with_node(const PTree& t, LabelId x) {
    PTree out = t;
    out.nodes.insert(std::upper_bound(out.nodes.begin(), out.nodes.end(), x), x);
    return out;
}

PTree without_node(const PTree& t, LabelId x) {
    PTree out = t;
    out.nodes.erase(std::lower_bound(out.nodes.begin(), out.nodes.end(), x));
    return out;
}

}  // namespace

bool is_subtree(const PTree& s, const PTree& t) {
    return std::includes(t.nodes.begin(), t.nodes.end(), s.nodes.begin(), s.nodes.end());
}

std::vector<LabelId> rightmost_path(const PTree& t, const GPTree& gp) {
    std::vector<LabelId> path;
    if (t.empty()) return path;
    LabelId cur = 0;
    path.push_back(cur);
    for (;;) {
        LabelId last = -1;  // sibling id order equals sibling canonical order
        for (LabelId c : gp.children(cur))
            if (t.contains(c)) last = c;
        if (last == -1) break;
        path.push_back(last);
        cur = last;
    }
    return path;
}

SubtreeCursor make_cursor(const PTree& t, const GPTree& gp) {
    return {t, rightmost_path(t, gp)};
}

std::vector<SubtreeCursor> extend_rightmost(const SubtreeCursor& cur, const PTree& bound,
                                            const GPTree& gp) {
    std::vector<SubtreeCursor> out;
    if (cur.tree.empty()) {
        if (bound.empty()) return out;
        out.push_back({PTree({0}), {0}});
        return out;
    }
    // A new node x attaches at a rightmost-path node p and must follow every
    // child of p already in the tree; the path node after p is exactly that
    // last child, so x must rank past it.
    for (std::size_t i = 0; i < cur.rightmost_path.size(); ++i) {
        LabelId p = cur.rightmost_path[i];
        LabelId last_child =
            (i + 1 < cur.rightmost_path.size()) ? cur.rightmost_path[i + 1] : -1;
        for (LabelId x : gp.children(p)) {
            if (last_child != -1 && x <= last_child) continue;
            if (!bound.contains(x) || cur.tree.contains(x)) continue;
            SubtreeCursor next;
            next.tree = with_node(cur.tree, x);
            next.rightmost_path.assign(cur.rightmost_path.begin(),
                                       cur.rightmost_path.begin() + i + 1);
            next.rightmost_path.push_back(x);
            out.push_back(std::move(next));
        }
    }
    return out;
}

std::vector<PTree> generate_subtrees(const PTree& t_prime, const PTree& bound,
                                     const GPTree& gp) {
    auto cursors = extend_rightmost(make_cursor(t_prime, gp), bound, gp);
    std::vector<PTree> out;
    out.reserve(cursors.size());
    std::sort(cursors.begin(), cursors.end(),
              [&](const SubtreeCursor& a, const SubtreeCursor& b) {
                  return gp.rank(a.rightmost_path.back()) < gp.rank(b.rightmost_path.back());
              });
    for (auto& c : cursors) out.push_back(std::move(c.tree));
    return out;
}

std::uint64_t count_subtrees(const PTree& t, const GPTree& gp) {
    if (t.empty()) return 1;
    // Subtrees containing a node multiply independently over its child
    // branches (each branch contributes "absent or any rooted subtree").
    std::vector<LabelId> order(t.nodes);
    std::sort(order.begin(), order.end(),
              [&](LabelId a, LabelId b) { return gp.depth(a) > gp.depth(b); });
    std::vector<std::uint64_t> rooted(gp.size(), 0);
    for (LabelId l : order) {
        std::uint64_t prod = 1;
        for (LabelId c : gp.children(l))
            if (t.contains(c)) prod = sat_mul(prod, rooted[c] + 1);
        rooted[l] = prod;
    }
    std::uint64_t total = rooted[0] + 1;  // plus the empty tree
    return std::min(total, kCountCap);
}

std::vector<PTree> parent_subtrees(const PTree& t, const GPTree& gp) {
    std::vector<PTree> out;
    if (t.empty()) throw std::invalid_argument("parent_subtrees: empty tree");
    for (LabelId leaf : tree_leaves(t, gp)) {
        if (leaf == 0 && t.size() > 1) continue;  // root removable only from {r}
        out.push_back(without_node(t, leaf));
    }
    return out;
}

std::vector<PTree> child_subtrees(const PTree& t, const PTree& bound, const GPTree& gp) {
    std::vector<PTree> out;
    std::vector<LabelId> adds;
    if (t.empty()) {
        if (!bound.empty()) adds.push_back(0);
    } else {
        for (LabelId x : bound.nodes)
            if (!t.contains(x) && t.contains(gp.parent(x))) adds.push_back(x);
    }
    std::sort(adds.begin(), adds.end(),
              [&](LabelId a, LabelId b) { return gp.rank(a) < gp.rank(b); });
    out.reserve(adds.size());
    for (LabelId x : adds) out.push_back(with_node(t, x));
    return out;
}

PTree common_child(const PTree& ci, const PTree& cj) {
    return tree_union(ci, cj);
}

PTree maximal_common_subtree(const std::vector<PTree>& trees) {
    if (trees.empty()) throw std::invalid_argument("maximal_common_subtree: empty input");
    PTree acc = trees.front();
    for (std::size_t i = 1; i < trees.size() && !acc.empty(); ++i)
        acc = tree_intersection(acc, trees[i]);
    return acc;
}

std::vector<LabelId> tree_leaves(const PTree& t, const GPTree& gp) {
    std::vector<LabelId> leaves;
    for (LabelId l : t.nodes) {
        bool has_child = false;
        for (LabelId c : gp.children(l))
            if (t.contains(c)) {
                has_child = true;
                break;
            }
        if (!has_child) leaves.push_back(l);
    }
    std::sort(leaves.begin(), leaves.end(),
              [&](LabelId a, LabelId b) { return gp.rank(a) < gp.rank(b); });
    return leaves;
}

PTree tree_union(const PTree& a, const PTree& b) {
    PTree out;
    out.nodes.reserve(a.size() + b.size());
    std::set_union(a.nodes.begin(), a.nodes.end(), b.nodes.begin(), b.nodes.end(),
                   std::back_inserter(out.nodes));
    return out;
}

PTree tree_intersection(const PTree& a, const PTree& b) {
    PTree out;
    std::set_intersection(a.nodes.begin(), a.nodes.end(), b.nodes.begin(), b.nodes.end(),
                          std::back_inserter(out.nodes));
    return out;
}

bool canonical_less(const PTree& a, const PTree& b, const GPTree& gp) {
    std::vector<int> ra, rb;
    ra.reserve(a.size());
    rb.reserve(b.size());
    for (LabelId l : a.nodes) ra.push_back(gp.rank(l));
    for (LabelId l : b.nodes) rb.push_back(gp.rank(l));
    std::sort(ra.begin(), ra.end());
    std::sort(rb.begin(), rb.end());
    return std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end());
}

}  // namespace pcs

#include "pcs/gptree.hpp"

#include <algorithm>
#include <stdexcept>

#include "pcs/graph.hpp"

namespace pcs {

GPTree GPTree::from_parents(std::vector<LabelId> parent, std::vector<std::string> names) {
    const int size = static_cast<int>(parent.size());
    if (size == 0) throw DataError("GP-tree: empty");
    if (names.size() != parent.size()) throw DataError("GP-tree: name count mismatch");

    GPTree gp;
    gp.parent_ = std::move(parent);
    gp.names_ = std::move(names);
    gp.children_.assign(size, {});
    gp.depth_.assign(size, 0);
    gp.rank_.assign(size, 0);

    int roots = 0;
    for (LabelId l = 0; l < size; ++l) {
        LabelId p = gp.parent_[l];
        if (p == -1) {
            ++roots;
            if (l != 0) throw DataError("GP-tree: root must have id 0");
        } else if (p < 0 || p >= size) {
            throw DataError("GP-tree: node " + std::to_string(l) + " has dangling parent " +
                            std::to_string(p));
        } else {
            gp.children_[p].push_back(l);
        }
    }
    if (roots != 1) throw DataError("GP-tree: expected exactly one root, got " +
                                    std::to_string(roots));
    for (auto& cs : gp.children_) std::sort(cs.begin(), cs.end());

    // Depth-first numbering from the root; unreached nodes sit on a cycle.
    int next_rank = 0;
    std::vector<LabelId> stack = {0};
    gp.depth_[0] = 1;
    while (!stack.empty()) {
        LabelId l = stack.back();
        stack.pop_back();
        gp.rank_[l] = next_rank++;
        gp.max_depth_ = std::max(gp.max_depth_, gp.depth_[l]);
        const auto& cs = gp.children_[l];
        for (auto it = cs.rbegin(); it != cs.rend(); ++it) {
            gp.depth_[*it] = gp.depth_[l] + 1;
            stack.push_back(*it);
        }
    }
    if (next_rank != size) throw DataError("GP-tree: cycle detected");
    return gp;
}

std::vector<LabelId> GPTree::root_path(LabelId l) const {
    std::vector<LabelId> path;
    for (LabelId cur = l; cur != -1; cur = parent_[cur]) path.push_back(cur);
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace pcs

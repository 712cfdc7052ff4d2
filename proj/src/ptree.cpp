#include "pcs/ptree.hpp"

#include <algorithm>
#include <string>

#include "pcs/detail/hash.hpp"
#include "pcs/graph.hpp"

namespace pcs {

bool PTree::contains(LabelId l) const {
    return std::binary_search(nodes.begin(), nodes.end(), l);
}

std::size_t PTreeHash::operator()(const PTree& t) const {
    return static_cast<std::size_t>(
        detail::fnv1a64(t.nodes.data(), t.nodes.size() * sizeof(LabelId)));
}

PTree close_under_parents(const std::vector<LabelId>& labels, const GPTree& gp) {
    std::vector<char> in(gp.size(), 0);
    for (LabelId l : labels) {
        if (!gp.valid_label(l))
            throw DataError("P-tree label " + std::to_string(l) + " not in the GP-tree");
        for (LabelId cur = l; cur != -1 && !in[cur]; cur = gp.parent(cur)) in[cur] = 1;
    }
    PTree t;
    for (LabelId l = 0; l < gp.size(); ++l)
        if (in[l]) t.nodes.push_back(l);
    return t;
}

bool is_parent_closed(const PTree& t, const GPTree& gp) {
    for (LabelId l : t.nodes) {
        if (l == 0) continue;
        if (!t.contains(gp.parent(l))) return false;
    }
    return t.empty() || t.contains(0);
}

}  // namespace pcs

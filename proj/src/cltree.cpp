#include "pcs/cltree.hpp"

#include <algorithm>
#include <numeric>

#include "pcs/subtree.hpp"

namespace pcs {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[b] = a;
    }
};

}  // namespace

CoreDecomposition core_decomposition(const std::vector<std::vector<VertexId>>& adj) {
    const int n = static_cast<int>(adj.size());
    CoreDecomposition cd;
    cd.core_number.assign(n, 0);
    if (n == 0) return cd;

    std::vector<int> deg(n), pos(n), order(n);
    int max_deg = 0;
    for (int v = 0; v < n; ++v) {
        deg[v] = static_cast<int>(adj[v].size());
        max_deg = std::max(max_deg, deg[v]);
    }
    std::vector<int> bin(max_deg + 2, 0);
    for (int v = 0; v < n; ++v) bin[deg[v]]++;
    int start = 0;
    for (int d = 0; d <= max_deg; ++d) {
        int cnt = bin[d];
        bin[d] = start;
        start += cnt;
    }
    for (int v = 0; v < n; ++v) {
        pos[v] = bin[deg[v]]++;
        order[pos[v]] = v;
    }
    for (int d = max_deg; d >= 1; --d) bin[d] = bin[d - 1];
    bin[0] = 0;

    for (int i = 0; i < n; ++i) {
        int v = order[i];
        cd.core_number[v] = deg[v];
        cd.max_core = std::max(cd.max_core, deg[v]);
        for (VertexId u : adj[v]) {
            if (deg[u] > deg[v]) {
                int du = deg[u], pu = pos[u];
                int pw = bin[du], w = order[pw];
                if (u != w) {
                    pos[u] = pw;
                    pos[w] = pu;
                    order[pu] = w;
                    order[pw] = u;
                }
                bin[du]++;
                deg[u]--;
            }
        }
    }
    return cd;
}

CLTree CLTree::build(const std::vector<std::vector<VertexId>>& adj) {
    std::vector<VertexId> identity(adj.size());
    std::iota(identity.begin(), identity.end(), 0);
    return build(adj, identity);
}

CLTree CLTree::build(const std::vector<std::vector<VertexId>>& adj,
                     const std::vector<VertexId>& local_to_global) {
    const int n = static_cast<int>(adj.size());
    CLTree t;
    CoreDecomposition cd = core_decomposition(adj);

    std::vector<std::vector<int>> at_level(cd.max_core + 1);
    for (int v = 0; v < n; ++v) at_level[cd.core_number[v]].push_back(v);

    UnionFind uf(n);
    std::vector<int> top(n, -1);  // CL-node of a component, valid at its uf root
    std::vector<int> node_of_local(n, -1);
    std::vector<int> grp_node(n, -1), grp_stamp(n, -1);

    for (int level = cd.max_core; level >= 0; --level) {
        const auto& newly = at_level[level];
        if (newly.empty()) continue;
        // Capture the tops of already-active neighbor components before any
        // union at this level disturbs their roots.
        std::vector<std::vector<int>> adj_tops(newly.size());
        for (std::size_t i = 0; i < newly.size(); ++i) {
            int v = newly[i];
            for (VertexId u : adj[v])
                if (cd.core_number[u] > level) adj_tops[i].push_back(top[uf.find(u)]);
        }
        for (int v : newly)
            for (VertexId u : adj[v])
                if (cd.core_number[u] >= level) uf.unite(v, u);

        // Group the new vertices by component and mint one node per group.
        for (std::size_t i = 0; i < newly.size(); ++i) {
            int v = newly[i];
            int r = uf.find(v);
            if (grp_stamp[r] != level) {
                grp_stamp[r] = level;
                grp_node[r] = static_cast<int>(t.nodes_.size());
                t.nodes_.push_back(CLNode{level, {}, -1, {}, false});
                top[r] = grp_node[r];
            }
            int node = grp_node[r];
            t.nodes_[node].vertices.push_back(local_to_global[v]);
            node_of_local[v] = node;
            for (int child : adj_tops[i]) {
                if (t.nodes_[child].parent == -1) {
                    t.nodes_[child].parent = node;
                    t.nodes_[node].children.push_back(child);
                }
            }
        }
    }

    // Synthetic level-0 root ties the per-component tops into one tree.
    int root = static_cast<int>(t.nodes_.size());
    t.nodes_.push_back(CLNode{0, {}, -1, {}, true});
    for (int i = 0; i < root; ++i) {
        if (t.nodes_[i].parent == -1) {
            t.nodes_[i].parent = root;
            t.nodes_[root].children.push_back(i);
        }
    }
    t.root_ = root;
    for (auto& node : t.nodes_) std::sort(node.vertices.begin(), node.vertices.end());

    t.members_.resize(n);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return local_to_global[a] < local_to_global[b]; });
    t.node_of_member_.resize(n);
    for (int i = 0; i < n; ++i) {
        t.members_[i] = local_to_global[order[i]];
        t.node_of_member_[i] = node_of_local[order[i]];
    }
    return t;
}

CLTree CLTree::from_parts(std::vector<CLNode> nodes, int root) {
    CLTree t;
    const int count = static_cast<int>(nodes.size());
    if (root < 0 || root >= count) throw DataError("CL-tree parts: bad root");
    std::vector<std::pair<VertexId, int>> member_pairs;
    for (int i = 0; i < count; ++i) {
        nodes[i].children.clear();
        for (VertexId v : nodes[i].vertices) member_pairs.push_back({v, i});
    }
    for (int i = 0; i < count; ++i) {
        int p = nodes[i].parent;
        if (p < -1 || p >= count) throw DataError("CL-tree parts: parent out of range");
        if (p == -1 && i != root) throw DataError("CL-tree parts: detached node");
        if (p != -1) nodes[p].children.push_back(i);
    }
    std::sort(member_pairs.begin(), member_pairs.end());
    for (std::size_t i = 1; i < member_pairs.size(); ++i)
        if (member_pairs[i].first == member_pairs[i - 1].first)
            throw DataError("CL-tree parts: vertex stored twice");
    t.nodes_ = std::move(nodes);
    t.root_ = root;
    t.members_.reserve(member_pairs.size());
    t.node_of_member_.reserve(member_pairs.size());
    for (auto [v, node] : member_pairs) {
        t.members_.push_back(v);
        t.node_of_member_.push_back(node);
    }
    return t;
}

int CLTree::node_of(VertexId v) const {
    auto it = std::lower_bound(members_.begin(), members_.end(), v);
    if (it == members_.end() || *it != v) return -1;
    return node_of_member_[it - members_.begin()];
}

std::vector<VertexId> CLTree::k_hat_core(int k, VertexId q) const {
    std::vector<VertexId> out;
    int node = node_of(q);
    if (node == -1 || nodes_[node].level < k) return out;
    while (nodes_[node].parent != -1 && !nodes_[nodes_[node].parent].synthetic &&
           nodes_[nodes_[node].parent].level >= k)
        node = nodes_[node].parent;
    std::vector<int> stack = {node};
    while (!stack.empty()) {
        int cur = stack.back();
        stack.pop_back();
        out.insert(out.end(), nodes_[cur].vertices.begin(), nodes_[cur].vertices.end());
        for (int c : nodes_[cur].children) stack.push_back(c);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<VertexId> k_core_component(const std::vector<std::vector<VertexId>>& adj,
                                       std::span<const VertexId> candidates, int k, VertexId q) {
    std::vector<VertexId> out;
    auto local_of = [&](VertexId v) -> int {
        auto it = std::lower_bound(candidates.begin(), candidates.end(), v);
        if (it == candidates.end() || *it != v) return -1;
        return static_cast<int>(it - candidates.begin());
    };
    int ql = local_of(q);
    if (ql == -1) return out;

    const int c = static_cast<int>(candidates.size());
    std::vector<int> deg(c, 0);
    for (int i = 0; i < c; ++i)
        for (VertexId u : adj[candidates[i]])
            if (local_of(u) != -1) deg[i]++;

    std::vector<char> removed(c, 0);
    std::vector<int> queue;
    for (int i = 0; i < c; ++i)
        if (deg[i] < k) {
            removed[i] = 1;
            queue.push_back(i);
        }
    while (!queue.empty()) {
        int i = queue.back();
        queue.pop_back();
        for (VertexId u : adj[candidates[i]]) {
            int j = local_of(u);
            if (j != -1 && !removed[j] && --deg[j] < k) {
                removed[j] = 1;
                queue.push_back(j);
            }
        }
    }
    if (removed[ql]) return out;

    std::vector<char> seen(c, 0);
    std::vector<int> stack = {ql};
    seen[ql] = 1;
    while (!stack.empty()) {
        int i = stack.back();
        stack.pop_back();
        out.push_back(candidates[i]);
        for (VertexId u : adj[candidates[i]]) {
            int j = local_of(u);
            if (j != -1 && !removed[j] && !seen[j]) {
                seen[j] = 1;
                stack.push_back(j);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<VertexId> gkt_direct(const ProfiledGraph& g, VertexId q, int k, const PTree& t) {
    if (q < 0 || q >= g.n) throw DataError("query vertex " + std::to_string(q) + " out of range");
    std::vector<VertexId> candidates;
    for (VertexId v = 0; v < g.n; ++v)
        if (is_subtree(t, g.ptrees[v])) candidates.push_back(v);
    return k_core_component(g.adj, candidates, k, q);
}

}  // namespace pcs

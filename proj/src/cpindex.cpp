#include "pcs/cpindex.hpp"

#include <algorithm>
#include <cstring>
#include <istream>
#include <ostream>

#include "pcs/detail/hash.hpp"
#include "pcs/subtree.hpp"

namespace pcs {

namespace {

// Little-endian primitives; the checksum is FNV-1a over every preceding byte.
struct Writer {
    std::ostream& out;
    std::uint64_t hash = detail::kFnvOffset;

    void bytes(const void* p, std::size_t len) {
        out.write(static_cast<const char*>(p), static_cast<std::streamsize>(len));
        hash = detail::fnv1a64(p, len, hash);
    }
    void u8(std::uint8_t v) { bytes(&v, 1); }
    void u32(std::uint32_t v) {
        std::uint8_t b[4] = {std::uint8_t(v), std::uint8_t(v >> 8), std::uint8_t(v >> 16),
                             std::uint8_t(v >> 24)};
        bytes(b, 4);
    }
    void u64(std::uint64_t v) {
        u32(static_cast<std::uint32_t>(v));
        u32(static_cast<std::uint32_t>(v >> 32));
    }
    void i32(std::int32_t v) { u32(static_cast<std::uint32_t>(v)); }
    void str(const std::string& s) {
        u32(static_cast<std::uint32_t>(s.size()));
        bytes(s.data(), s.size());
    }
    void ids(const std::vector<int>& v) {
        u32(static_cast<std::uint32_t>(v.size()));
        for (int x : v) i32(x);
    }
};

struct Reader {
    std::istream& in;
    std::uint64_t hash = detail::kFnvOffset;

    void bytes(void* p, std::size_t len) {
        in.read(static_cast<char*>(p), static_cast<std::streamsize>(len));
        if (static_cast<std::size_t>(in.gcount()) != len)
            throw DataError("index file truncated");
        hash = detail::fnv1a64(p, len, hash);
    }
    std::uint8_t u8() {
        std::uint8_t v;
        bytes(&v, 1);
        return v;
    }
    std::uint32_t u32() {
        std::uint8_t b[4];
        bytes(b, 4);
        return std::uint32_t(b[0]) | std::uint32_t(b[1]) << 8 | std::uint32_t(b[2]) << 16 |
               std::uint32_t(b[3]) << 24;
    }
    std::uint64_t u64() {
        std::uint64_t lo = u32(), hi = u32();
        return lo | hi << 32;
    }
    std::int32_t i32() { return static_cast<std::int32_t>(u32()); }
    std::string str() {
        std::uint32_t len = u32();
        if (len > (1u << 26)) throw DataError("index file corrupt: oversized string");
        std::string s(len, '\0');
        bytes(s.data(), len);
        return s;
    }
    std::vector<int> ids() {
        std::uint32_t len = u32();
        if (len > (1u << 28)) throw DataError("index file corrupt: oversized array");
        std::vector<int> v(len);
        for (auto& x : v) x = i32();
        return v;
    }
};

constexpr char kMagic[4] = {'C', 'P', 'T', 'I'};
constexpr std::uint8_t kVersion = 1;

void write_cltree(Writer& w, const CLTree& t) {
    w.u32(static_cast<std::uint32_t>(t.nodes().size()));
    for (const auto& node : t.nodes()) {
        w.i32(node.level);
        w.i32(node.parent);
        w.u8(node.synthetic ? 1 : 0);
        w.ids(node.vertices);
    }
    w.i32(t.root());
}

CLTree read_cltree(Reader& r);

}  // namespace

CPTreeIndex CPTreeIndex::build(std::shared_ptr<const ProfiledGraph> g, IndexBuildOptions opts) {
    if (!g) throw DataError("build: null graph");
    CPTreeIndex idx;
    idx.graph_ = g;
    idx.gptree_ = g->gptree;
    idx.n_ = g->n;
    const int labels = idx.gptree_.size();
    idx.nodes_.assign(labels, {});
    idx.present_.assign(labels, 0);
    idx.head_map_.assign(g->n, {});

    for (VertexId v = 0; v < g->n; ++v) {
        for (LabelId l : g->ptrees[v].nodes) {
            if (!idx.present_[l]) {
                idx.present_[l] = 1;
                idx.nodes_[l].label = l;
            }
            idx.nodes_[l].vertices.push_back(v);
        }
        idx.head_map_[v] = tree_leaves(g->ptrees[v], idx.gptree_);
        std::sort(idx.head_map_[v].begin(), idx.head_map_[v].end());
    }

    // Link present nodes in GP-tree shape. P-tree closure makes the present
    // set parent-closed, so a present non-root label has a present parent.
    for (LabelId l = 0; l < labels; ++l) {
        if (!idx.present_[l]) continue;
        LabelId p = idx.gptree_.parent(l);
        idx.nodes_[l].parent_label = p;
        if (p != -1) idx.nodes_[p].child_labels.push_back(l);
    }

    // Induced edge lists: every edge lands in the subgraph of each label the
    // endpoints share.
    std::vector<std::vector<std::pair<VertexId, VertexId>>> label_edges(labels);
    for (VertexId u = 0; u < g->n; ++u) {
        for (VertexId v : g->adj[u]) {
            if (u >= v) continue;
            PTree shared = tree_intersection(g->ptrees[u], g->ptrees[v]);
            for (LabelId l : shared.nodes) label_edges[l].push_back({u, v});
        }
    }

    for (LabelId l = 0; l < labels; ++l) {
        if (!idx.present_[l]) continue;
        auto& node = idx.nodes_[l];
        const auto& verts = node.vertices;  // sorted by construction
        std::vector<std::vector<VertexId>> local_adj(verts.size());
        auto local_of = [&](VertexId v) {
            return static_cast<int>(
                std::lower_bound(verts.begin(), verts.end(), v) - verts.begin());
        };
        for (auto [u, v] : label_edges[l]) {
            int lu = local_of(u), lv = local_of(v);
            local_adj[lu].push_back(lv);
            local_adj[lv].push_back(lu);
        }
        node.cltree = std::make_shared<CLTree>(CLTree::build(local_adj, verts));
    }

    // Global CL-tree answers unconstrained (empty-subtree) core queries.
    idx.global_cltree_ = CLTree::build(g->adj);

    if (opts.compress) {
        // Bottom-up: a node whose subgraph equals all of its children's keeps
        // no CL-tree of its own. Equal sizes imply equal sets here, because a
        // child's vertex set is always contained in its parent's.
        std::vector<LabelId> order;
        for (LabelId l = 0; l < labels; ++l)
            if (idx.present_[l]) order.push_back(l);
        std::sort(order.begin(), order.end(), [&](LabelId a, LabelId b) {
            return idx.gptree_.depth(a) > idx.gptree_.depth(b);
        });
        for (LabelId l : order) {
            auto& node = idx.nodes_[l];
            if (node.child_labels.empty()) continue;
            bool all_equal = true;
            for (LabelId c : node.child_labels)
                if (idx.nodes_[c].vertices.size() != node.vertices.size()) {
                    all_equal = false;
                    break;
                }
            if (all_equal) {
                node.cltree.reset();
                node.delegate = node.child_labels.front();
            }
        }
    }
    return idx;
}

bool CPTreeIndex::has_node(LabelId l) const {
    return l >= 0 && l < static_cast<int>(present_.size()) && present_[l];
}

std::vector<LabelId> CPTreeIndex::present_labels() const {
    std::vector<LabelId> out;
    for (LabelId l = 0; l < static_cast<int>(present_.size()); ++l)
        if (present_[l]) out.push_back(l);
    return out;
}

const CLTree* CPTreeIndex::cltree_for(LabelId l) const {
    const CPTreeNode* node = &nodes_[l];
    for (std::size_t hops = 0; node->delegate != -1; ++hops) {
        if (hops > nodes_.size() || !has_node(node->delegate))
            throw DataError("index corrupt: bad delegation chain");
        node = &nodes_[node->delegate];
    }
    return node->cltree.get();
}

std::vector<VertexId> CPTreeIndex::get(int k, VertexId q, LabelId label) const {
    if (!has_node(label)) return {};
    const CLTree* t = cltree_for(label);
    if (t == nullptr) return {};
    return t->k_hat_core(k, q);
}

PTree CPTreeIndex::restore_ptree(VertexId q) const {
    if (q < 0 || q >= n_) throw DataError("vertex id " + std::to_string(q) + " out of range");
    return close_under_parents(head_map_[q], gptree_);
}

std::uint64_t CPTreeIndex::stored_vertex_entries() const {
    std::uint64_t total = 0;
    for (LabelId l = 0; l < static_cast<int>(present_.size()); ++l)
        if (present_[l]) total += nodes_[l].vertices.size();
    return total;
}

void CPTreeIndex::serialize(std::ostream& out) const {
    Writer w{out};
    w.bytes(kMagic, 4);
    w.u8(kVersion);

    // GP-tree section
    w.u32(static_cast<std::uint32_t>(gptree_.size()));
    for (LabelId l = 0; l < gptree_.size(); ++l) {
        w.i32(gptree_.parent(l));
        w.str(gptree_.name(l));
    }
    w.u32(static_cast<std::uint32_t>(n_));

    write_cltree(w, global_cltree_);

    // Per-label vertex sets and CL-trees
    std::uint32_t present_count = 0;
    for (char p : present_) present_count += p ? 1 : 0;
    w.u32(present_count);
    for (LabelId l = 0; l < static_cast<int>(present_.size()); ++l) {
        if (!present_[l]) continue;
        const auto& node = nodes_[l];
        w.u32(static_cast<std::uint32_t>(l));
        w.ids(node.vertices);
        w.i32(node.delegate);
        w.u8(node.cltree ? 1 : 0);
        if (node.cltree) write_cltree(w, *node.cltree);
    }

    // Head map
    for (VertexId v = 0; v < n_; ++v) w.ids(head_map_[v]);

    std::uint64_t checksum = w.hash;
    w.u64(checksum);
    if (!out) throw DataError("index write failed");
}

namespace {

CLTree read_cltree(Reader& r) {
    std::uint32_t count = r.u32();
    if (count == 0 || count > (1u << 28))
        throw DataError("index file corrupt: CL-tree node count");
    std::vector<CLNode> nodes(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        nodes[i].level = r.i32();
        nodes[i].parent = r.i32();
        nodes[i].synthetic = r.u8() != 0;
        nodes[i].vertices = r.ids();
    }
    int root = r.i32();
    return CLTree::from_parts(std::move(nodes), root);
}

}  // namespace

CPTreeIndex CPTreeIndex::deserialize(std::istream& in, std::shared_ptr<const ProfiledGraph> g) {
    Reader r{in};
    char magic[4];
    r.bytes(magic, 4);
    if (std::memcmp(magic, kMagic, 4) != 0) throw DataError("not a CP-tree index file");
    std::uint8_t version = r.u8();
    if (version != kVersion)
        throw DataError("unsupported index version " + std::to_string(version));

    CPTreeIndex idx;
    std::uint32_t labels = r.u32();
    if (labels == 0 || labels > (1u << 26)) throw DataError("index file corrupt: label count");
    std::vector<LabelId> parent(labels);
    std::vector<std::string> names(labels);
    for (std::uint32_t l = 0; l < labels; ++l) {
        parent[l] = r.i32();
        names[l] = r.str();
    }
    idx.gptree_ = GPTree::from_parents(std::move(parent), std::move(names));
    idx.n_ = static_cast<int>(r.u32());

    idx.global_cltree_ = read_cltree(r);

    idx.nodes_.assign(labels, {});
    idx.present_.assign(labels, 0);
    std::uint32_t present_count = r.u32();
    for (std::uint32_t i = 0; i < present_count; ++i) {
        std::uint32_t l = r.u32();
        if (l >= labels || idx.present_[l]) throw DataError("index file corrupt: node label");
        idx.present_[l] = 1;
        auto& node = idx.nodes_[l];
        node.label = static_cast<LabelId>(l);
        node.vertices = r.ids();
        node.delegate = r.i32();
        if (r.u8()) node.cltree = std::make_shared<CLTree>(read_cltree(r));
    }
    for (LabelId l = 0; l < static_cast<int>(labels); ++l) {
        if (!idx.present_[l]) continue;
        LabelId p = idx.gptree_.parent(l);
        idx.nodes_[l].parent_label = p;
        if (p != -1) {
            if (!idx.present_[p]) throw DataError("index file corrupt: orphan CP-node");
            idx.nodes_[p].child_labels.push_back(l);
        }
    }

    idx.head_map_.assign(idx.n_, {});
    for (int v = 0; v < idx.n_; ++v) idx.head_map_[v] = r.ids();

    std::uint64_t computed = r.hash;
    std::uint64_t stored = r.u64();
    if (computed != stored) throw DataError("index file corrupt: checksum mismatch");
    if (in.peek() != std::char_traits<char>::eof())
        throw DataError("index file corrupt: trailing bytes");

    if (g) {
        if (g->n != idx.n_) throw DataError("attached graph has a different vertex count");
        idx.graph_ = std::move(g);
    }
    return idx;
}

bool CPTreeIndex::same_index(const CPTreeIndex& other) const {
    if (n_ != other.n_ || present_ != other.present_ || head_map_ != other.head_map_)
        return false;
    if (!(global_cltree_ == other.global_cltree_)) return false;
    for (std::size_t l = 0; l < nodes_.size(); ++l) {
        if (!present_[l]) continue;
        const auto& a = nodes_[l];
        const auto& b = other.nodes_[l];
        if (a.vertices != b.vertices || a.delegate != b.delegate ||
            a.child_labels != b.child_labels)
            return false;
        if ((a.cltree == nullptr) != (b.cltree == nullptr)) return false;
        if (a.cltree && !(*a.cltree == *b.cltree)) return false;
    }
    return true;
}

}  // namespace pcs

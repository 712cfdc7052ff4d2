#include "pcs/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <utility>

#include "pcs/detail/hash.hpp"

namespace pcs {

namespace {

bool blank_or_comment(const std::string& line) {
    for (char c : line) {
        if (c == '#') return true;
        if (!isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

[[noreturn]] void parse_fail(const char* what, int line_no, const std::string& line) {
    throw ParseError(std::string(what) + " at line " + std::to_string(line_no) + ": '" +
                     line + "'");
}

}  // namespace

int ProfiledGraph::degree(VertexId v) const {
    if (v < 0 || v >= n) throw DataError("vertex id " + std::to_string(v) + " out of range");
    return static_cast<int>(adj[v].size());
}

std::size_t ProfiledGraph::edge_count() const {
    std::size_t twice = 0;
    for (const auto& a : adj) twice += a.size();
    return twice / 2;
}

ProfiledGraph make_profiled_graph(int n, const std::vector<std::pair<VertexId, VertexId>>& edges,
                                  std::vector<PTree> ptrees, GPTree gptree) {
    if (static_cast<int>(ptrees.size()) != n)
        throw DataError("P-tree count " + std::to_string(ptrees.size()) +
                        " does not match vertex count " + std::to_string(n));
    ProfiledGraph g;
    g.n = n;
    g.gptree = std::move(gptree);
    g.ptrees = std::move(ptrees);
    g.adj.assign(n, {});
    for (auto [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw DataError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                            ") references a vertex outside 0.." + std::to_string(n - 1));
        if (u == v) throw DataError("self-loop on vertex " + std::to_string(u));
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
    }
    for (auto& a : g.adj) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
    }
    for (VertexId v = 0; v < n; ++v) {
        if (!is_parent_closed(g.ptrees[v], g.gptree))
            throw DataError("P-tree of vertex " + std::to_string(v) +
                            " is not closed under parents");
    }
    return g;
}

ProfiledGraph load_graph(std::istream& edge_source, std::istream& ptree_source,
                         std::istream& gptree_source) {
    // GP-tree first: "id parent name" lines, dense ids, root parent -1.
    std::string line;
    int line_no = 0;
    std::vector<std::pair<LabelId, std::pair<LabelId, std::string>>> rows;
    while (std::getline(gptree_source, line)) {
        ++line_no;
        if (blank_or_comment(line)) continue;
        std::istringstream ss(line);
        LabelId id, par;
        std::string name;
        if (!(ss >> id >> par >> name)) parse_fail("malformed GP-tree line", line_no, line);
        rows.push_back({id, {par, name}});
    }
    std::vector<LabelId> parent(rows.size(), -2);
    std::vector<std::string> names(rows.size());
    for (auto& [id, pn] : rows) {
        if (id < 0 || id >= static_cast<int>(rows.size()) || parent[id] != -2)
            throw DataError("GP-tree ids must be dense and unique; offending id " +
                            std::to_string(id));
        parent[id] = pn.first;
        names[id] = std::move(pn.second);
    }
    GPTree gp = GPTree::from_parents(std::move(parent), std::move(names));

    // P-trees: "v: l1,l2,...", one line per vertex, dense vertex ids.
    line_no = 0;
    std::vector<std::pair<VertexId, std::vector<LabelId>>> pt_rows;
    while (std::getline(ptree_source, line)) {
        ++line_no;
        if (blank_or_comment(line)) continue;
        auto colon = line.find(':');
        if (colon == std::string::npos) parse_fail("missing ':' in P-tree line", line_no, line);
        VertexId v;
        try {
            v = std::stoi(line.substr(0, colon));
        } catch (const std::exception&) {
            parse_fail("malformed vertex id in P-tree line", line_no, line);
        }
        std::vector<LabelId> labels;
        std::string rest = line.substr(colon + 1);
        std::istringstream ss(rest);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item.find_first_not_of(" \t\r") == std::string::npos) continue;
            try {
                LabelId l = std::stoi(item);
                if (!gp.valid_label(l))
                    throw DataError("vertex " + std::to_string(v) + " references label " +
                                    std::to_string(l) + " absent from the GP-tree (line " +
                                    std::to_string(line_no) + ")");
                labels.push_back(l);
            } catch (const DataError&) {
                throw;
            } catch (const std::exception&) {
                parse_fail("malformed label id in P-tree line", line_no, line);
            }
        }
        pt_rows.push_back({v, std::move(labels)});
    }
    const int n = static_cast<int>(pt_rows.size());
    std::vector<PTree> ptrees(n);
    std::vector<char> seen(n, 0);
    for (auto& [v, labels] : pt_rows) {
        if (v < 0 || v >= n || seen[v])
            throw DataError("P-tree vertex ids must be dense and unique; offending id " +
                            std::to_string(v));
        seen[v] = 1;
        ptrees[v] = close_under_parents(labels, gp);
    }

    // Edges last, so endpoint range checks have n available.
    line_no = 0;
    std::vector<std::pair<VertexId, VertexId>> edges;
    while (std::getline(edge_source, line)) {
        ++line_no;
        if (blank_or_comment(line)) continue;
        std::istringstream ss(line);
        VertexId u, v;
        if (!(ss >> u >> v)) parse_fail("malformed edge line", line_no, line);
        std::string extra;
        if (ss >> extra) parse_fail("trailing tokens on edge line", line_no, line);
        if (u == v) parse_fail("self-loop", line_no, line);
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw DataError("edge line " + std::to_string(line_no) +
                            " references unknown vertex " + std::to_string(u >= n || u < 0 ? u : v));
        edges.push_back({u, v});
    }
    return make_profiled_graph(n, edges, std::move(ptrees), std::move(gp));
}

ProfiledGraph load_graph_files(const std::string& edge_path, const std::string& ptree_path,
                               const std::string& gptree_path) {
    std::ifstream es(edge_path), ps(ptree_path), gs(gptree_path);
    if (!es) throw DataError("cannot open edge file: " + edge_path);
    if (!ps) throw DataError("cannot open P-tree file: " + ptree_path);
    if (!gs) throw DataError("cannot open GP-tree file: " + gptree_path);
    return load_graph(es, ps, gs);
}

void write_graph(const ProfiledGraph& g, std::ostream& edge_out, std::ostream& ptree_out,
                 std::ostream& gptree_out) {
    for (LabelId l = 0; l < g.gptree.size(); ++l)
        gptree_out << l << ' ' << g.gptree.parent(l) << ' ' << g.gptree.name(l) << '\n';
    for (VertexId v = 0; v < g.n; ++v) {
        ptree_out << v << ':';
        const auto& nodes = g.ptrees[v].nodes;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            ptree_out << (i ? "," : " ") << nodes[i];
        ptree_out << '\n';
    }
    for (VertexId u = 0; u < g.n; ++u)
        for (VertexId v : g.adj[u])
            if (u < v) edge_out << u << ' ' << v << '\n';
}

void write_graph_files(const ProfiledGraph& g, const std::string& edge_path,
                       const std::string& ptree_path, const std::string& gptree_path) {
    std::ofstream es(edge_path), ps(ptree_path), gs(gptree_path);
    if (!es || !ps || !gs) throw DataError("cannot open output files for writing");
    write_graph(g, es, ps, gs);
}

std::vector<PTree> synthesize_ptrees(const GPTree& gp,
                                     const std::vector<std::vector<std::string>>& tokens,
                                     std::uint64_t seed) {
    std::vector<PTree> out;
    out.reserve(tokens.size());
    for (const auto& vertex_tokens : tokens) {
        std::vector<LabelId> labels;
        labels.reserve(vertex_tokens.size());
        for (const auto& tok : vertex_tokens) {
            std::uint64_t digest = detail::splitmix64(detail::fnv1a64(tok) ^ seed);
            labels.push_back(static_cast<LabelId>(digest % gp.size()));
        }
        out.push_back(close_under_parents(labels, gp));
    }
    return out;
}

}  // namespace pcs

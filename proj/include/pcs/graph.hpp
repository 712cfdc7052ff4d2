#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "pcs/gptree.hpp"
#include "pcs/ptree.hpp"

namespace pcs {

// Malformed input; the message carries the offending line number.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Structurally invalid data (dangling ids, closure violations, bad index files).
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Undirected simple graph whose vertices carry P-trees over one GP-tree.
// Immutable after construction and safe to share across readers.
struct ProfiledGraph {
    int n = 0;
    std::vector<std::vector<VertexId>> adj;  // sorted neighbor lists
    std::vector<PTree> ptrees;
    GPTree gptree;

    int degree(VertexId v) const;
    std::size_t edge_count() const;
};

// Validating constructor used by loaders and generators. Deduplicates edges,
// rejects self-loops and out-of-range endpoints, closes and checks P-trees.
ProfiledGraph make_profiled_graph(int n, const std::vector<std::pair<VertexId, VertexId>>& edges,
                                  std::vector<PTree> ptrees, GPTree gptree);

// File formats:
//   edges:  "u v" per line, '#' comments ignored
//   gptree: "id parent_id name" per line, parent -1 for the root, dense ids
//   ptrees: "v: l1,l2,..." per line, one line per vertex, closure applied
ProfiledGraph load_graph(std::istream& edge_source, std::istream& ptree_source,
                         std::istream& gptree_source);
ProfiledGraph load_graph_files(const std::string& edge_path, const std::string& ptree_path,
                               const std::string& gptree_path);

void write_graph(const ProfiledGraph& g, std::ostream& edge_out, std::ostream& ptree_out,
                 std::ostream& gptree_out);
void write_graph_files(const ProfiledGraph& g, const std::string& edge_path,
                       const std::string& ptree_path, const std::string& gptree_path);

// Maps each token to a GP-tree label with a seeded digest and attaches the
// parent-closure of the mapped labels to the vertex. Identical tokens map to
// identical labels, so shared text yields shared P-tree nodes.
std::vector<PTree> synthesize_ptrees(const GPTree& gp,
                                     const std::vector<std::vector<std::string>>& tokens,
                                     std::uint64_t seed);

}  // namespace pcs

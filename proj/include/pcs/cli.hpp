#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pcs/graph.hpp"

namespace pcs::cli {

// Exit codes: 0 success, 1 usage error, 2 data error.
inline constexpr int kOk = 0;
inline constexpr int kUsageError = 1;
inline constexpr int kDataError = 2;

struct GraphFiles {
    std::string edges;
    std::string ptrees;
    std::string gptree;
    std::string index;  // optional .cpt file
};

struct BuildIndexArgs {
    GraphFiles graph;
    std::string out;
    bool compress = false;
};

struct QueryArgs {
    GraphFiles graph;
    std::string q;  // decimal id, or a single letter A.. mapped to 0..
    int k = 6;
    std::string algorithm = "adv-p";  // basic|incre|adv-i|adv-d|adv-p|oracle
    std::uint64_t seed = 0;
    std::string format = "text";  // text|structured
    std::string out;
};

struct GenArgs {
    int n = 100;
    int m = 300;
    int labels = 40;
    int depth = 5;
    int token_pool = 30;
    int min_tokens = 1;
    int max_tokens = 8;
    std::uint64_t seed = 0;
    std::string out_prefix;
};

struct BenchArgs {
    GraphFiles graph;
    std::string sweep = "vertex";  // vertex|ptree|gptree|k
    std::vector<int> fractions = {20, 40, 60, 80, 100};
    std::vector<int> ks = {4, 5, 6, 7, 8};
    int k = 6;
    int queries = 10;
    std::uint64_t seed = 0;
    std::string algorithms = "incre,adv-i,adv-d,adv-p";
    std::string format = "text";
    std::string out;
};

struct MetricsArgs {
    GraphFiles graph;
    std::string result_file;
    std::string other_file;  // optional, enables LDR
    std::string truth_file;  // optional, enables F1
    std::string format = "text";
    std::string out;
};

int cmd_build_index(const BuildIndexArgs& args, std::ostream& out, std::ostream& err);
int cmd_query(const QueryArgs& args, std::ostream& out, std::ostream& err);
int cmd_gen(const GenArgs& args, std::ostream& out, std::ostream& err);
int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err);
int cmd_metrics(const MetricsArgs& args, std::ostream& out, std::ostream& err);

// "12" -> 12; "D" -> 3. Throws ParseError otherwise.
VertexId parse_vertex(const std::string& s);

}  // namespace pcs::cli

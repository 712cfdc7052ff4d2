#include "pcs/cli.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <memory>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "pcs/cpindex.hpp"
#include "pcs/metrics.hpp"
#include "pcs/query.hpp"
#include "pcs/synth.hpp"

namespace pcs::cli {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::shared_ptr<const ProfiledGraph> load_shared(const GraphFiles& files) {
    return std::make_shared<const ProfiledGraph>(
        load_graph_files(files.edges, files.ptrees, files.gptree));
}

CPTreeIndex load_or_build_index(const GraphFiles& files,
                                std::shared_ptr<const ProfiledGraph> g) {
    if (!files.index.empty()) {
        std::ifstream in(files.index, std::ios::binary);
        if (!in) throw DataError("cannot open index file: " + files.index);
        return CPTreeIndex::deserialize(in, std::move(g));
    }
    return CPTreeIndex::build(std::move(g));
}

std::string mct_paths(const PTree& mct, const GPTree& gp) {
    if (mct.empty()) return "(empty)";
    auto leaves = tree_leaves(mct, gp);
    std::string out;
    for (std::size_t i = 0; i < leaves.size(); ++i) {
        if (i) out += ", ";
        auto path = gp.root_path(leaves[i]);
        for (std::size_t j = 0; j < path.size(); ++j) {
            if (j) out += '/';
            out += gp.name(path[j]);
        }
    }
    return out;
}

json community_json(const Community& c, const GPTree& gp) {
    json j;
    j["vertices"] = c.vertices;
    j["mct"] = c.mct.nodes;
    std::vector<std::string> paths;
    for (LabelId leaf : tree_leaves(c.mct, gp)) {
        std::string p;
        for (LabelId l : gp.root_path(leaf)) {
            if (!p.empty()) p += '/';
            p += gp.name(l);
        }
        paths.push_back(std::move(p));
    }
    j["mct_paths"] = paths;
    return j;
}

json counters_json(const QueryCounters& c) {
    return json{{"subtrees_generated", c.subtrees_generated},
                {"subtrees_verified", c.subtrees_verified},
                {"gkt_computations", c.gkt_computations},
                {"gkt_candidate_vertices", c.gkt_candidate_vertices}};
}

void write_payload(const std::string& path, const std::string& payload, std::ostream& out,
                   bool echo) {
    if (!path.empty()) {
        std::ofstream f(path);
        if (!f) throw DataError("cannot open output file: " + path);
        f << payload;
    }
    if (echo || path.empty()) out << payload;
}

ResultSet run_algorithm(const std::string& algorithm, const ProfiledGraph& g,
                        const CPTreeIndex* idx, VertexId q, int k) {
    if (algorithm == "basic") return query_basic(g, q, k);
    if (algorithm == "oracle") return query_oracle(g, q, k);
    if (!idx) throw DataError("algorithm '" + algorithm + "' needs an index");
    if (algorithm == "incre") return query_incre(*idx, q, k);
    if (algorithm == "adv-i") return query_advanced(*idx, q, k, CutStrategy::I);
    if (algorithm == "adv-d") return query_advanced(*idx, q, k, CutStrategy::D);
    if (algorithm == "adv-p") return query_advanced(*idx, q, k, CutStrategy::P);
    throw ParseError("unknown algorithm: " + algorithm);
}

bool needs_index(const std::string& algorithm) {
    return algorithm != "basic" && algorithm != "oracle";
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

ResultSet result_from_json(const json& j) {
    ResultSet rs;
    for (const auto& cj : j.at("communities")) {
        Community c;
        c.vertices = cj.at("vertices").get<std::vector<VertexId>>();
        c.mct = PTree(cj.at("mct").get<std::vector<LabelId>>());
        std::sort(c.vertices.begin(), c.vertices.end());
        std::sort(c.mct.nodes.begin(), c.mct.nodes.end());
        rs.communities.push_back(std::move(c));
    }
    return rs;
}

}  // namespace

VertexId parse_vertex(const std::string& s) {
    if (s.empty()) throw ParseError("empty vertex argument");
    if (s.size() == 1 && std::isupper(static_cast<unsigned char>(s[0])))
        return s[0] - 'A';
    try {
        std::size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size() || v < 0) throw ParseError("bad vertex argument: " + s);
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("bad vertex argument: " + s);
    }
}

int cmd_build_index(const BuildIndexArgs& args, std::ostream& out, std::ostream& err) {
    try {
        auto start = Clock::now();
        auto g = load_shared(args.graph);
        double load_ms = ms_since(start);

        start = Clock::now();
        auto idx = CPTreeIndex::build(g, IndexBuildOptions{args.compress});
        double build_ms = ms_since(start);

        std::ofstream f(args.out, std::ios::binary);
        if (!f) throw DataError("cannot open output file: " + args.out);
        idx.serialize(f);
        f.close();

        out << "vertices: " << g->n << "\n"
            << "edges: " << g->edge_count() << "\n"
            << "labels present: " << idx.present_labels().size() << "\n"
            << "stored vertex entries: " << idx.stored_vertex_entries() << "\n"
            << "load time: " << std::fixed << std::setprecision(1) << load_ms << " ms\n"
            << "build time: " << build_ms << " ms\n"
            << "index written: " << args.out << "\n";
        return kOk;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kDataError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kDataError;
    }
}

int cmd_query(const QueryArgs& args, std::ostream& out, std::ostream& err) {
    try {
        VertexId q = parse_vertex(args.q);
        if (args.k < 0) throw ParseError("k must be non-negative");
        auto g = load_shared(args.graph);
        std::optional<CPTreeIndex> idx;
        if (needs_index(args.algorithm)) idx.emplace(load_or_build_index(args.graph, g));

        auto start = Clock::now();
        ResultSet rs = run_algorithm(args.algorithm, *g, idx ? &*idx : nullptr, q, args.k);
        double query_ms = ms_since(start);

        if (args.format == "structured") {
            json j;
            j["q"] = q;
            j["k"] = args.k;
            j["algorithm"] = args.algorithm;
            j["seed"] = args.seed;
            j["query_ms"] = query_ms;
            j["communities"] = json::array();
            for (const auto& c : rs.communities)
                j["communities"].push_back(community_json(c, g->gptree));
            j["counters"] = counters_json(rs.counters);
            write_payload(args.out, j.dump(2) + "\n", out, false);
        } else {
            std::ostringstream text;
            text << rs.communities.size() << " communities\n";
            for (std::size_t i = 0; i < rs.communities.size(); ++i) {
                const auto& c = rs.communities[i];
                text << "community " << (i + 1) << ": vertices =";
                for (VertexId v : c.vertices) text << ' ' << v;
                text << " | mct = " << mct_paths(c.mct, g->gptree) << "\n";
            }
            const auto& c = rs.counters;
            text << "counters: generated=" << c.subtrees_generated
                 << " verified=" << c.subtrees_verified << " gkt=" << c.gkt_computations
                 << " candidate_vertices=" << c.gkt_candidate_vertices << "\n";
            text << "time: " << std::fixed << std::setprecision(2) << query_ms << " ms\n";
            write_payload(args.out, text.str(), out, false);
        }
        return kOk;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kDataError;
    }
}

int cmd_gen(const GenArgs& args, std::ostream& out, std::ostream& err) {
    try {
        if (args.n < 1 || args.m < 0 || args.labels < 1) throw ParseError("bad gen sizes");
        if (args.out_prefix.empty()) throw ParseError("--out prefix required");
        SynthConfig cfg;
        cfg.n = args.n;
        cfg.m = args.m;
        cfg.labels = args.labels;
        cfg.max_depth = args.depth;
        cfg.token_pool = args.token_pool;
        cfg.min_tokens = args.min_tokens;
        cfg.max_tokens = args.max_tokens;
        ProfiledGraph g = random_profiled_graph(cfg, args.seed);
        write_graph_files(g, args.out_prefix + ".edges", args.out_prefix + ".ptrees",
                          args.out_prefix + ".gptree");
        double avg_ptree = 0;
        for (const auto& t : g.ptrees) avg_ptree += static_cast<double>(t.size());
        avg_ptree /= g.n;
        out << "vertices: " << g.n << "\n"
            << "edges: " << g.edge_count() << "\n"
            << "average degree: " << std::fixed << std::setprecision(2)
            << 2.0 * static_cast<double>(g.edge_count()) / g.n << "\n"
            << "average P-tree size: " << avg_ptree << "\n"
            << "files: " << args.out_prefix << ".{edges,ptrees,gptree}\n";
        return kOk;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kDataError;
    }
}

int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
    try {
        auto base = load_shared(args.graph);
        auto algorithms = split_csv(args.algorithms);
        if (algorithms.empty()) throw ParseError("no algorithms given");
        bool k_sweep = args.sweep == "k";
        if (!k_sweep && args.sweep != "vertex" && args.sweep != "ptree" &&
            args.sweep != "gptree")
            throw ParseError("unknown sweep: " + args.sweep);

        std::vector<int> cells = k_sweep ? args.ks : args.fractions;
        json report;
        report["sweep"] = args.sweep;
        report["cells"] = json::array();

        out << std::left << std::setw(10) << (k_sweep ? "k" : "fraction") << std::setw(12)
            << "vertices" << std::setw(12) << "edges" << std::setw(14) << "sum|T(v)|"
            << std::setw(12) << "build_ms";
        for (const auto& a : algorithms)
            out << std::setw(22) << (a + "_ms/verified");
        out << "\n";

        for (int cell : cells) {
            ProfiledGraph sub;
            int k = k_sweep ? cell : args.k;
            if (k_sweep)
                sub = *base;
            else if (args.sweep == "vertex")
                sub = sample_vertex_fraction(*base, cell / 100.0, args.seed);
            else if (args.sweep == "ptree")
                sub = sample_ptree_fraction(*base, cell / 100.0, args.seed);
            else
                sub = sample_gptree_fraction(*base, cell / 100.0, args.seed);
            auto shared = std::make_shared<const ProfiledGraph>(std::move(sub));

            auto start = Clock::now();
            CPTreeIndex idx = CPTreeIndex::build(shared);
            double build_ms = ms_since(start);

            std::uint64_t sum_pt = idx.stored_vertex_entries();

            // Query sample: vertices of the k-core, seeded choice.
            std::vector<VertexId> pool;
            auto cores = core_decomposition(shared->adj);
            for (VertexId v = 0; v < shared->n; ++v)
                if (cores.core_number[v] >= k) pool.push_back(v);
            if (pool.empty())
                for (VertexId v = 0; v < shared->n; ++v) pool.push_back(v);
            std::mt19937_64 rng(args.seed ^ 0x9e3779b9u ^ static_cast<std::uint64_t>(cell));
            std::vector<VertexId> sample;
            std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
            for (int i = 0; i < args.queries; ++i) sample.push_back(pool[pick(rng)]);

            json cell_json;
            cell_json[k_sweep ? "k" : "fraction"] = cell;
            cell_json["vertices"] = shared->n;
            cell_json["edges"] = shared->edge_count();
            cell_json["sum_ptree_nodes"] = sum_pt;
            cell_json["build_ms"] = build_ms;
            cell_json["algorithms"] = json::object();

            out << std::left << std::setw(10) << cell << std::setw(12) << shared->n
                << std::setw(12) << shared->edge_count() << std::setw(14) << sum_pt
                << std::setw(12) << std::fixed << std::setprecision(1) << build_ms;

            for (const auto& algo : algorithms) {
                QueryCounters total;
                auto qstart = Clock::now();
                for (VertexId q : sample) {
                    ResultSet rs = run_algorithm(algo, *shared, &idx, q, k);
                    total.subtrees_generated += rs.counters.subtrees_generated;
                    total.subtrees_verified += rs.counters.subtrees_verified;
                    total.gkt_computations += rs.counters.gkt_computations;
                    total.gkt_candidate_vertices += rs.counters.gkt_candidate_vertices;
                }
                double algo_ms = ms_since(qstart);
                std::ostringstream colcell;
                colcell << std::fixed << std::setprecision(1) << algo_ms << "/"
                        << total.subtrees_verified;
                out << std::setw(22) << colcell.str();
                cell_json["algorithms"][algo] = {
                    {"query_ms", algo_ms},
                    {"counters", counters_json(total)},
                };
            }
            out << "\n";
            report["cells"].push_back(std::move(cell_json));
        }
        if (!args.out.empty()) {
            std::ofstream f(args.out);
            if (!f) throw DataError("cannot open output file: " + args.out);
            f << report.dump(2) << "\n";
        }
        if (args.format == "structured") out << report.dump(2) << "\n";
        return kOk;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kDataError;
    }
}

int cmd_metrics(const MetricsArgs& args, std::ostream& out, std::ostream& err) {
    try {
        auto g = load_shared(args.graph);
        std::ifstream rf(args.result_file);
        if (!rf) throw DataError("cannot open result file: " + args.result_file);
        json rj = json::parse(rf);
        ResultSet result = result_from_json(rj);
        VertexId q = rj.at("q").get<VertexId>();
        if (q < 0 || q >= g->n) throw DataError("result file query vertex out of range");

        std::optional<ResultSet> other;
        if (!args.other_file.empty()) {
            std::ifstream of(args.other_file);
            if (!of) throw DataError("cannot open result file: " + args.other_file);
            other = result_from_json(json::parse(of));
        }
        std::vector<std::vector<VertexId>> truth;
        if (!args.truth_file.empty()) {
            std::ifstream tf(args.truth_file);
            if (!tf) throw DataError("cannot open truth file: " + args.truth_file);
            std::string line;
            int line_no = 0;
            while (std::getline(tf, line)) {
                ++line_no;
                bool blank = true;
                for (char c : line)
                    if (!isspace(static_cast<unsigned char>(c))) blank = false;
                if (blank || line[0] == '#') continue;
                std::istringstream ss(line);
                std::vector<VertexId> circle;
                VertexId v;
                while (ss >> v) {
                    if (v < 0 || v >= g->n)
                        throw ParseError("truth vertex out of range at line " +
                                         std::to_string(line_no));
                    circle.push_back(v);
                }
                if (!ss.eof())
                    throw ParseError("malformed truth line " + std::to_string(line_no));
                if (circle.empty())
                    throw ParseError("empty truth circle at line " + std::to_string(line_no));
                std::sort(circle.begin(), circle.end());
                truth.push_back(std::move(circle));
            }
            if (truth.empty()) throw DataError("truth file has no circles");
        }

        MetricReport rep = compute_metrics(q, result, *g, other ? &*other : nullptr,
                                           truth.empty() ? nullptr : &truth);

        std::ostringstream text;
        text << std::fixed << std::setprecision(6);
        text << "cps=" << rep.cps << "\n";
        text << "cpf=" << rep.cpf << "\n";
        if (rep.ldr) text << "ldr=" << *rep.ldr << "\n";
        if (rep.f1) text << "f1=" << *rep.f1 << "\n";
        if (rep.f1_truth_to_found) text << "f1_truth_to_found=" << *rep.f1_truth_to_found << "\n";
        for (std::size_t i = 0; i < rep.cps_per_community.size(); ++i)
            text << "community" << (i + 1) << ".cps=" << rep.cps_per_community[i] << "\n";
        for (std::size_t i = 0; i < rep.cpf_per_community.size(); ++i)
            text << "community" << (i + 1) << ".cpf=" << rep.cpf_per_community[i] << "\n";
        for (std::size_t i = 0; i < rep.f1_best_per_found.size(); ++i)
            text << "community" << (i + 1) << ".f1=" << rep.f1_best_per_found[i] << "\n";

        json j;
        j["cps"] = rep.cps;
        j["cpf"] = rep.cpf;
        if (rep.ldr) j["ldr"] = *rep.ldr;
        if (rep.f1) j["f1"] = *rep.f1;
        if (rep.f1_truth_to_found) j["f1_truth_to_found"] = *rep.f1_truth_to_found;
        j["cps_per_community"] = rep.cps_per_community;
        j["cpf_per_community"] = rep.cpf_per_community;
        j["f1_best_per_found"] = rep.f1_best_per_found;
        j["f1_best_per_truth"] = rep.f1_best_per_truth;

        // key=value lines on the console, machine-readable copy in --out.
        if (args.format == "structured")
            out << j.dump(2) << "\n";
        else
            out << text.str();
        if (!args.out.empty()) {
            std::ofstream f(args.out);
            if (!f) throw DataError("cannot open output file: " + args.out);
            f << j.dump(2) << "\n";
        }
        return kOk;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kDataError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kDataError;
    }
}

}  // namespace pcs::cli

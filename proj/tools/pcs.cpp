#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pcs/cli.hpp"

namespace cli = pcs::cli;

namespace {

void add_graph_options(CLI::App* app, cli::GraphFiles& files, bool with_index) {
    app->add_option("--edges", files.edges, "edge list file")->required();
    app->add_option("--ptrees", files.ptrees, "per-vertex P-tree file")->required();
    app->add_option("--gptree", files.gptree, "GP-tree taxonomy file")->required();
    if (with_index)
        app->add_option("--index", files.index, "prebuilt .cpt index (built on the fly if absent)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"profiled community search toolkit"};
    app.require_subcommand(1);

    cli::BuildIndexArgs build_args;
    auto* build = app.add_subcommand("build-index", "build and persist a CP-tree index");
    add_graph_options(build, build_args.graph, false);
    build->add_option("--out", build_args.out, "output .cpt path")->required();
    build->add_flag("--compress", build_args.compress, "drop per-label CL-trees equal to all children");

    cli::QueryArgs query_args;
    auto* query = app.add_subcommand("query", "run a profiled community search");
    add_graph_options(query, query_args.graph, true);
    query->add_option("--q", query_args.q, "query vertex id (or letter A.. for the bundled example)")
        ->required();
    query->add_option("--k", query_args.k, "minimum degree (default 6)");
    query->add_option("--algorithm", query_args.algorithm,
                      "basic|incre|adv-i|adv-d|adv-p|oracle (default adv-p)");
    query->add_option("--seed", query_args.seed, "seed recorded in structured output");
    query->add_option("--format", query_args.format, "text|structured");
    query->add_option("--out", query_args.out, "write the report here instead of stdout");

    cli::GenArgs gen_args;
    auto* gen = app.add_subcommand("gen", "generate a synthetic profiled graph");
    gen->add_option("--n", gen_args.n, "vertex count")->required();
    gen->add_option("--m", gen_args.m, "edge count")->required();
    gen->add_option("--labels", gen_args.labels, "GP-tree size (default 40)");
    gen->add_option("--depth", gen_args.depth, "GP-tree max depth (default 5)");
    gen->add_option("--token-pool", gen_args.token_pool, "distinct tokens (default 30)");
    gen->add_option("--min-tokens", gen_args.min_tokens, "min tokens per vertex");
    gen->add_option("--max-tokens", gen_args.max_tokens, "max tokens per vertex");
    gen->add_option("--seed", gen_args.seed, "generator seed");
    gen->add_option("--out", gen_args.out_prefix, "output file prefix")->required();

    cli::BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "scalability sweeps with per-cell counters");
    add_graph_options(bench, bench_args.graph, false);
    bench->add_option("--sweep", bench_args.sweep, "vertex|ptree|gptree|k (default vertex)");
    bench->add_option("--fractions", bench_args.fractions, "percent cells (default 20 40 60 80 100)");
    bench->add_option("--ks", bench_args.ks, "k cells for --sweep k (default 4..8)");
    bench->add_option("--k", bench_args.k, "k for fraction sweeps (default 6)");
    bench->add_option("--queries", bench_args.queries, "queries per cell (default 10)");
    bench->add_option("--seed", bench_args.seed, "sampling seed");
    bench->add_option("--algorithms", bench_args.algorithms, "comma list (default incre,adv-i,adv-d,adv-p)");
    bench->add_option("--format", bench_args.format, "text|structured");
    bench->add_option("--out", bench_args.out, "structured report file");

    cli::MetricsArgs metrics_args;
    auto* metrics = app.add_subcommand("metrics", "quality metrics for a query result");
    add_graph_options(metrics, metrics_args.graph, false);
    metrics->add_option("--result", metrics_args.result_file, "structured query output")->required();
    metrics->add_option("--other", metrics_args.other_file, "comparison result for LDR");
    metrics->add_option("--truth", metrics_args.truth_file, "ground-truth circles, one per line");
    metrics->add_option("--format", metrics_args.format, "text|structured");
    metrics->add_option("--out", metrics_args.out, "structured report file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : cli::kUsageError;
    }

    if (build->parsed()) return cli::cmd_build_index(build_args, std::cout, std::cerr);
    if (query->parsed()) return cli::cmd_query(query_args, std::cout, std::cerr);
    if (gen->parsed()) return cli::cmd_gen(gen_args, std::cout, std::cerr);
    if (bench->parsed()) return cli::cmd_bench(bench_args, std::cout, std::cerr);
    if (metrics->parsed()) return cli::cmd_metrics(metrics_args, std::cout, std::cerr);
    return cli::kUsageError;
}

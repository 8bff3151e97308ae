#include "commands.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace altroute;

namespace {

void add_graph_source(CLI::App* cmd, cli::GraphSource& src) {
    cmd->add_option("--graph", src.path, "graph file (\"n m\" header, then \"u v cost\" lines)");
    cmd->add_option("--nodes", src.nodes, "generate a graph with this many nodes instead");
    cmd->add_option("--avg-degree", src.avg_degree, "average degree of the generated graph");
    cmd->add_option("--seed", src.seed, "generator seed");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Alternate routes around failed nodes and links, computed by a simulated distributed protocol"};
    app.require_subcommand(1);

    std::size_t gen_n = 0;
    double gen_degree = 0;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen", "generate a random biconnected graph");
    gen->add_option("n", gen_n, "node count")->required();
    gen->add_option("avg_degree", gen_degree, "average degree")->required();
    gen->add_option("seed", gen_seed, "random seed")->required();
    gen->add_option("--out", gen_out, "output file (default: stdout)");

    cli::RunOptions run_opts;
    std::string mode = "node";
    std::string format = "text";
    auto* run = app.add_subcommand("run", "run the protocol and write tables, labels, stores and metrics");
    add_graph_source(run, run_opts.source);
    run->add_option("--sink", run_opts.sink, "destination node");
    run->add_option("--mode", mode, "node, link or both")->check(CLI::IsMember({"node", "node-failure", "link",
                                                                                 "link-failure", "both"}));
    run->add_option("--inbox-capacity", run_opts.inbox_capacity, "bounded inbox size (reject and retry when full)")
        ->check(CLI::PositiveNumber);
    run->add_option("--shuffle-seed", run_opts.shuffle_seed, "randomize same-tick delivery order");
    run->add_option("--out-dir", run_opts.out_dir, "artifact directory");
    run->add_option("--format", format, "table format")->check(CLI::IsMember({"text", "structured"}));

    cli::VerifyOptions verify_opts;
    auto* verify = app.add_subcommand("verify", "compare tables with the centralized reference and the optimum");
    add_graph_source(verify, verify_opts.source);
    verify->add_option("--sink", verify_opts.sink, "destination node");
    verify->add_option("--tables", verify_opts.tables_path, "text tables to check (default: recompute)");
    verify->add_option("--inbox-capacity", verify_opts.inbox_capacity, "bounded inbox size when recomputing")
        ->check(CLI::PositiveNumber);

    cli::RunOptions stats_opts;
    std::string stats_mode = "node";
    auto* stats = app.add_subcommand("stats", "print protocol metrics only");
    add_graph_source(stats, stats_opts.source);
    stats->add_option("--sink", stats_opts.sink, "destination node");
    stats->add_option("--mode", stats_mode, "node, link or both")->check(CLI::IsMember({"node", "node-failure", "link",
                                                                                         "link-failure", "both"}));
    stats->add_option("--inbox-capacity", stats_opts.inbox_capacity, "bounded inbox size")->check(CLI::PositiveNumber);
    stats->add_option("--shuffle-seed", stats_opts.shuffle_seed, "randomize same-tick delivery order");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cli::cmd_gen(gen_n, gen_degree, gen_seed, gen_out, std::cout);
        if (run->parsed()) {
            run_opts.mode = parse_failure_mode(mode);
            run_opts.structured = format == "structured";
            return cli::cmd_run(run_opts, std::cout);
        }
        if (verify->parsed()) return cli::cmd_verify(verify_opts, std::cout);
        if (stats->parsed()) {
            stats_opts.mode = parse_failure_mode(stats_mode);
            return cli::cmd_stats(stats_opts, std::cout);
        }
    } catch (const cli::UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

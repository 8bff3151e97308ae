#include "commands.hpp"

#include "altroute/oracle.hpp"
#include "altroute/report.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

namespace altroute::cli {

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << content;
}

void require_biconnected(const Graph& g, NodeId sink) {
    if (sink >= g.node_count()) throw UsageError("sink " + std::to_string(sink) + " is not a node");
    if (g.node_count() < 3 || !is_biconnected(g)) throw UsageError("input not biconnected");
}

SimConfig sim_config(std::optional<std::size_t> inbox_capacity, std::uint64_t shuffle_seed) {
    SimConfig config;
    config.inbox_capacity = inbox_capacity;
    config.shuffle_seed = shuffle_seed;
    return config;
}

/// Drops witness weights, which the text format does not carry.
RecoveryEntry endpoints_only(RecoveryEntry e) {
    for (Witness& w : e.hop_chain) w.edge = EdgeRecord{w.edge.u, w.edge.v, {}, {}};
    return e;
}

std::string describe(const RecoveryEntry& e) {
    std::ostringstream s;
    s << "cost " << e.cost.to_string() << " path";
    for (NodeId v : e.path) s << ' ' << v;
    return s.str();
}

/// First (x, child) where the two table sets differ, with a reason.
std::optional<std::string> first_divergence(const std::vector<RecoveryTable>& got,
                                            const std::vector<RecoveryTable>& want) {
    for (std::size_t t = 0; t < std::max(got.size(), want.size()); ++t) {
        if (t >= got.size()) return "x=" + std::to_string(want[t].failed) + ": table missing";
        if (t >= want.size()) return "x=" + std::to_string(got[t].failed) + ": unexpected table";
        const RecoveryTable& a = got[t];
        const RecoveryTable& b = want[t];
        const std::string x = "x=" + std::to_string(b.failed);
        if (a.failed != b.failed) return x + ": table for " + std::to_string(a.failed) + " found instead";
        for (std::size_t i = 0; i < std::max(a.entries.size(), b.entries.size()); ++i) {
            if (i >= a.entries.size()) return x + " child=" + std::to_string(b.entries[i].child) + ": entry missing";
            if (i >= b.entries.size()) return x + " child=" + std::to_string(a.entries[i].child) + ": unexpected entry";
            const RecoveryEntry ea = endpoints_only(a.entries[i]);
            const RecoveryEntry eb = endpoints_only(b.entries[i]);
            if (ea == eb) continue;
            return x + " child=" + std::to_string(eb.child) + ": got " + describe(ea) + ", expected " + describe(eb);
        }
    }
    return std::nullopt;
}

}  // namespace

Graph load_graph(const GraphSource& source) {
    if (!source.path.empty()) return read_graph_file(source.path);
    if (source.nodes == 0) throw UsageError("give --graph or --nodes");
    return generate_biconnected(source.nodes, source.avg_degree, source.seed);
}

int cmd_gen(std::size_t n, double avg_degree, std::uint64_t seed, const std::string& out_path, std::ostream& out) {
    const Graph g = generate_biconnected(n, avg_degree, seed);
    std::ostringstream summary;
    summary << "n " << g.node_count() << " m " << g.edge_count() << " biconnected=" << (is_biconnected(g) ? "true" : "false");
    if (out_path.empty()) {
        out << "# " << summary.str() << '\n';
        write_graph(out, g);
        return 0;
    }
    std::ostringstream body;
    write_graph(body, g);
    write_file(out_path, body.str());
    out << summary.str() << '\n';
    return 0;
}

int cmd_run(const RunOptions& options, std::ostream& out) {
    const Graph g = load_graph(options.source);
    require_biconnected(g, options.sink);
    const ProtocolRun run =
        run_protocol(g, options.sink, sim_config(options.inbox_capacity, options.shuffle_seed), options.mode);

    const std::filesystem::path dir(options.out_dir);
    std::filesystem::create_directories(dir);
    if (options.mode != FailureMode::Link) {
        if (options.structured) {
            write_file(dir / "tables.json", tables_to_json(options.sink, run.tables));
        } else {
            write_file(dir / "tables.txt", tables_to_text(options.sink, run.tables));
        }
    }
    if (options.mode != FailureMode::Node) write_file(dir / "links.txt", links_to_text(options.sink, run.links));
    write_file(dir / "labels.txt", labels_to_text(run.labels));
    write_file(dir / "stores.txt", stores_to_text(*run.network));
    const std::string metrics = metrics_to_text(run);
    write_file(dir / "metrics.txt", metrics);

    const SimStats total = run.stats.total();
    out << "nodes " << g.node_count() << " edges " << g.edge_count() << " sink " << options.sink << '\n';
    out << "label messages " << run.stats.label_messages() << " (3n = " << 3 * g.node_count() << ")\n";
    out << "messages " << total.total_delivered() << " retries " << total.retries << '\n';
    out << "artifacts in " << dir.string() << '\n';
    return 0;
}

int cmd_verify(const VerifyOptions& options, std::ostream& out) {
    const Graph g = load_graph(options.source);
    require_biconnected(g, options.sink);

    std::vector<RecoveryTable> tables;
    if (options.tables_path.empty()) {
        tables = run_protocol(g, options.sink, sim_config(options.inbox_capacity, 0)).tables;
    } else {
        std::ifstream f(options.tables_path);
        if (!f) throw UsageError("cannot open " + options.tables_path);
        ParsedTables parsed = parse_tables_text(f);
        if (parsed.sink != options.sink) {
            throw UsageError("tables were computed for sink " + std::to_string(parsed.sink));
        }
        tables = std::move(parsed.tables);
    }

    bool ok = true;
    if (auto diff = first_divergence(tables, centralized_snfr(g, options.sink))) {
        out << "equality MISMATCH " << *diff << '\n';
        ok = false;
    } else {
        out << "equality OK\n";
    }

    std::optional<std::string> invalid;
    for (const RecoveryTable& t : tables) {
        for (const RecoveryEntry& e : t.entries) {
            if (invalid) break;
            if (auto why = check_recovery_entry(g, options.sink, t.failed, e)) {
                invalid = "x=" + std::to_string(t.failed) + " child=" + std::to_string(e.child) + ": " + *why;
            }
        }
    }
    if (invalid) {
        out << "validity FAILED " << *invalid << '\n';
        return 1;
    }
    out << "validity OK\n";

    const StretchReport stretch = stretch_report(g, options.sink, tables);
    out << stretch_to_text(stretch);
    for (const StretchEntry& s : stretch.entries) {
        if (s.protocol < s.optimal) {
            out << "stretch FAILED x=" << s.failed << " child=" << s.child << ": below the optimum\n";
            ok = false;
            break;
        }
    }
    return ok ? 0 : 1;
}

int cmd_stats(const RunOptions& options, std::ostream& out) {
    const Graph g = load_graph(options.source);
    require_biconnected(g, options.sink);
    const ProtocolRun run =
        run_protocol(g, options.sink, sim_config(options.inbox_capacity, options.shuffle_seed), options.mode);
    out << metrics_to_text(run);
    return 0;
}

}  // namespace altroute::cli

#pragma once

#include "altroute/graph.hpp"
#include "altroute/protocol.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace altroute::cli {

/// Where the input graph comes from: a file, or the generator.
struct GraphSource {
    std::string path;
    std::size_t nodes = 0;
    double avg_degree = 6;
    std::uint64_t seed = 1;
};

struct RunOptions {
    GraphSource source;
    NodeId sink = 0;
    FailureMode mode = FailureMode::Node;
    std::optional<std::size_t> inbox_capacity;
    std::uint64_t shuffle_seed = 0;
    std::string out_dir = "altroute-out";
    bool structured = false;
};

struct VerifyOptions {
    GraphSource source;
    NodeId sink = 0;
    std::string tables_path;  // empty: recompute with the protocol
    std::optional<std::size_t> inbox_capacity;
};

/// Thrown for bad input; main() prints the message and exits with status 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Graph load_graph(const GraphSource& source);

int cmd_gen(std::size_t n, double avg_degree, std::uint64_t seed, const std::string& out_path, std::ostream& out);
int cmd_run(const RunOptions& options, std::ostream& out);
int cmd_verify(const VerifyOptions& options, std::ostream& out);
int cmd_stats(const RunOptions& options, std::ostream& out);

}  // namespace altroute::cli

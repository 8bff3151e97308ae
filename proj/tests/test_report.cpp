#include "altroute/protocol.hpp"
#include "altroute/report.hpp"
#include "support/brute_force.hpp"

#include <doctest.h>
#include <json.hpp>

#include <sstream>

using namespace altroute;
using namespace altroute::testing;

namespace {

/// Witness endpoints only; the text form does not carry weights.
std::vector<RecoveryTable> stripped(std::vector<RecoveryTable> tables) {
    for (auto& t : tables) {
        for (auto& e : t.entries) {
            for (auto& w : e.hop_chain) w.edge = EdgeRecord{w.edge.u, w.edge.v, {}, {}};
        }
    }
    return tables;
}

}  // namespace

TEST_CASE("G2 tables in text form") {
    const ProtocolRun run = run_protocol(g2(), 0);
    CHECK(tables_to_text(0, run.tables) ==
          "altroute-recovery-tables 1\n"
          "sink 0\n"
          "table 1 2\n"
          "entry 2 cost 11 chain B:2-3 G:0-3 path 2 3 0\n"
          "entry 3 cost 10 chain G:0-3 path 3 0\n"
          "table 2 0\n"
          "table 3 0\n"
          "end\n");
}

TEST_CASE("text tables round-trip") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const Graph g = generate_biconnected(20 + seed, 3 + seed % 5, seed);
        const NodeId sink = static_cast<NodeId>(seed % 20);
        const ProtocolRun run = run_protocol(g, sink);
        const std::string text = tables_to_text(sink, run.tables);
        std::istringstream in(text);
        const ParsedTables parsed = parse_tables_text(in);
        CHECK(parsed.sink == sink);
        CHECK(parsed.tables == stripped(run.tables));
        CHECK(tables_to_text(parsed.sink, parsed.tables) == text);
    }
}

TEST_CASE("malformed table files are rejected with a line number") {
    const std::string good = tables_to_text(0, run_protocol(g2(), 0).tables);
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return parse_tables_text(in);
    };
    CHECK_NOTHROW(parse(good));
    CHECK_THROWS_WITH(parse("nonsense\n"), "tables line 1: missing header");

    std::string truncated = good.substr(0, good.find("entry 3"));
    CHECK_THROWS_AS(parse(truncated), std::runtime_error);

    std::string bad_cost = good;
    bad_cost.replace(bad_cost.find("cost 11"), 7, "cost x1");
    CHECK_THROWS_WITH(parse(bad_cost), "tables line 4: bad cost literal 'x1'");

    std::string bad_witness = good;
    bad_witness.replace(bad_witness.find("B:2-3"), 5, "R:2-3");
    CHECK_THROWS_WITH(parse(bad_witness), "tables line 4: bad witness 'R:2-3'");
}

TEST_CASE("JSON tables carry the same content") {
    const ProtocolRun run = run_protocol(g2(), 0);
    const auto doc = nlohmann::json::parse(tables_to_json(0, run.tables));
    CHECK(doc["sink"] == 0);
    REQUIRE(doc["tables"].size() == 3);
    const auto& entry = doc["tables"][0]["entries"][0];
    CHECK(entry["child"] == 2);
    CHECK(entry["cost"] == "11");
    CHECK(entry["hop_chain"] == nlohmann::json::parse("[[2,3],[0,3]]"));
    CHECK(entry["colors"] == nlohmann::json::parse(R"(["blue","green"])"));
    CHECK(entry["path"] == nlohmann::json::parse("[2,3,0]"));
}

TEST_CASE("auxiliary dumps") {
    const ProtocolRun run = run_protocol(ring5(), 0, {}, FailureMode::Both);
    CHECK(labels_to_text(run.labels) == "0 1 10\n1 2 5\n2 3 4\n3 7 8\n4 6 9\n");
    const std::string stores = stores_to_text(*run.network);
    CHECK(stores.find("node 1\nGREEN 2 2 3 1 5\n") != std::string::npos);
    CHECK(stores.find("node 4\nGREEN 3 2 3 1 5\n") != std::string::npos);
    const std::string links = links_to_text(0, run.links);
    CHECK(links.find("link 1 0 cost 4 edge 2 3 path 1 2 3 4 0\n") != std::string::npos);

    const std::string metrics = metrics_to_text(run);
    CHECK(metrics.find("label.messages 12\n") != std::string::npos);
    CHECK(metrics.find("edge_propagation.measured 4\n") != std::string::npos);
    CHECK(metrics.find("edge_propagation.predicted 4\n") != std::string::npos);
}

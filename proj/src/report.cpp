#include "altroute/report.hpp"

#include "altroute/edge_propagation.hpp"
#include "altroute/node.hpp"

#include <json.hpp>

#include <cstdio>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace altroute {

namespace {

constexpr std::string_view kTablesMagic = "altroute-recovery-tables 1";

char color_code(WitnessColor c) { return c == WitnessColor::Blue ? 'B' : 'G'; }

std::string format_ratio(double r) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", r);
    return buf;
}

}  // namespace

std::string tables_to_text(NodeId sink, const std::vector<RecoveryTable>& tables) {
    std::ostringstream out;
    out << kTablesMagic << '\n' << "sink " << sink << '\n';
    for (const RecoveryTable& t : tables) {
        out << "table " << t.failed << ' ' << t.entries.size() << '\n';
        for (const RecoveryEntry& e : t.entries) {
            out << "entry " << e.child << " cost " << e.cost.to_string() << " chain";
            for (const Witness& w : e.hop_chain) out << ' ' << color_code(w.color) << ':' << w.edge.u << '-' << w.edge.v;
            out << " path";
            for (NodeId v : e.path) out << ' ' << v;
            out << '\n';
        }
    }
    out << "end\n";
    return out.str();
}

std::string tables_to_json(NodeId sink, const std::vector<RecoveryTable>& tables) {
    nlohmann::ordered_json doc;
    doc["format"] = "altroute-recovery-tables";
    doc["version"] = 1;
    doc["sink"] = sink;
    doc["tables"] = nlohmann::ordered_json::array();
    for (const RecoveryTable& t : tables) {
        nlohmann::ordered_json table;
        table["failed"] = t.failed;
        table["entries"] = nlohmann::ordered_json::array();
        for (const RecoveryEntry& e : t.entries) {
            nlohmann::ordered_json entry;
            entry["child"] = e.child;
            entry["cost"] = e.cost.to_string();
            entry["hop_chain"] = nlohmann::ordered_json::array();
            entry["colors"] = nlohmann::ordered_json::array();
            for (const Witness& w : e.hop_chain) {
                entry["hop_chain"].push_back({w.edge.u, w.edge.v});
                entry["colors"].push_back(w.color == WitnessColor::Blue ? "blue" : "green");
            }
            entry["path"] = e.path;
            table["entries"].push_back(std::move(entry));
        }
        doc["tables"].push_back(std::move(table));
    }
    return doc.dump(2) + "\n";
}

ParsedTables parse_tables_text(std::istream& in) {
    ParsedTables parsed;
    std::string line;
    std::size_t line_no = 0;
    auto error = [&](const std::string& what) {
        return std::runtime_error("tables line " + std::to_string(line_no) + ": " + what);
    };
    auto next = [&]() -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) return true;
        }
        return false;
    };

    if (!next() || line != kTablesMagic) throw error("missing header");
    if (!next()) throw error("missing sink line");
    {
        std::istringstream f(line);
        std::string word;
        if (!(f >> word >> parsed.sink) || word != "sink") throw error("expected 'sink <id>'");
    }

    bool ended = false;
    std::size_t expected_entries = 0;
    while (next()) {
        std::istringstream f(line);
        std::string word;
        f >> word;
        if (word == "end") {
            ended = true;
            break;
        }
        if (word == "table") {
            if (expected_entries != 0) throw error("previous table is missing entries");
            RecoveryTable t;
            if (!(f >> t.failed >> expected_entries)) throw error("expected 'table <failed> <count>'");
            parsed.tables.push_back(std::move(t));
            continue;
        }
        if (word != "entry") throw error("unexpected '" + word + "'");
        if (parsed.tables.empty() || expected_entries == 0) throw error("entry outside a table");

        RecoveryEntry e;
        std::string cost_word, cost_text, chain_word;
        if (!(f >> e.child >> cost_word >> cost_text >> chain_word) || cost_word != "cost" || chain_word != "chain") {
            throw error("expected 'entry <child> cost <c> chain ...'");
        }
        try {
            e.cost = Cost::parse(cost_text);
        } catch (const std::exception& ex) {
            throw error(ex.what());
        }
        std::string token;
        bool saw_path = false;
        while (f >> token) {
            if (token == "path") {
                saw_path = true;
                break;
            }
            unsigned long u = 0, v = 0;
            char code = 0;
            if (std::sscanf(token.c_str(), "%c:%lu-%lu", &code, &u, &v) != 3 || (code != 'B' && code != 'G')) {
                throw error("bad witness '" + token + "'");
            }
            e.hop_chain.push_back(Witness{code == 'B' ? WitnessColor::Blue : WitnessColor::Green,
                                          EdgeRecord{static_cast<NodeId>(u), static_cast<NodeId>(v), {}, {}}});
        }
        if (!saw_path) throw error("missing path");
        NodeId v = 0;
        while (f >> v) e.path.push_back(v);
        if (!f.eof()) throw error("bad path");
        parsed.tables.back().entries.push_back(std::move(e));
        --expected_entries;
    }
    if (!ended) throw error("missing 'end'");
    if (expected_entries != 0) throw error("last table is missing entries");
    return parsed;
}

std::string links_to_text(NodeId sink, const std::vector<LinkRecovery>& links) {
    std::ostringstream out;
    out << "altroute-link-tables 1\n" << "sink " << sink << '\n';
    for (const LinkRecovery& l : links) {
        out << "link " << l.node << ' ' << l.parent << " cost " << l.cost.to_string() << " edge " << l.edge.u << ' '
            << l.edge.v << " path";
        for (NodeId v : l.path) out << ' ' << v;
        out << '\n';
    }
    out << "end\n";
    return out.str();
}

std::string labels_to_text(const DfsLabels& labels) {
    std::ostringstream out;
    for (NodeId v = 0; v < labels.size(); ++v) out << v << ' ' << labels[v].start << ' ' << labels[v].end << '\n';
    return out.str();
}

std::string stores_to_text(const RouterNetwork& net) {
    std::ostringstream out;
    auto edge_line = [&out](std::string_view tag, NodeId key, const EdgeRecord& e) {
        out << tag << ' ' << key << ' ' << e.u << ' ' << e.v << ' ' << e.cost.to_string() << ' '
            << e.fixed_green_weight.to_string() << '\n';
    };
    for (NodeId v = 0; v < net.size(); ++v) {
        const EdgeStores& st = net.node(v).stores;
        out << "node " << v << '\n';
        for (const auto& [sibling, e] : st.parent_blue) edge_line("BLUE", sibling, e);
        for (const auto& [child, e] : st.children_green) edge_line("GREEN", child, e);
    }
    return out.str();
}

std::string stretch_to_text(const StretchReport& report) {
    std::ostringstream out;
    out << "# x child optimal protocol ratio\n";
    for (const StretchEntry& s : report.entries) {
        out << s.failed << ' ' << s.child << ' ' << s.optimal.to_string() << ' ' << s.protocol.to_string() << ' '
            << format_ratio(s.ratio) << '\n';
    }
    out << "entries " << report.entries.size() << '\n';
    out << "mean " << format_ratio(report.mean) << '\n';
    out << "max " << format_ratio(report.max) << '\n';
    return out.str();
}

std::string metrics_to_text(const ProtocolRun& run) {
    std::ostringstream out;
    out << "nodes " << run.graph().node_count() << '\n';
    out << "edges " << run.graph().edge_count() << '\n';
    out << "label.messages " << run.stats.label_messages() << '\n';
    out << "label.bound_3n " << 3 * run.graph().node_count() << '\n';
    out << "edge_propagation.measured " << run.stats.collect.delivered_of(MessageKind::NonTreeEdge) << '\n';
    out << "edge_propagation.predicted " << run.predicted_edge_messages << '\n';
    out << "edge_propagation.baseline_m_plus_n " << run.graph().edge_count() + run.graph().node_count() << '\n';
    std::size_t fetches = 0, extracts = 0;
    for (const RecoveryWork& w : run.work) {
        fetches += w.blue_fetches;
        extracts += w.extract_min;
    }
    out << "recovery.blue_fetches " << fetches << '\n';
    out << "recovery.extract_min " << extracts << '\n';
    out << run.stats.wake.to_text("phase.wake.");
    out << run.stats.count.to_text("phase.count.");
    out << run.stats.allocation.to_text("phase.allocation.");
    out << run.stats.collect.to_text("phase.collect.");
    out << run.stats.recovery.to_text("phase.recovery.");
    out << run.stats.total().to_text("total.");
    return out.str();
}

}  // namespace altroute

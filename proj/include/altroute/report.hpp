#pragma once

#include "altroute/labels.hpp"
#include "altroute/oracle.hpp"
#include "altroute/protocol.hpp"
#include "altroute/recovery.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace altroute {

// Recovery tables, text form:
//
//   altroute-recovery-tables 1
//   sink <s>
//   table <failed> <child count>
//   entry <child> cost <c> chain <B|G>:<u>-<v> ... path <v0> <v1> ...
//   end
//
// Tables appear in ascending failed id, entries in ascending child id.
std::string tables_to_text(NodeId sink, const std::vector<RecoveryTable>& tables);

/// Same content as one JSON document.
std::string tables_to_json(NodeId sink, const std::vector<RecoveryTable>& tables);

struct ParsedTables {
    NodeId sink = 0;
    std::vector<RecoveryTable> tables;
};

/// Inverse of tables_to_text. Witness edges carry endpoints only, so their
/// cost and fixed weight are read back as zero. Throws std::runtime_error
/// naming the offending line.
ParsedTables parse_tables_text(std::istream& in);

/// "link <node> <parent> cost <c> edge <u> <v> path ..." per non-sink node.
std::string links_to_text(NodeId sink, const std::vector<LinkRecovery>& links);

/// "node dfsStart dfsEnd" per node.
std::string labels_to_text(const DfsLabels& labels);

/// Per node: "node <id>", then "BLUE sibling u v cost fgw" and
/// "GREEN child u v cost fgw" lines.
std::string stores_to_text(const RouterNetwork& net);

/// "x child optimal protocol ratio" lines, then summary lines.
std::string stretch_to_text(const StretchReport& report);

/// Flat "name value" metrics for one run.
std::string metrics_to_text(const ProtocolRun& run);

}  // namespace altroute

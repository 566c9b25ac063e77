#pragma once

// JSON (de)serialization for instances and mappings.

#include <string>

#include "json.hpp"
#include "vnep/graph_core.hpp"

namespace vnep {

using Json = nlohmann::json;

/// Throws InstanceError on unknown/duplicate ids and Json errors on malformed
/// documents. Requests come back sorted by id.
Instance parse_instance(const Json& doc);
Instance load_instance(const std::string& path);

/// Serializes with explicit allowed sets, so parse(serialize(x)) == x.
Json instance_to_json(const Instance& instance);

/// {"node_map": {node: substrate node}, "edge_map": [{"edge": [i, j], "path": [[u, v], ...]}]}
Json mapping_to_json(const Substrate& substrate, const Request& request, const Mapping& mapping);
Mapping mapping_from_json(const Substrate& substrate, const Request& request, const Json& doc);

Json read_json_file(const std::string& path);
void write_text(const std::string& path, const std::string& text);

/// Structural equality on external ids, used by round-trip checks.
bool same_instance(const Instance& a, const Instance& b);

}  // namespace vnep

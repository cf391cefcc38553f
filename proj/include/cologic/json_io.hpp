#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "cologic/covers.hpp"
#include "cologic/fraisse.hpp"
#include "cologic/graph.hpp"

namespace cologic {

using Json = nlohmann::json;

/// Parses JSON text; InputError names the source and byte offset on failure.
Json parse_json(std::string_view text, const std::string& source);
Json read_json_file(const std::string& path);

/// {"vertices": n, "edges": [[i, j], ...]} with i < j, no duplicates.
FiniteGraph graph_from_json(const Json& j, const std::string& source);
Json to_json(const FiniteGraph& g);
FiniteGraph load_graph(const std::string& path);

/// [[atoms of entry 0], [atoms of entry 1], ...].
GoodTuple tuple_from_json(const Json& j, const std::string& source);
Json to_json(const GoodTuple& tuple);

/// [f(0), f(1), ...]; the target is max + 1 unless given.
Arrangement arrangement_from_json(const Json& j, const std::string& source);
Json to_json(const Arrangement& f);

/// Sequence file: {"bound", "stages", "bonding", "composites", "ledger"}.
Json to_json(const FraisseSequence& seq);
/// Throws InputError when the file is malformed or inconsistent.
FraisseSequence sequence_from_json(const Json& j, const std::string& source);

} // namespace cologic

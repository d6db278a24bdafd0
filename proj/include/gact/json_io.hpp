#pragma once

#include "gact/models.hpp"
#include "gact/solvability.hpp"
#include "gact/tasks.hpp"
#include "gact/terminating.hpp"

#include <json.hpp>

#include <string>

namespace gact {

using Json = nlohmann::json;

/// Parses text, turning syntax errors into SchemaError.
Json parse_json(const std::string& text);

// Vertices are written by canonical name at the complex's level; lists are sorted by name.
Json complex_to_json(const ChromaticComplex& c);
/// Reuses base vertices of `table` with the same name; a null table starts a fresh one.
ChromaticComplex complex_from_json(const Json& j, TablePtr table = nullptr);

Json run_to_json(const RunSpec& r);
RunSpec run_from_json(const Json& j);

Json model_to_json(const ModelSpec& m);
ModelSpec model_from_json(const Json& j);

Json task_to_json(const TaskSpec& t);
TaskSpec task_from_json(const Json& j);

/// Decision tables name views by their canonical shortest name.
Json protocol_to_json(const TableProtocol& p, const VertexTable& t, int output_level);
std::shared_ptr<TableProtocol> protocol_from_json(const Json& j, VertexTable& t);

Json act_map_to_json(const DecisionMapACT& m, const VertexTable& t, int output_level);
DecisionMapACT act_map_from_json(const Json& j, VertexTable& t);

Json tsub_to_json(const TerminatingSubdivision& ts, int depth);
/// Builds an explicit schedule from the listed stable simplices over `table` (or a fresh table).
TSubPtr tsub_from_json(const Json& j, TablePtr table = nullptr);

Json delta_to_json(const DecisionMapGACT& d, const VertexTable& t, int output_level);
DecisionMapGACT delta_from_json(const Json& j, VertexTable& t);

}  // namespace gact

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "resistnet/graph.hpp"

namespace resistnet {

// Graph documents: {"nodes": n, "edges": [{"u": int, "v": int, "w": float}, ...]}.
// Edge order in the document defines edge indices.

/// Throws ParseError with a line/field diagnostic, or GraphError for
/// structurally invalid graphs.
WeightedGraph parse_graph_json(const std::string& text);
WeightedGraph read_graph_file(const std::filesystem::path& path);

/// Writes weights with 17 significant digits so files round-trip exactly.
std::string graph_to_json(const WeightedGraph& g);
void write_graph_file(const std::filesystem::path& path, const WeightedGraph& g);

}  // namespace resistnet

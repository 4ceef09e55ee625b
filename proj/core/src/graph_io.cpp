#include "resistnet/graph_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "resistnet/errors.hpp"

namespace resistnet {
namespace {

using nlohmann::json;

std::string line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

Index require_index(const json& node, const std::string& field) {
  if (!node.is_number_integer())
    throw ParseError(field + ": expected a non-negative integer");
  if (node.is_number_unsigned()) return node.get<Index>();
  const auto value = node.get<long long>();
  if (value < 0) throw ParseError(field + ": expected a non-negative integer, got " +
                                  std::to_string(value));
  return static_cast<Index>(value);
}

}  // namespace

WeightedGraph parse_graph_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("malformed JSON at " + line_col(text, e.byte > 0 ? e.byte - 1 : 0) + ": " +
                     e.what());
  }
  if (!doc.is_object()) throw ParseError("document: expected an object");
  if (!doc.contains("nodes")) throw ParseError("nodes: missing field");
  if (!doc.contains("edges")) throw ParseError("edges: missing field");
  const Index n = require_index(doc["nodes"], "nodes");
  if (n == 0) throw ParseError("nodes: must be positive");
  const json& list = doc["edges"];
  if (!list.is_array()) throw ParseError("edges: expected an array");

  std::vector<Edge> edges;
  edges.reserve(list.size());
  for (std::size_t k = 0; k < list.size(); ++k) {
    const std::string where = "edges[" + std::to_string(k) + "]";
    const json& item = list[k];
    if (!item.is_object()) throw ParseError(where + ": expected an object");
    for (const char* key : {"u", "v", "w"})
      if (!item.contains(key)) throw ParseError(where + "." + key + ": missing field");
    if (!item["w"].is_number()) throw ParseError(where + ".w: expected a number");
    edges.push_back(Edge{require_index(item["u"], where + ".u"),
                         require_index(item["v"], where + ".v"), item["w"].get<double>()});
  }
  return WeightedGraph(n, edges);
}

WeightedGraph read_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open graph file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph_json(buf.str());
}

std::string graph_to_json(const WeightedGraph& g) {
  std::ostringstream os;
  os.precision(17);
  os << "{\"nodes\": " << g.node_count() << ", \"edges\": [";
  for (Index k = 0; k < g.edge_count(); ++k) {
    const Edge& e = g.edge(k);
    os << (k == 0 ? "\n  " : ",\n  ") << "{\"u\": " << e.tail << ", \"v\": " << e.head
       << ", \"w\": " << e.weight << "}";
  }
  os << (g.edge_count() > 0 ? "\n]}\n" : "]}\n");
  return os.str();
}

void write_graph_file(const std::filesystem::path& path, const WeightedGraph& g) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write graph file '" + path.string() + "'");
  out << graph_to_json(g);
}

}  // namespace resistnet

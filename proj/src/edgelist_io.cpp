#include "expdec/edgelist_io.hpp"

#include <fstream>
#include <sstream>

namespace expdec {

namespace {

constexpr long long kMaxNodeId = 100000000;  // node arrays are allocated densely

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream f(path);
  EXPDEC_REQUIRE(f.good(), "cannot open file: " + path);
  return f;
}

}  // namespace

Graph read_edge_list(std::istream& in, const std::string& name) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  NodeId max_id = -1;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ss(line);
    long long u, v;
    if (!(ss >> u >> v) || u < 0 || v < 0)
      throw ParamError(name + ":" + std::to_string(lineno) + ": expected 'u v'");
    if (u > kMaxNodeId || v > kMaxNodeId)
      throw ParamError(name + ":" + std::to_string(lineno) + ": node id too large");
    std::string rest;
    if (ss >> rest)
      throw ParamError(name + ":" + std::to_string(lineno) + ": trailing tokens");
    edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
    max_id = std::max({max_id, static_cast<NodeId>(u), static_cast<NodeId>(v)});
  }
  return Graph::from_edges(max_id + 1, edges);
}

Graph read_edge_list_file(const std::string& path) {
  std::ifstream f = open_or_throw(path);
  return read_edge_list(f, path);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "# nodes " << g.node_count() << " edges " << g.edge_count() << "\n";
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.endpoints(e);
    out << u << " " << v << "\n";
  }
}

std::vector<NodeId> read_node_set(std::istream& in, const std::string& name) {
  std::vector<NodeId> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ss(line);
    long long v;
    while (ss >> v) {
      if (v < 0 || v > kMaxNodeId)
        throw ParamError(name + ":" + std::to_string(lineno) + ": node id out of range");
      out.push_back(static_cast<NodeId>(v));
    }
  }
  return out;
}

std::vector<NodeId> read_node_set_file(const std::string& path) {
  std::ifstream f = open_or_throw(path);
  return read_node_set(f, path);
}

}  // namespace expdec

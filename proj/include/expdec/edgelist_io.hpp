#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "expdec/graph.hpp"

namespace expdec {

// One edge per line: "u v" with 0-based ids ("u u" is a self-loop); lines
// starting with '#' are comments. Node count is max id + 1. Parse errors
// carry the line number.
Graph read_edge_list(std::istream& in, const std::string& name = "<stream>");
Graph read_edge_list_file(const std::string& path);

void write_edge_list(std::ostream& out, const Graph& g);

// Whitespace-separated node ids, '#' comments.
std::vector<NodeId> read_node_set(std::istream& in, const std::string& name = "<stream>");
std::vector<NodeId> read_node_set_file(const std::string& path);

}  // namespace expdec

#pragma once

#include <utility>
#include <vector>

#include "expdec/common.hpp"

namespace expdec {

// Undirected multigraph with self-loops. A self-loop contributes 1 to the
// degree of its node; parallel edges are allowed. Edge ids are stable
// (index into the edge array) and survive induced-subgraph construction
// through the mapping returned alongside.
//
// Graphs are immutable after construction apart from add_edge during
// building; algorithms never mutate a Graph they were handed.
class Graph {
 public:
  struct Arc {
    NodeId to;
    EdgeId edge;
  };

  Graph() = default;
  explicit Graph(int n) : adj_(n), degree_(n, 0) {}

  static Graph from_edges(int n, const std::vector<std::pair<NodeId, NodeId>>& edges);

  EdgeId add_edge(NodeId u, NodeId v);

  int node_count() const { return static_cast<int>(adj_.size()); }
  EdgeId edge_count() const { return static_cast<EdgeId>(edges_.size()); }

  std::pair<NodeId, NodeId> endpoints(EdgeId e) const { return edges_[e]; }
  bool is_loop(EdgeId e) const { return edges_[e].first == edges_[e].second; }

  // Incident arcs of v; a self-loop appears once.
  const std::vector<Arc>& arcs(NodeId v) const { return adj_[v]; }

  int64_t degree(NodeId v) const { return degree_[v]; }

  int64_t total_volume() const { return total_volume_; }

  template <typename It>
  int64_t volume(It begin, It end) const {
    int64_t vol = 0;
    for (It it = begin; it != end; ++it) vol += degree_[*it];
    return vol;
  }
  int64_t volume(const std::vector<NodeId>& xs) const { return volume(xs.begin(), xs.end()); }

  // |E(S, V\S)| counting multiplicity; self-loops never cross.
  int64_t cut_size(const std::vector<NodeId>& side) const;

 private:
  std::vector<std::pair<NodeId, NodeId>> edges_;
  std::vector<std::vector<Arc>> adj_;
  std::vector<int64_t> degree_;
  int64_t total_volume_ = 0;
};

// Phi_G(S) = delta(S) / min(vol(S), vol(V\S)) as an exact rational.
// S must be a proper nonempty subset.
Rat conductance(const Graph& g, const std::vector<NodeId>& side);

// Conductance of the whole graph is handled by the oracle module
// (exhaustive); a singleton graph has conductance 1 by definition.

// G{S}: induced subgraph with one self-loop per boundary edge so that
// every node keeps its degree from g.
struct InducedGraph {
  Graph graph;
  std::vector<NodeId> orig_node;   // new id -> id in parent graph
  std::vector<EdgeId> orig_edge;   // new edge id -> edge id in parent graph
  std::vector<char> boundary_loop; // new edge id -> loop created from a cut edge
  int64_t boundary_edges = 0;      // |E_g(S, V\S)|

  NodeId to_orig(NodeId v) const { return orig_node[v]; }
};

InducedGraph induce_with_loops(const Graph& g, const std::vector<NodeId>& s);

// Subdivision graph G_E: a degree-2 split node on every edge (self-loops
// included; a loop at v becomes two parallel edges {v, x_e}).
// Split node of edge e has id base_nodes + e.
struct SubdivisionGraph {
  Graph graph;
  int base_nodes = 0;

  NodeId split_node(EdgeId e) const { return base_nodes + e; }
  bool is_split(NodeId v) const { return v >= base_nodes; }
  EdgeId split_edge(NodeId v) const { return v - base_nodes; }
};

SubdivisionGraph subdivision(const Graph& g);

// S_E ∩ V: drops split nodes.
std::vector<NodeId> project_cut(const SubdivisionGraph& sub, const std::vector<NodeId>& s_e);

// Adds to S_E every split node x_e whose endpoints both lie in S_E
// (after which delta and volume in G_E correspond to delta and volume of
// S_E ∩ V in G up to the factor-2 of the subdivision).
std::vector<NodeId> normalize_subdivision_cut(const SubdivisionGraph& sub,
                                              const std::vector<NodeId>& s_e);

std::vector<std::vector<NodeId>> connected_components(const Graph& g);

}  // namespace expdec

#include "expdec/graph.hpp"

#include <algorithm>

namespace expdec {

Graph Graph::from_edges(int n, const std::vector<std::pair<NodeId, NodeId>>& edges) {
  Graph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

EdgeId Graph::add_edge(NodeId u, NodeId v) {
  EXPDEC_REQUIRE(u >= 0 && v >= 0 && u < node_count() && v < node_count(),
                 "edge endpoint out of range");
  EdgeId e = static_cast<EdgeId>(edges_.size());
  edges_.emplace_back(u, v);
  adj_[u].push_back({v, e});
  if (u == v) {
    degree_[u] += 1;  // a self-loop contributes exactly 1
    total_volume_ += 1;
  } else {
    adj_[v].push_back({u, e});
    degree_[u] += 1;
    degree_[v] += 1;
    total_volume_ += 2;
  }
  return e;
}

int64_t Graph::cut_size(const std::vector<NodeId>& side) const {
  std::vector<char> in(node_count(), 0);
  for (NodeId v : side) in[v] = 1;
  int64_t cut = 0;
  for (EdgeId e = 0; e < edge_count(); ++e) {
    auto [u, v] = edges_[e];
    if (u != v && in[u] != in[v]) ++cut;
  }
  return cut;
}

Rat conductance(const Graph& g, const std::vector<NodeId>& side) {
  EXPDEC_REQUIRE(!side.empty(), "conductance of empty set");
  int64_t vol_s = g.volume(side);
  int64_t vol_rest = g.total_volume() - vol_s;
  EXPDEC_REQUIRE(static_cast<int>(side.size()) < g.node_count(), "conductance of full set");
  int64_t denom = std::min(vol_s, vol_rest);
  int64_t cut = g.cut_size(side);
  if (denom == 0) {
    // Zero-volume side: conductance degenerates; 0 crossing edges as well.
    return Rat(cut == 0 ? 0 : 1, 1);
  }
  return Rat(cut, denom);
}

InducedGraph induce_with_loops(const Graph& g, const std::vector<NodeId>& s) {
  InducedGraph out;
  std::vector<NodeId> new_id(g.node_count(), -1);
  out.orig_node.reserve(s.size());
  for (NodeId v : s) {
    EXPDEC_REQUIRE(v >= 0 && v < g.node_count(), "induced set node out of range");
    EXPDEC_REQUIRE(new_id[v] < 0, "induced set has duplicate nodes");
    new_id[v] = static_cast<NodeId>(out.orig_node.size());
    out.orig_node.push_back(v);
  }
  out.graph = Graph(static_cast<int>(s.size()));
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.endpoints(e);
    NodeId nu = new_id[u], nv = new_id[v];
    if (nu >= 0 && nv >= 0) {
      out.graph.add_edge(nu, nv);
      out.orig_edge.push_back(e);
      out.boundary_loop.push_back(0);
    } else if (nu >= 0 || nv >= 0) {
      // Boundary edge: one self-loop at the surviving endpoint keeps its
      // degree equal to the degree in g.
      NodeId keep = nu >= 0 ? nu : nv;
      out.graph.add_edge(keep, keep);
      out.orig_edge.push_back(e);
      out.boundary_loop.push_back(1);
      ++out.boundary_edges;
    }
  }
  for (NodeId v = 0; v < out.graph.node_count(); ++v)
    EXPDEC_CHECK(out.graph.degree(v) == g.degree(out.orig_node[v]),
                 "induce_with_loops must preserve degrees");
  return out;
}

SubdivisionGraph subdivision(const Graph& g) {
  SubdivisionGraph out;
  out.base_nodes = g.node_count();
  out.graph = Graph(g.node_count() + g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.endpoints(e);
    NodeId x = out.split_node(e);
    out.graph.add_edge(u, x);
    out.graph.add_edge(v, x);  // loop at v yields two parallel edges {v, x}
  }
  return out;
}

std::vector<NodeId> project_cut(const SubdivisionGraph& sub, const std::vector<NodeId>& s_e) {
  std::vector<NodeId> out;
  for (NodeId v : s_e)
    if (!sub.is_split(v)) out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<NodeId> normalize_subdivision_cut(const SubdivisionGraph& sub,
                                              const std::vector<NodeId>& s_e) {
  std::vector<char> in(sub.graph.node_count(), 0);
  for (NodeId v : s_e) in[v] = 1;
  std::vector<NodeId> out = s_e;
  for (EdgeId e = 0; e < static_cast<EdgeId>(sub.graph.node_count() - sub.base_nodes); ++e) {
    NodeId x = sub.split_node(e);
    if (in[x]) continue;
    bool both = true;
    for (const auto& a : sub.graph.arcs(x))
      if (!in[a.to]) both = false;
    if (both) {
      in[x] = 1;
      out.push_back(x);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<NodeId>> connected_components(const Graph& g) {
  std::vector<std::vector<NodeId>> comps;
  std::vector<char> seen(g.node_count(), 0);
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    if (seen[s]) continue;
    comps.emplace_back();
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      comps.back().push_back(v);
      for (const auto& a : g.arcs(v)) {
        if (!seen[a.to]) {
          seen[a.to] = 1;
          stack.push_back(a.to);
        }
      }
    }
    std::sort(comps.back().begin(), comps.back().end());
  }
  return comps;
}

}  // namespace expdec

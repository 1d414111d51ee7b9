#pragma once

#include <random>
#include <utility>
#include <vector>

#include "expdec/generators.hpp"
#include "expdec/graph.hpp"

namespace expdec::fixtures {

inline Graph path(int n) {
  Graph g(n);
  for (NodeId v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

inline Graph triangle_pair() {
  // Two triangles joined by one bridge.
  Graph g(6);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(0, 2);
  g.add_edge(3, 4);
  g.add_edge(4, 5);
  g.add_edge(3, 5);
  g.add_edge(0, 3);
  return g;
}

// K_k plus a triangle {k, k+1, k+2} attached by one edge to node 0, with
// `boundary` extra edges from the triangle to outside nodes.
inline Graph clique_with_triangle(int k, int boundary) {
  int outside = (boundary + 1) / 2;
  Graph g(k + 3 + outside);
  for (NodeId u = 0; u < k; ++u)
    for (NodeId v = u + 1; v < k; ++v) g.add_edge(u, v);
  g.add_edge(k, k + 1);
  g.add_edge(k, k + 2);
  g.add_edge(k + 1, k + 2);
  g.add_edge(0, k);
  for (int i = 0; i < boundary; ++i) g.add_edge(k + (i % 3), k + 3 + (i % outside));
  return g;
}

inline std::vector<NodeId> range_nodes(int from, int to) {
  std::vector<NodeId> out;
  for (NodeId v = from; v < to; ++v) out.push_back(v);
  return out;
}

// Random connected multigraph: a random spanning tree plus extra non-loop
// edges (parallels allowed) plus explicit self-loops.
inline Graph random_connected(int n, int extra_edges, int loops, std::mt19937_64& rng) {
  Graph g(n);
  for (NodeId v = 1; v < n; ++v) g.add_edge(v, static_cast<NodeId>(rng() % v));
  for (int i = 0; i < extra_edges && n > 1; ++i) {
    NodeId u = static_cast<NodeId>(rng() % n);
    NodeId v = static_cast<NodeId>(rng() % n);
    if (u == v) v = (v + 1) % n;
    g.add_edge(u, v);
  }
  for (int i = 0; i < loops; ++i) {
    NodeId w = static_cast<NodeId>(rng() % n);
    g.add_edge(w, w);
  }
  return g;
}

}  // namespace expdec::fixtures

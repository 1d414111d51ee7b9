#include "expdec/generators.hpp"

#include <random>
#include <set>

namespace expdec {

Graph make_clique(int k) {
  EXPDEC_REQUIRE(k >= 1, "clique needs k >= 1");
  Graph g(k);
  for (NodeId u = 0; u < k; ++u)
    for (NodeId v = u + 1; v < k; ++v) g.add_edge(u, v);
  return g;
}

Graph make_barbell(int k) {
  EXPDEC_REQUIRE(k >= 2, "barbell needs k >= 2");
  Graph g(2 * k);
  for (NodeId u = 0; u < k; ++u)
    for (NodeId v = u + 1; v < k; ++v) {
      g.add_edge(u, v);
      g.add_edge(k + u, k + v);
    }
  g.add_edge(0, k);
  return g;
}

Graph make_cycle(int n) {
  EXPDEC_REQUIRE(n >= 3, "cycle needs n >= 3");
  Graph g(n);
  for (NodeId v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
  return g;
}

Graph make_hypercube(int d) {
  EXPDEC_REQUIRE(d >= 1 && d <= 20, "hypercube dimension out of range");
  int n = 1 << d;
  Graph g(n);
  for (NodeId v = 0; v < n; ++v)
    for (int b = 0; b < d; ++b) {
      NodeId u = v ^ (1 << b);
      if (u > v) g.add_edge(v, u);
    }
  return g;
}

Graph make_gnm(int n, int64_t m, uint64_t seed) {
  EXPDEC_REQUIRE(n >= 1, "gnm needs n >= 1");
  int64_t max_edges = static_cast<int64_t>(n) * (n - 1) / 2;
  EXPDEC_REQUIRE(m >= 0 && m <= max_edges, "gnm edge count out of range");
  std::mt19937_64 rng(seed);
  std::set<std::pair<NodeId, NodeId>> chosen;
  Graph g(n);
  while (static_cast<int64_t>(chosen.size()) < m) {
    NodeId u = static_cast<NodeId>(rng() % n);
    NodeId v = static_cast<NodeId>(rng() % n);
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    if (chosen.insert({u, v}).second) g.add_edge(u, v);
  }
  return g;
}

Graph generate_family(const std::string& family, const std::vector<int64_t>& params,
                      uint64_t seed) {
  auto need = [&](size_t k) {
    EXPDEC_REQUIRE(params.size() == k,
                   "family " + family + " needs " + std::to_string(k) + " parameter(s)");
  };
  if (family == "clique") {
    need(1);
    return make_clique(static_cast<int>(params[0]));
  }
  if (family == "barbell") {
    need(1);
    return make_barbell(static_cast<int>(params[0]));
  }
  if (family == "cycle") {
    need(1);
    return make_cycle(static_cast<int>(params[0]));
  }
  if (family == "hypercube") {
    need(1);
    return make_hypercube(static_cast<int>(params[0]));
  }
  if (family == "gnm") {
    need(2);
    return make_gnm(static_cast<int>(params[0]), params[1], seed);
  }
  throw ParamError("unknown family: " + family);
}

}  // namespace expdec

#include "expdec/oracle.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace expdec {
namespace oracle {

namespace {

constexpr int kEnumLimit = 20;

// Gray-code subset walk: flips one node per step, keeping delta(S) and
// vol(S) incremental. pool[0] stays pinned inside S so each cut is visited
// once per orientation.
template <typename Visit>
void enumerate_subsets(const Graph& g, const std::vector<NodeId>& pool, bool pin_first,
                       Visit&& visit) {
  int k = static_cast<int>(pool.size());
  std::vector<char> in(g.node_count(), 0);
  int64_t cut = 0, vol = 0;
  int free_count = pin_first ? k - 1 : k;
  auto flip = [&](NodeId v) {
    int sign = in[v] ? -1 : 1;
    for (const auto& a : g.arcs(v)) {
      if (a.to == v) continue;
      cut += (in[a.to] ? -sign : sign);
    }
    in[v] ^= 1;
    vol += sign * g.degree(v);
  };
  if (pin_first) flip(pool[0]);
  visit(in, cut, vol);
  uint64_t total = 1ULL << free_count;
  for (uint64_t i = 1; i < total; ++i) {
    int bit = __builtin_ctzll(i);
    flip(pool[(pin_first ? 1 : 0) + bit]);
    visit(in, cut, vol);
  }
}

}  // namespace

ExactCutReport exact_min_conductance(const Graph& g) {
  EXPDEC_REQUIRE(g.node_count() <= kEnumLimit, "exact conductance limited to 20 nodes");
  ExactCutReport report;
  int n = g.node_count();
  if (n <= 1) return report;  // singleton: conductance 1 by definition
  std::vector<NodeId> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  int64_t total_vol = g.total_volume();
  bool found = false;
  Rat best(1, 1);
  std::vector<char> best_mask(n, 0);
  enumerate_subsets(g, pool, /*pin_first=*/true, [&](const std::vector<char>& in, int64_t cut,
                                                     int64_t vol) {
    ++report.enumerated;
    int64_t denom = std::min(vol, total_vol - vol);
    if (denom <= 0) {
      // One side has zero volume: skip unless it is a genuine bipartition
      // of nodes (possible only with isolated vertices).
      int64_t cnt = std::count(in.begin(), in.end(), 1);
      if (cnt == 0 || cnt == n) return;
      if (cut == 0 && (!found || best.num > 0)) {
        best = Rat(0, 1);
        best_mask = in;
        found = true;
      }
      return;
    }
    int64_t cnt = std::count(in.begin(), in.end(), 1);
    if (cnt == 0 || cnt == n) return;
    Rat phi(cut, denom);
    if (!found || phi < best) {
      best = phi;
      best_mask = in;
      found = true;
    }
  });
  EXPDEC_CHECK(found, "no nontrivial cut enumerated");
  report.value = best;
  for (NodeId v = 0; v < n; ++v)
    if (best_mask[v]) report.best_side.push_back(v);
  return report;
}

bool exact_nearly_expander(const Graph& g, const std::vector<NodeId>& a, Phi phi) {
  EXPDEC_REQUIRE(static_cast<int>(a.size()) <= kEnumLimit,
                 "nearly-expander check limited to 20 nodes");
  if (a.empty()) return true;
  int64_t vol_a = g.volume(a);
  bool ok = true;
  enumerate_subsets(g, a, /*pin_first=*/false,
                    [&](const std::vector<char>&, int64_t cut, int64_t vol) {
                      if (!ok || vol == 0) return;
                      if (2 * vol > vol_a) return;
                      // |E(S, V\S)| >= phi*vol(S), boundary in the whole graph.
                      if (phi.q * cut < phi.p * vol) ok = false;
                    });
  return ok;
}

namespace {

// Shared residual-network builder for both max-flow routes.
struct ResidualNet {
  struct Arc {
    int to;
    int64_t cap;
    int rev;
    int tag;  // graph edge id, or -1/-2 for source/sink arcs
  };
  std::vector<std::vector<Arc>> adj;
  int s, t;

  ResidualNet(const Graph& g, const std::vector<int64_t>& delta,
              const std::vector<int64_t>& sink_cap, int64_t arc_cap) {
    int n = g.node_count();
    s = n;
    t = n + 1;
    adj.resize(n + 2);
    auto add = [&](int from, int to, int64_t cap, int tag) {
      adj[from].push_back({to, cap, static_cast<int>(adj[to].size()), tag});
      adj[to].push_back({from, 0, static_cast<int>(adj[from].size()) - 1, tag});
    };
    for (NodeId v = 0; v < n; ++v) {
      if (delta[v] > 0) add(s, v, delta[v], -1);
      if (sink_cap[v] > 0) add(v, t, sink_cap[v], -2);
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      auto [u, v] = g.endpoints(e);
      if (u == v) continue;
      // Undirected edge: capacity arc_cap in each direction, modelled as a
      // pair of mutually-reverse arcs carrying residual arc_cap each way.
      adj[u].push_back({v, arc_cap, static_cast<int>(adj[v].size()), e});
      adj[v].push_back({u, arc_cap, static_cast<int>(adj[u].size()) - 1, e});
    }
  }
};

}  // namespace

MaxFlowReport exact_flow_feasible(const Graph& g, const std::vector<int64_t>& delta,
                                  const std::vector<int64_t>& sink_cap, int64_t arc_cap) {
  int64_t demand = std::accumulate(delta.begin(), delta.end(), int64_t{0});
  EXPDEC_REQUIRE(demand <= 1000000, "oracle max flow limited to 1e6 mass units");
  ResidualNet net(g, delta, sink_cap, arc_cap);
  int n = g.node_count();
  int64_t value = 0;
  std::vector<int> prev_node(n + 2), prev_arc(n + 2);
  while (true) {
    // BFS augmenting path (Edmonds–Karp).
    std::fill(prev_node.begin(), prev_node.end(), -1);
    std::deque<int> q{net.s};
    prev_node[net.s] = net.s;
    while (!q.empty() && prev_node[net.t] < 0) {
      int v = q.front();
      q.pop_front();
      for (int i = 0; i < static_cast<int>(net.adj[v].size()); ++i) {
        const auto& a = net.adj[v][i];
        if (a.cap > 0 && prev_node[a.to] < 0) {
          prev_node[a.to] = v;
          prev_arc[a.to] = i;
          q.push_back(a.to);
        }
      }
    }
    if (prev_node[net.t] < 0) break;
    int64_t aug = INT64_MAX;
    for (int v = net.t; v != net.s; v = prev_node[v])
      aug = std::min(aug, net.adj[prev_node[v]][prev_arc[v]].cap);
    for (int v = net.t; v != net.s; v = prev_node[v]) {
      auto& a = net.adj[prev_node[v]][prev_arc[v]];
      a.cap -= aug;
      net.adj[a.to][a.rev].cap += aug;
    }
    value += aug;
  }
  MaxFlowReport rep;
  rep.value = value;
  rep.demand = demand;
  rep.feasible = (value == demand);
  rep.source_routed.assign(n, 0);
  rep.sink_used.assign(n, 0);
  rep.edge_flow.assign(g.edge_count(), 0);
  for (const auto& a : net.adj[net.s])
    if (a.tag == -1) rep.source_routed[a.to] = delta[a.to] - a.cap;
  for (NodeId v = 0; v < n; ++v)
    for (const auto& a : net.adj[v]) {
      if (a.tag == -2 && a.to == net.t) rep.sink_used[v] = sink_cap[v] - a.cap;
      if (a.tag >= 0) {
        auto [eu, ev] = g.endpoints(static_cast<EdgeId>(a.tag));
        // Net flow along the stored orientation: residual deficit from u.
        if (v == eu && a.to == ev) rep.edge_flow[a.tag] = arc_cap - a.cap;
      }
    }
  // Mark the mincut side: residual-reachable from s.
  std::vector<char> seen(n + 2, 0);
  std::deque<int> q{net.s};
  seen[net.s] = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (const auto& a : net.adj[v])
      if (a.cap > 0 && !seen[a.to]) {
        seen[a.to] = 1;
        q.push_back(a.to);
      }
  }
  for (NodeId v = 0; v < n; ++v)
    if (seen[v]) rep.mincut_side.push_back(v);
  return rep;
}

int64_t push_relabel_max_flow_value(const Graph& g, const std::vector<int64_t>& delta,
                                    const std::vector<int64_t>& sink_cap, int64_t arc_cap) {
  ResidualNet net(g, delta, sink_cap, arc_cap);
  int n = static_cast<int>(net.adj.size());
  std::vector<int64_t> excess(n, 0);
  std::vector<int> height(n, 0), cursor(n, 0);
  height[net.s] = n;
  std::deque<int> active;
  for (auto& a : net.adj[net.s]) {
    if (a.cap > 0) {
      excess[a.to] += a.cap;
      net.adj[a.to][a.rev].cap += a.cap;
      a.cap = 0;
      if (a.to != net.t) active.push_back(a.to);
    }
  }
  while (!active.empty()) {
    int v = active.front();
    active.pop_front();
    while (excess[v] > 0) {
      if (cursor[v] == static_cast<int>(net.adj[v].size())) {
        int min_h = 2 * n;
        for (const auto& a : net.adj[v])
          if (a.cap > 0) min_h = std::min(min_h, height[a.to] + 1);
        height[v] = min_h;
        cursor[v] = 0;
        if (min_h >= 2 * n) break;
        continue;
      }
      auto& a = net.adj[v][cursor[v]];
      if (a.cap > 0 && height[v] == height[a.to] + 1) {
        int64_t amt = std::min(excess[v], a.cap);
        bool was_idle = (excess[a.to] == 0);
        a.cap -= amt;
        net.adj[a.to][a.rev].cap += amt;
        excess[v] -= amt;
        excess[a.to] += amt;
        if (was_idle && a.to != net.s && a.to != net.t) active.push_back(a.to);
      } else {
        ++cursor[v];
      }
    }
  }
  return excess[net.t];
}

SlowTrimReport slow_trim(const Graph& g, const std::vector<NodeId>& a, Phi phi) {
  SlowTrimReport rep;
  std::vector<NodeId> current = a;
  for (int round = 1;; ++round) {
    InducedGraph h = induce_with_loops(g, current);
    std::vector<int64_t> delta(h.graph.node_count(), 0), sink(h.graph.node_count());
    for (EdgeId e = 0; e < h.graph.edge_count(); ++e)
      if (h.boundary_loop[e]) delta[h.graph.endpoints(e).first] += 2 * phi.q;
    for (NodeId v = 0; v < h.graph.node_count(); ++v) sink[v] = phi.p * h.graph.degree(v);
    MaxFlowReport flow = exact_flow_feasible(h.graph, delta, sink, 2 * phi.q);
    if (round == 1) rep.round1 = flow;
    rep.rounds = round;
    rep.final_round = flow;
    if (flow.feasible) {
      rep.a_prime = current;
      return rep;
    }
    EXPDEC_CHECK(round <= 2, "slow trimming must finish within two rounds");
    std::vector<char> cut_side(h.graph.node_count(), 0);
    for (NodeId v : flow.mincut_side) cut_side[v] = 1;
    std::vector<NodeId> next;
    for (NodeId v = 0; v < h.graph.node_count(); ++v)
      if (!cut_side[v]) next.push_back(h.orig_node[v]);
    EXPDEC_CHECK(!next.empty(), "slow trimming removed all of A");
    current = next;
  }
}

std::vector<std::vector<NodeId>> decompose_exact(const Graph& g, Phi phi) {
  std::vector<std::vector<NodeId>> clusters;
  for (const auto& comp : connected_components(g)) {
    if (comp.size() == 1) {
      clusters.push_back(comp);
      continue;
    }
    InducedGraph h = induce_with_loops(g, comp);
    ExactCutReport best = exact_min_conductance(h.graph);
    if (best.value >= phi.as_rat()) {
      clusters.push_back(comp);
      continue;
    }
    std::vector<char> in(h.graph.node_count(), 0);
    for (NodeId v : best.best_side) in[v] = 1;
    std::vector<NodeId> side, rest;
    for (NodeId v = 0; v < h.graph.node_count(); ++v)
      (in[v] ? side : rest).push_back(v);
    for (const std::vector<NodeId>& part : {side, rest}) {
      InducedGraph sub = induce_with_loops(h.graph, part);
      for (auto& cluster : decompose_exact(sub.graph, phi)) {
        std::vector<NodeId> orig;
        for (NodeId v : cluster) orig.push_back(h.orig_node[sub.orig_node[v]]);
        std::sort(orig.begin(), orig.end());
        clusters.push_back(std::move(orig));
      }
    }
  }
  std::sort(clusters.begin(), clusters.end());
  return clusters;
}

DenseFlowTracker::DenseFlowTracker(int m) : m_(m), f_(static_cast<size_t>(m) * m, 0.0) {
  EXPDEC_REQUIRE(m <= 512, "dense flow matrix limited to 512 split nodes");
  for (int i = 0; i < m; ++i) f_[static_cast<size_t>(i) * m_ + i] = 1.0;
}

void DenseFlowTracker::apply_matching(const std::vector<std::pair<int, int>>& pairs) {
  for (auto [a, b] : pairs) {
    double* ra = &f_[static_cast<size_t>(a) * m_];
    double* rb = &f_[static_cast<size_t>(b) * m_];
    for (int j = 0; j < m_; ++j) {
      double avg = 0.5 * (ra[j] + rb[j]);
      ra[j] = avg;
      rb[j] = avg;
    }
  }
}

double DenseFlowTracker::psi(const std::vector<char>& live) const {
  int count = 0;
  for (int i = 0; i < m_; ++i)
    if (live[i]) ++count;
  if (count == 0) return 0.0;
  // Σ||F_i||² − ||Σ F_i||²/n: exact in floating point while the entries are
  // dyadic (so ψ(0) = m−1 exactly); the cancellation noise near convergence
  // sits far below the 1/(16m²) threshold.
  std::vector<double> colsum(m_, 0.0);
  double sq = 0.0;
  for (int i = 0; i < m_; ++i) {
    if (!live[i]) continue;
    const double* row = &f_[static_cast<size_t>(i) * m_];
    for (int j = 0; j < m_; ++j) {
      sq += row[j] * row[j];
      colsum[j] += row[j];
    }
  }
  double mean_sq = 0.0;
  for (int j = 0; j < m_; ++j) mean_sq += colsum[j] * colsum[j];
  double psi = sq - mean_sq / count;
  return psi < 0 ? 0.0 : psi;
}

}  // namespace oracle
}  // namespace expdec

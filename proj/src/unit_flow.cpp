#include "expdec/unit_flow.hpp"

#include <algorithm>
#include <cmath>

namespace expdec {

FlowProblem deg_sink_problem(const Graph& g, Phi phi, int height) {
  FlowProblem p;
  p.graph = &g;
  p.source.assign(g.node_count(), 0);
  p.sink_cap.resize(g.node_count());
  p.excess_cap.resize(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    p.sink_cap[v] = phi.p * g.degree(v);
    p.excess_cap[v] = phi.p * g.degree(v);
  }
  p.arc_cap = 2 * phi.q;
  p.height = height;
  return p;
}

int trimming_height(int64_t edge_count, Phi phi) {
  double m = static_cast<double>(std::max<int64_t>(edge_count, 1));
  double h = std::ceil(40.0 * std::log(2.0 * m) * static_cast<double>(phi.q) /
                       static_cast<double>(phi.p));
  EXPDEC_REQUIRE(h <= 2e6, "phi too small for this graph: label bound " +
                               std::to_string(static_cast<int64_t>(h)) + " exceeds desk scale");
  return std::max(1, static_cast<int>(h));
}

UnitFlowState::UnitFlowState(FlowProblem problem) : prob_(std::move(problem)) {
  const Graph& g = *prob_.graph;
  int n = g.node_count();
  EXPDEC_REQUIRE(prob_.height >= 1, "label bound must be positive");
  EXPDEC_REQUIRE(static_cast<int>(prob_.source.size()) == n &&
                     static_cast<int>(prob_.sink_cap.size()) == n &&
                     static_cast<int>(prob_.excess_cap.size()) == n,
                 "flow problem arrays must match the graph");
  delta_ = prob_.source;
  mass_ = delta_;
  label_.assign(n, 0);
  flow_.assign(g.edge_count(), 0);
  node_alive_.assign(n, 1);
  edge_alive_.assign(g.edge_count(), 1);
  cursor_.assign(n, 0);
  bucket_head_.assign(prob_.height + 1, -1);
  queue_next_.assign(n, -1);
  queue_prev_.assign(n, -1);
  queued_.assign(n, 0);
  live_edges_ = g.edge_count();
  for (NodeId v = 0; v < n; ++v) {
    delta_live_ += delta_[v];
    refresh_queue_membership(v);
  }
}

int64_t UnitFlowState::flow_from(EdgeId e, NodeId x) const {
  auto [a, b] = prob_.graph->endpoints(e);
  if (x == a) return flow_[e];
  EXPDEC_CHECK(x == b, "flow_from: node not an endpoint");
  return -flow_[e];
}

int64_t UnitFlowState::excess(NodeId v) const {
  return std::max<int64_t>(0, mass_[v] - prob_.sink_cap[v]);
}

int64_t UnitFlowState::absorbed(NodeId v) const {
  return std::min<int64_t>(mass_[v], prob_.sink_cap[v]);
}

int64_t UnitFlowState::total_excess() const {
  int64_t total = 0;
  for (NodeId v = 0; v < prob_.graph->node_count(); ++v)
    if (node_alive_[v]) total += excess(v);
  return total;
}

std::vector<NodeId> UnitFlowState::alive_nodes() const {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < prob_.graph->node_count(); ++v)
    if (node_alive_[v]) out.push_back(v);
  return out;
}

void UnitFlowState::bucket_insert(NodeId v) {
  int l = label_[v];
  queue_next_[v] = bucket_head_[l];
  queue_prev_[v] = -1;
  if (bucket_head_[l] >= 0) queue_prev_[bucket_head_[l]] = v;
  bucket_head_[l] = v;
  queued_[v] = 1;
  lowest_ = std::min(lowest_, l);
}

void UnitFlowState::bucket_erase(NodeId v) {
  int l = label_[v];
  if (queue_prev_[v] >= 0)
    queue_next_[queue_prev_[v]] = queue_next_[v];
  else
    bucket_head_[l] = queue_next_[v];
  if (queue_next_[v] >= 0) queue_prev_[queue_next_[v]] = queue_prev_[v];
  queue_next_[v] = queue_prev_[v] = -1;
  queued_[v] = 0;
}

void UnitFlowState::refresh_queue_membership(NodeId v) {
  bool active = node_alive_[v] && label_[v] < prob_.height && excess(v) > 0;
  if (active && !queued_[v]) bucket_insert(v);
  if (!active && queued_[v]) bucket_erase(v);
}

void UnitFlowState::add_source(NodeId v, int64_t amount) {
  EXPDEC_REQUIRE(node_alive_[v], "add_source on a removed node");
  EXPDEC_REQUIRE(amount >= 0, "negative source");
  delta_[v] += amount;
  mass_[v] += amount;
  delta_live_ += amount;
  refresh_queue_membership(v);
}

bool UnitFlowState::push_relabel(NodeId v) {
  const Graph& g = *prob_.graph;
  const auto& arcs = g.arcs(v);
  int deg = static_cast<int>(arcs.size());
  for (int& i = cursor_[v]; i < deg; ++i) {
    ++work_.scans;
    const auto& a = arcs[i];
    EdgeId e = a.edge;
    NodeId u = a.to;
    if (!edge_alive_[e] || u == v) continue;
    if (label_[v] != label_[u] + 1) continue;
    int64_t residual = prob_.arc_cap - flow_from(e, v);
    if (residual <= 0) continue;
    // Lowest-label discipline guarantees the receiver carries no excess.
    EXPDEC_CHECK(excess(u) == 0, "push receiver has excess");
    int64_t amount =
        std::min({excess(v), residual, prob_.excess_cap[u] - excess(u)});
    EXPDEC_CHECK(amount >= 1, "push of zero units");
    auto [ea, eb] = g.endpoints(e);
    flow_[e] += (v == ea) ? amount : -amount;
    mass_[v] -= amount;
    mass_[u] += amount;
    ++work_.pushes;
    refresh_queue_membership(u);
    refresh_queue_membership(v);
    return true;
  }
  // No admissible arc: relabel and rescan from the first arc.
  bucket_erase(v);
  ++label_[v];
  ++work_.relabels;
  cursor_[v] = 0;
  if (label_[v] < prob_.height) bucket_insert(v);
  return false;
}

FlowResult UnitFlowState::run() {
  if (prob_.mass_bound > 0)
    EXPDEC_REQUIRE(delta_live_ <= prob_.mass_bound,
                   "total source mass exceeds the admissible bound");
  EXPDEC_CHECK(check_valid_state(*this), "unit-flow started from an invalid state");
  while (true) {
    while (lowest_ < prob_.height && bucket_head_[lowest_] < 0) ++lowest_;
    if (lowest_ >= prob_.height) break;
    NodeId v = bucket_head_[lowest_];
    push_relabel(v);
    if (debug_validate_)
      EXPDEC_CHECK(check_valid_state(*this), "state invalid after push/relabel");
  }
  EXPDEC_CHECK(check_valid_solution(*this), "termination state is not a valid solution");
  if (total_excess() == 0) {
    FlowResult r;
    r.feasible = true;
    return r;
  }
  return sweep_level_cut();
}

FlowResult UnitFlowState::sweep_level_cut() {
  const Graph& g = *prob_.graph;
  int h = prob_.height;
  std::vector<std::vector<NodeId>> at_level(h + 1);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (!node_alive_[v]) continue;
    EXPDEC_CHECK(excess(v) == 0 || label_[v] == h, "excess below the top label");
    if (label_[v] >= 1) at_level[label_[v]].push_back(v);
  }
  double ln2m = std::log(2.0 * static_cast<double>(std::max<int64_t>(live_edges_, 1)));
  int64_t vol = 0;
  for (int i = h; i >= 1; --i) {
    int64_t z1 = 0;
    for (NodeId v : at_level[i]) {
      vol += g.degree(v);
      for (const auto& a : g.arcs(v)) {
        if (!edge_alive_[a.edge] || a.to == v) continue;
        if (label_[a.to] == i - 1) ++z1;
      }
    }
    if (static_cast<double>(z1) * h <= 5.0 * static_cast<double>(vol) * ln2m) {
      FlowResult r;
      r.feasible = false;
      r.cut_level = i;
      r.type1_boundary = z1;
      r.cut_volume = vol;
      for (int j = i; j <= h; ++j)
        for (NodeId v : at_level[j]) r.level_cut.push_back(v);
      std::sort(r.level_cut.begin(), r.level_cut.end());
      EXPDEC_CHECK(!r.level_cut.empty(), "empty level cut");
      return r;
    }
  }
  throw ContractError("level-cut sweep found no eligible level");
}

CutRemoval UnitFlowState::remove_level_cut(const std::vector<NodeId>& cut,
                                           int64_t source_per_edge) {
  const Graph& g = *prob_.graph;
  CutRemoval acct;
  for (NodeId v : cut) {
    EXPDEC_CHECK(node_alive_[v], "removing a dead node");
    acct.destroyed_mass += mass_[v];
    acct.removed_volume += g.degree(v);
    delta_live_ -= delta_[v];
  }
  for (NodeId v : cut) {
    node_alive_[v] = 0;
    if (queued_[v]) bucket_erase(v);
  }
  for (NodeId v : cut) {
    for (const auto& a : g.arcs(v)) {
      EdgeId e = a.edge;
      if (!edge_alive_[e]) continue;
      edge_alive_[e] = 0;
      NodeId u = a.to;
      if (u == v || !node_alive_[u]) {
        // Internal edge or self-loop of the removed set: gone from G{A_{t+1}}.
        --live_edges_;
        flow_[e] = 0;
        continue;
      }
      // Cut edge: it becomes a self-loop at u in G{A_{t+1}} (degree and edge
      // count are preserved) and a source of source_per_edge units.
      int64_t into_u = flow_from(e, v);
      mass_[u] -= into_u;
      flow_[e] = 0;
      delta_[u] += source_per_edge;
      mass_[u] += source_per_edge;
      delta_live_ += source_per_edge;
      acct.new_mass += source_per_edge - into_u;
      acct.source_added += source_per_edge;
      ++acct.cut_edges;
      EXPDEC_CHECK(mass_[u] >= 0, "restriction produced negative mass");
      refresh_queue_membership(u);
    }
  }
  return acct;
}

namespace {

bool valid_state_impl(const FlowProblem& p, const std::vector<int64_t>& delta,
                      const std::vector<int64_t>& flow, const std::vector<int>& label,
                      const std::vector<char>* node_alive, const std::vector<char>* edge_alive,
                      const std::vector<int64_t>* expect_mass) {
  const Graph& g = *p.graph;
  std::vector<int64_t> m(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) m[v] = delta[v];
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    auto [a, b] = g.endpoints(e);
    if (edge_alive && !(*edge_alive)[e]) {
      if (flow[e] != 0) return false;
      continue;
    }
    if (a == b) {
      if (flow[e] != 0) return false;  // loops carry no arcs
      continue;
    }
    if (std::llabs(flow[e]) > p.arc_cap) return false;
    m[a] -= flow[e];
    m[b] += flow[e];
    // Invariant 1: a steep downhill arc is saturated.
    if (label[a] > label[b] + 1 && flow[e] != p.arc_cap) return false;
    if (label[b] > label[a] + 1 && -flow[e] != p.arc_cap) return false;
  }
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (node_alive && !(*node_alive)[v]) continue;
    if (expect_mass && m[v] != (*expect_mass)[v]) return false;  // bookkeeping integrity
    if (m[v] < 0) return false;                                  // net outflow <= Δ
    if (label[v] < 0 || label[v] > p.height) return false;
    // Invariant 2: a labeled node's sink is saturated.
    if (label[v] >= 1 && m[v] < p.sink_cap[v]) return false;
  }
  return true;
}

bool valid_solution_impl(const FlowProblem& p, const std::vector<int64_t>& delta,
                         const std::vector<int64_t>& flow, const std::vector<int>& label,
                         const std::vector<char>* node_alive) {
  const Graph& g = *p.graph;
  std::vector<int64_t> m(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) m[v] = delta[v];
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    auto [a, b] = g.endpoints(e);
    if (a == b) continue;
    m[a] -= flow[e];
    m[b] += flow[e];
  }
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (node_alive && !(*node_alive)[v]) continue;
    // Invariant 3: below the top label there is no excess.
    if (label[v] < p.height && m[v] > p.sink_cap[v]) return false;
  }
  return true;
}

}  // namespace

bool check_valid_state(const UnitFlowState& s) {
  return valid_state_impl(s.prob_, s.delta_, s.flow_, s.label_, &s.node_alive_, &s.edge_alive_,
                          &s.mass_);
}

bool check_valid_solution(const UnitFlowState& s) {
  return check_valid_state(s) &&
         valid_solution_impl(s.prob_, s.delta_, s.flow_, s.label_, &s.node_alive_);
}

bool check_valid_state(const FlowProblem& p, const std::vector<int64_t>& flow,
                       const std::vector<int>& label) {
  return valid_state_impl(p, p.source, flow, label, nullptr, nullptr, nullptr);
}

bool check_valid_solution(const FlowProblem& p, const std::vector<int64_t>& flow,
                          const std::vector<int>& label) {
  return check_valid_state(p, flow, label) &&
         valid_solution_impl(p, p.source, flow, label, nullptr);
}

}  // namespace expdec

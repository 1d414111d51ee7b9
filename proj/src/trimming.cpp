#include "expdec/trimming.hpp"

#include <algorithm>

namespace expdec {

CutRemoval advance_round(UnitFlowState& state, const std::vector<NodeId>& level_cut, Phi phi) {
  CutRemoval removal = state.remove_level_cut(level_cut, 2 * phi.q);
  // Two-for-one charging, exact in scaled units: at most vol(S)/2 new mass,
  // at least vol(S) destroyed.
  EXPDEC_CHECK(2 * removal.new_mass <= phi.p * removal.removed_volume,
               "new mass exceeds half the removed volume");
  EXPDEC_CHECK(removal.destroyed_mass >= phi.p * removal.removed_volume,
               "destroyed mass below the removed volume");
  EXPDEC_CHECK(check_valid_state(state), "restricted state is not valid");
  return removal;
}

TrimReport trim(const Graph& g, const std::vector<NodeId>& a, Phi phi, const TrimOptions& opt) {
  EXPDEC_REQUIRE(!a.empty(), "trim of an empty set");
  InducedGraph h = induce_with_loops(g, a);
  TrimReport rep;
  rep.boundary_before = h.boundary_edges;
  rep.vol_before = h.graph.total_volume();
  // Entry precondition of the trimming theorem: |E(A,Ā)| <= φ·vol(A)/10.
  EXPDEC_REQUIRE(10 * phi.q * rep.boundary_before <= phi.p * rep.vol_before,
                 "trim precondition violated: boundary larger than phi*vol(A)/10");

  int64_t m_entry = h.graph.edge_count();
  rep.height = trimming_height(m_entry, phi);
  FlowProblem prob = deg_sink_problem(h.graph, phi, rep.height);
  for (EdgeId e = 0; e < h.graph.edge_count(); ++e)
    if (h.boundary_loop[e]) prob.source[h.graph.endpoints(e).first] += 2 * phi.q;

  UnitFlowState state(std::move(prob));
  state.set_debug_validate(opt.debug_validate);
  rep.delta1 = state.live_source_total();
  EXPDEC_CHECK(rep.delta1 == 2 * phi.q * rep.boundary_before, "initial mass mismatch");
  rep.delta_total = rep.delta1;

  while (true) {
    ++rep.rounds;
    state.set_mass_bound(3 * phi.p * state.live_edge_count() / 2);
    FlowResult res = state.run();
    if (res.feasible) break;
    CutRemoval removal = advance_round(state, res.level_cut, phi);
    rep.delta_total += removal.new_mass;
    rep.destroyed_total += removal.destroyed_mass;
    rep.removed_volume += removal.removed_volume;
    if (opt.collect_round_stats) {
      TrimRoundStats rs;
      rs.level = res.cut_level;
      rs.cut_volume = removal.removed_volume;
      rs.cut_edges = removal.cut_edges;
      rs.type1_boundary = res.type1_boundary;
      rs.new_mass = removal.new_mass;
      rs.destroyed_mass = removal.destroyed_mass;
      rep.round_stats.push_back(rs);
    }
    // Cumulative budget: created mass never exceeds twice the initial mass,
    // and removed volume stays under the created mass (scaled).
    EXPDEC_CHECK(rep.delta_total <= 2 * rep.delta1, "mass budget exceeded");
    EXPDEC_CHECK(phi.p * rep.removed_volume <= rep.delta_total,
                 "removed volume above the created mass");
    EXPDEC_CHECK(state.live_source_total() <= rep.delta_total,
                 "live sources above the created mass");
    if (state.alive_nodes().empty()) {
      // Only reachable when A was not a nearly expander; distinguished
      // failure instead of a guess.
      rep.failed = true;
      rep.work = state.work().total();
      return rep;
    }
  }

  rep.work = state.work().total();
  EXPDEC_CHECK(rep.work <= kWorkConstant * std::max<int64_t>(rep.delta_total, 1) * rep.height,
               "work exceeded the amortized bound");

  std::vector<char> in_aprime(g.node_count(), 0);
  for (NodeId v : state.alive_nodes()) {
    rep.a_prime.push_back(h.orig_node[v]);
    in_aprime[h.orig_node[v]] = 1;
  }
  std::sort(rep.a_prime.begin(), rep.a_prime.end());
  rep.vol_after = g.volume(rep.a_prime);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.endpoints(e);
    if (u != v && in_aprime[u] != in_aprime[v]) ++rep.boundary_after;
  }

  // Theorem postconditions, exact in scaled units.
  EXPDEC_CHECK(phi.p * rep.vol_after >= phi.p * rep.vol_before - 4 * phi.q * rep.boundary_before,
               "volume postcondition failed");
  EXPDEC_CHECK(rep.boundary_after <= 2 * rep.boundary_before, "boundary postcondition failed");
  EXPDEC_CHECK(2 * phi.q * rep.boundary_after <= rep.delta_total,
               "boundary sources above the created mass");
  return rep;
}

}  // namespace expdec

#include "expdec/pruning.hpp"

#include <algorithm>

namespace expdec {

Pruner::Pruner(const Graph& g, Phi phi)
    : g_(&g),
      phi_(phi),
      height_(trimming_height(g.edge_count(), phi)),
      budget_(phi.p * g.edge_count() / (10 * phi.q)),
      state_(deg_sink_problem(g, phi, trimming_height(g.edge_count(), phi))),
      deleted_(g.edge_count(), 0),
      in_p_(g.node_count(), 0) {}

int64_t Pruner::boundary_pruned() const {
  int64_t b = 0;
  for (EdgeId e = 0; e < g_->edge_count(); ++e) {
    if (deleted_[e]) continue;
    auto [u, v] = g_->endpoints(e);
    if (u != v && in_p_[u] != in_p_[v]) ++b;
  }
  return b;
}

PruneStep Pruner::delete_edge(NodeId u, NodeId v) {
  EXPDEC_REQUIRE(u >= 0 && v >= 0 && u < g_->node_count() && v < g_->node_count(),
                 "delete_edge endpoint out of range");
  EXPDEC_REQUIRE(deletions_ + 1 <= budget_,
                 "deletion budget exhausted: only " + std::to_string(budget_) +
                     " deletions are admissible (phi*m/10)");
  EdgeId target = -1;
  for (const auto& a : g_->arcs(u)) {
    if (a.to == v && !deleted_[a.edge]) {
      target = a.edge;
      break;
    }
  }
  EXPDEC_REQUIRE(target >= 0, "no undeleted edge between " + std::to_string(u) + " and " +
                                  std::to_string(v));
  deleted_[target] = 1;
  ++deletions_;

  // 4q units per endpoint still in A; a self-loop gets 4q once. Endpoints
  // already pruned would have their mass destroyed immediately, so none is
  // added for them.
  if (!in_p_[u]) {
    state_.add_source(u, 4 * phi_.q);
    delta_total_ += 4 * phi_.q;
  }
  if (v != u && !in_p_[v]) {
    state_.add_source(v, 4 * phi_.q);
    delta_total_ += 4 * phi_.q;
  }

  PruneStep step;
  step.index = deletions_;
  while (true) {
    ++step.rounds;
    state_.set_mass_bound(3 * phi_.p * state_.live_edge_count() / 2);
    FlowResult res = state_.run();
    if (res.feasible) break;
    CutRemoval removal = advance_round(state_, res.level_cut, phi_);
    delta_total_ += removal.new_mass;
    destroyed_total_ += removal.destroyed_mass;
    for (NodeId w : res.level_cut) {
      step.newly_pruned.push_back(w);
      in_p_[w] = 1;
      pruned_.push_back(w);
      vol_pruned_ += g_->degree(w);
    }
  }
  std::sort(step.newly_pruned.begin(), step.newly_pruned.end());
  std::sort(pruned_.begin(), pruned_.end());

  // Exact scaled restatements of the pruning bounds.
  EXPDEC_CHECK(delta_total_ <= 8 * phi_.q * deletions_, "pruning mass above 8q*i");
  EXPDEC_CHECK(phi_.p * vol_pruned_ <= delta_total_, "pruned volume above the created mass");
  step.vol_pruned = vol_pruned_;
  step.boundary_pruned = boundary_pruned();
  EXPDEC_CHECK(2 * phi_.q * step.boundary_pruned <= delta_total_,
               "pruned boundary above the created mass");
  EXPDEC_CHECK(step.boundary_pruned <= 4 * deletions_, "pruned boundary above 4i");
  EXPDEC_CHECK(work() <= kWorkConstant * std::max<int64_t>(delta_total_, 1) * height_,
               "pruning work exceeded the amortized bound");
  return step;
}

}  // namespace expdec

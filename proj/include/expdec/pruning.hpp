#pragma once

#include <vector>

#include "expdec/graph.hpp"
#include "expdec/trimming.hpp"
#include "expdec/unit_flow.hpp"

namespace expdec {

struct PruneStep {
  int64_t index = 0;                  // i, deletions so far
  std::vector<NodeId> newly_pruned;   // added to P by this deletion
  int64_t vol_pruned = 0;             // vol(P_i) in the original degrees
  int64_t boundary_pruned = 0;        // |E_{G_i}(P_i, V∖P_i)|, deleted edges excluded
  int rounds = 0;
};

// Online expander pruning: G must be a φ expander (trusted; oracle-checked
// in tests). Supports up to ⌊φ·m/10⌋ deletions; each deletion places 4q
// units on its surviving endpoints and warm-starts the preflow on G{A}
// (the flow network keeps deleted edges; only the sources change).
// Strictly sequential per stream.
class Pruner {
 public:
  Pruner(const Graph& g, Phi phi);

  PruneStep delete_edge(NodeId u, NodeId v);

  const Graph& graph() const { return *g_; }
  Phi phi() const { return phi_; }
  const std::vector<NodeId>& pruned() const { return pruned_; }
  bool is_pruned(NodeId v) const { return in_p_[v] != 0; }
  const std::vector<char>& deleted_edges() const { return deleted_; }
  int64_t deletions() const { return deletions_; }
  int64_t budget() const { return budget_; }
  int64_t delta_total() const { return delta_total_; }
  int64_t destroyed_total() const { return destroyed_total_; }
  int64_t work() const { return state_.work().total(); }
  int height() const { return height_; }
  int64_t vol_pruned() const { return vol_pruned_; }
  int64_t boundary_pruned() const;
  void set_debug_validate(bool on) { state_.set_debug_validate(on); }

 private:
  const Graph* g_;
  Phi phi_;
  int height_;
  int64_t budget_;
  UnitFlowState state_;
  std::vector<char> deleted_;
  std::vector<NodeId> pruned_;
  std::vector<char> in_p_;
  int64_t deletions_ = 0;
  int64_t delta_total_ = 0;
  int64_t destroyed_total_ = 0;
  int64_t vol_pruned_ = 0;
};

}  // namespace expdec

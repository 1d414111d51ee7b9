#pragma once

#include <vector>

#include "expdec/graph.hpp"
#include "expdec/unit_flow.hpp"

namespace expdec {

// One warm-start step between rounds: removes the level cut from the live
// graph, restricts (f, l), and seeds 2q units on every new cut edge.
// Asserts the exact two-for-one mass charging (2·new <= p·vol(S) and
// destroyed >= p·vol(S)) and that the restricted state stays valid.
CutRemoval advance_round(UnitFlowState& state, const std::vector<NodeId>& level_cut, Phi phi);

struct TrimRoundStats {
  int level = 0;
  int64_t cut_volume = 0;
  int64_t cut_edges = 0;
  int64_t type1_boundary = 0;
  int64_t new_mass = 0;
  int64_t destroyed_mass = 0;
};

struct TrimReport {
  std::vector<NodeId> a_prime;  // node ids of g; empty iff failed
  bool failed = false;          // nearly-expander assumption broke: A exhausted
  int rounds = 0;
  int height = 0;
  int64_t delta1 = 0;        // 2q·|E(A,Ā)|
  int64_t delta_total = 0;   // Δ₁ plus all new mass, scaled
  int64_t destroyed_total = 0;
  int64_t removed_volume = 0;
  int64_t boundary_before = 0;  // |E(A,Ā)|
  int64_t boundary_after = 0;   // |E(A',Ā')|
  int64_t vol_before = 0;
  int64_t vol_after = 0;
  int64_t work = 0;
  std::vector<TrimRoundStats> round_stats;
};

struct TrimOptions {
  bool debug_validate = false;
  bool collect_round_stats = true;
};

// Finds A' ⊆ A with a feasible boundary-source routing on G{A'}, which
// certifies Φ_{G{A'}} >= φ/6 whenever A is a nearly φ expander in g.
// Requires |E(A, V\A)| <= φ·vol(A)/10 (exact, scaled). On success the
// report carries the exact postconditions
//   vol(A') >= vol(A) − 4|E(A,Ā)|/φ  and  |E(A',Ā')| <= 2|E(A,Ā)|,
// both re-checked here as scaled integer inequalities.
TrimReport trim(const Graph& g, const std::vector<NodeId>& a, Phi phi,
                const TrimOptions& opt = {});

}  // namespace expdec

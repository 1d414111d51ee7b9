#pragma once

#include <random>
#include <utility>
#include <vector>

#include "expdec/common.hpp"
#include "expdec/graph.hpp"
#include "expdec/unit_flow.hpp"

namespace expdec {

enum class CutMatchCase { Expander, BalancedCut, NearExpander };

const char* to_string(CutMatchCase c);

struct CutMatchConfig {
  uint64_t seed = 1;
  double c_round_budget = 16.0;  // T = ceil(c_round_budget * (log2 m)^2)
  int64_t c_phi_guard = 1;      // requires phi < 1/(c_phi_guard * ceil(log2 m)^2)
  bool track_psi = false;       // dense flow-matrix tracking; needs m <= 512
  bool debug_validate = false;
};

struct CutMatchRoundStats {
  bool flow_feasible = false;
  int64_t matched = 0;
  int64_t removed_nodes = 0;
  int64_t removed_volume = 0;
  Rat cut_conductance{0, 1};      // in G_E{A} before the removal
  double psi_before_removal = -1;  // dense mode only
  double psi = -1;
};

struct CutMatchReport {
  CutMatchCase kase = CutMatchCase::Expander;
  std::vector<NodeId> a_side;  // nodes of g
  std::vector<NodeId> r_side;  // complement in g
  std::vector<NodeId> r_sub;   // removed nodes of G_E (split nodes included)
  int rounds = 0;
  int round_budget = 0;  // T
  int64_t edge_cap = 0;  // U
  int flow_height = 0;   // h for the matching flows
  Rat threshold{0, 1};   // 1/c = phi*T
  int64_t vol_r_sub = 0;              // vol of R in G_E
  Rat r_conductance_sub{0, 1};        // Φ_{G_E}(R) when R nonempty
  bool converged_early = false;       // projections collapsed to a point
  // Flow cuts above the 1/c threshold are not eligible for removal; with
  // the default round budget the construction margin keeps this at zero.
  int64_t skipped_removals = 0;
  int64_t work = 0;
  std::vector<CutMatchRoundStats> round_stats;
  std::vector<double> psi_trace;                          // dense mode
  std::vector<std::vector<std::pair<int, int>>> matchings;  // split-edge id pairs
};

// u = F_t r applied right-to-left without materializing F: each round's
// partial matching averages the two matched coordinates, identity on the
// rest. r is indexed by split-edge id.
std::vector<double> project_flow_vectors(
    const std::vector<std::vector<std::pair<int, int>>>& matchings, std::vector<double> r);

struct BisectionResult {
  std::vector<int> sources;  // A^l, split-edge ids
  std::vector<int> targets;  // A^r
  double eta = 0;
  double mu = 0;
  bool degenerate = false;  // no usable source side (all projections equal)
};

// Sorted-projection recipe: the side of the mean carrying at least half of
// Σ(u−μ)² supplies up to n/8 extreme sources (each kept only if
// (u−η)² >= (u−μ)²/9); the opposite n/2 extreme nodes are the targets and
// η is the target side's inner boundary value. Requires n >= 8.
BisectionResult bisect_projections(const std::vector<int>& live_splits,
                                   const std::vector<double>& u);

// Checks the four separation properties of the bisection (test surface).
bool bisection_properties_hold(const BisectionResult& b, const std::vector<int>& live_splits,
                               const std::vector<double>& u);

struct MatchingRoute {
  std::vector<std::pair<int, int>> matching;  // (source, target) split-edge ids
  bool feasible = false;
  std::vector<NodeId> cut;  // normalized G_E node ids; empty when feasible
  FlowResult flow;
  int64_t work = 0;
};

// Unit sources on A^l, unit sinks on A^r, uniform capacity edge_cap,
// bounded labels. Either routes everything (perfect matching of A^l) or
// returns a normalized level cut; the integral matching is recovered from
// the preflow by path stripping with on-the-fly cycle cancellation.
MatchingRoute route_matching(const SubdivisionGraph& sub, const std::vector<char>& alive,
                             const std::vector<int>& a_l, const std::vector<int>& a_r,
                             int64_t edge_cap, int flow_height, bool debug_validate = false);

// The full game on the subdivision graph of g. Ends in one of the three
// cases; every removed piece satisfied Φ_{G_E{A}}(S) <= 1/c exactly at
// removal time. Requires at least 16 edges and 8 split nodes (smaller
// inputs belong to the exact oracle) and phi below the guard threshold.
CutMatchReport cut_match(const Graph& g, Phi phi, const CutMatchConfig& cfg = {});

}  // namespace expdec

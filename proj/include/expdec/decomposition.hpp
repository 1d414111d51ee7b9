#pragma once

#include <string>
#include <vector>

#include "expdec/common.hpp"
#include "expdec/cut_matching.hpp"
#include "expdec/graph.hpp"

namespace expdec {

struct DecompositionConfig {
  uint64_t seed = 1;
  double c_round_budget = 16.0;  // forwarded to cut-matching
  int64_t c_phi_guard = 1;
  int64_t tiny_edge_floor = 16;  // components at or below go straight to the oracle
  int oracle_node_cap = 20;      // enumeration guard for the exact fallback
  int threads = 1;               // >1 enables parallel sibling dispatch
  bool debug_validate = false;
};

struct Cluster {
  std::vector<NodeId> nodes;
  std::string method;  // singleton | oracle | cutmatch | trim
  int depth = 0;
};

struct DecompositionResult {
  std::vector<Cluster> clusters;  // ordered by smallest node id
  int64_t inter_cluster_edges = 0;
  int max_depth = 0;
  int64_t work = 0;
  // Largest component volume seen at each recursion depth (volume-drop
  // diagnostic; the per-level constant is configuration, so this is logged,
  // not asserted).
  std::vector<int64_t> level_max_volume;
};

// Recursive driver: cut-matching certifies or splits each component; very
// unbalanced cuts are repaired by trimming so only the small side recurses.
// Every cluster was certified with Φ_{G{V_i}} >= φ/6 at creation.
DecompositionResult decompose(const Graph& g, Phi phi, const DecompositionConfig& cfg = {});

struct ChargeAudit {
  int64_t inter_cluster_edges = 0;
  int64_t recount = 0;  // recomputed independently from the partition
  double bound = 0;     // c_charge * phi * m * (log2 m)^3
  double realized_constant = 0;
  bool within = false;
};

ChargeAudit charge_audit(const DecompositionResult& result, const Graph& g, Phi phi,
                         double c_charge = 32.0);

}  // namespace expdec

#pragma once

#include <vector>

#include "expdec/common.hpp"
#include "expdec/graph.hpp"

namespace expdec {

// Scaled integer flow instance. Self-loops carry no arcs but count toward
// degrees (and hence toward deg-proportional sink capacities).
struct FlowProblem {
  const Graph* graph = nullptr;
  std::vector<int64_t> source;      // initial mass Δ(v)
  std::vector<int64_t> sink_cap;    // T(v)
  std::vector<int64_t> excess_cap;  // receiver room per push (p·deg or deg)
  int64_t arc_cap = 0;              // uniform undirected edge capacity
  int height = 1;                   // label bound h
  int64_t mass_bound = 0;           // if >0, run() requires Σ Δ(alive) <= bound
};

// T(v) = p·deg(v), edge capacity 2q, receiver room p·deg(v); sources are
// seeded by the caller. h must come from trimming_height or the caller.
FlowProblem deg_sink_problem(const Graph& g, Phi phi, int height);

// h = ⌈40·ln(2m)/φ⌉ with m = edge count at entry. Refuses heights beyond
// desk scale (bucket arrays are allocated per label).
int trimming_height(int64_t edge_count, Phi phi);

struct FlowResult {
  bool feasible = false;
  std::vector<NodeId> level_cut;  // nonempty iff !feasible
  int cut_level = 0;              // the k of S = {v : l(v) >= k}
  int64_t type1_boundary = 0;     // edges across the cut with label gap exactly 1
  int64_t cut_volume = 0;
};

struct WorkCounters {
  int64_t pushes = 0;
  int64_t relabels = 0;
  int64_t scans = 0;
  int64_t total() const { return pushes + relabels + scans; }
};

// Accounting of one advance between rounds (restriction to A_{t+1} plus the
// 2q sources placed on the new cut edges).
struct CutRemoval {
  int64_t destroyed_mass = 0;   // Σ m(v) over removed nodes
  int64_t new_mass = 0;         // Σ (source_per_edge − f(v,u)) over cut edges
  int64_t source_added = 0;     // Σ source_per_edge over cut edges (Δ increment)
  int64_t cut_edges = 0;
  int64_t removed_volume = 0;
};

// Frozen constant for the amortized work bound: total push/relabel/scan
// operations across a warm-started run stay below kWorkConstant · Δ_total · h.
// Calibrated over the test fixture battery (observed max ratio ≈ 0.54).
inline constexpr int64_t kWorkConstant = 4;

// Bounded-label push-relabel preflow engine. Single-owner mutable state;
// run() is resumable: after mass is added or a level cut removed, calling
// run() again continues from the held G-valid state (labels, preflow and
// per-(node,label) arc cursors are kept).
class UnitFlowState {
 public:
  explicit UnitFlowState(FlowProblem problem);

  // Main loop (lowest-label discipline) until no active node remains, then
  // either reports feasibility or extracts a level cut by the downward
  // sweep on z1(i)·h <= 5·vol(S_i)·ln(2m).
  FlowResult run();

  // Δ(v) += amount (v alive); used for deletion mass in pruning.
  void add_source(NodeId v, int64_t amount);

  // Removes `cut` from the graph: restricts f and l to the survivors and
  // places source_per_edge units of fresh mass on the surviving endpoint
  // of every cut edge. Mass on removed nodes is destroyed.
  CutRemoval remove_level_cut(const std::vector<NodeId>& cut, int64_t source_per_edge);

  // live state ------------------------------------------------------------
  bool alive(NodeId v) const { return node_alive_[v] != 0; }
  int64_t delta(NodeId v) const { return delta_[v]; }
  int64_t mass(NodeId v) const { return mass_[v]; }
  int label(NodeId v) const { return label_[v]; }
  // Signed flow on edge e in the direction of its stored endpoints.
  int64_t flow(EdgeId e) const { return flow_[e]; }
  // f(x → y) for edge e = {x,y}.
  int64_t flow_from(EdgeId e, NodeId x) const;
  int64_t excess(NodeId v) const;
  int64_t absorbed(NodeId v) const;
  int64_t live_source_total() const { return delta_live_; }
  int64_t live_edge_count() const { return live_edges_; }  // loops of G{A_t} included
  int64_t total_excess() const;
  const FlowProblem& problem() const { return prob_; }
  const WorkCounters& work() const { return work_; }

  std::vector<NodeId> alive_nodes() const;

  // Re-checks the run() mass precondition target (trimming updates it as
  // the live graph shrinks).
  void set_mass_bound(int64_t bound) { prob_.mass_bound = bound; }

  // Runs check_valid_state after every push and relabel (tests only).
  void set_debug_validate(bool on) { debug_validate_ = on; }

 private:
  friend bool check_valid_state(const UnitFlowState& s);
  friend bool check_valid_solution(const UnitFlowState& s);

  void bucket_insert(NodeId v);
  void bucket_erase(NodeId v);
  void refresh_queue_membership(NodeId v);
  bool push_relabel(NodeId v);
  FlowResult sweep_level_cut();

  FlowProblem prob_;
  std::vector<int64_t> delta_;
  std::vector<int64_t> mass_;
  std::vector<int> label_;
  std::vector<int64_t> flow_;
  std::vector<char> node_alive_;
  std::vector<char> edge_alive_;
  std::vector<int> cursor_;

  std::vector<NodeId> bucket_head_;         // per label, -1 = empty
  std::vector<NodeId> queue_next_, queue_prev_;
  std::vector<char> queued_;
  int lowest_ = 0;

  int64_t delta_live_ = 0;
  int64_t live_edges_ = 0;
  WorkCounters work_;
  bool debug_validate_ = false;
};

// Invariants 1–2 plus preflow feasibility (|f| <= cap, net outflow <= Δ,
// labels within [0,h]). Pure predicate over the current state.
bool check_valid_state(const UnitFlowState& s);

// Valid state plus invariant 3: l(v) < h implies no excess at v.
bool check_valid_solution(const UnitFlowState& s);

// Raw-array forms of the same predicates (flow signed along each edge's
// stored endpoints), usable on hand-built tuples.
bool check_valid_state(const FlowProblem& p, const std::vector<int64_t>& flow,
                       const std::vector<int>& label);
bool check_valid_solution(const FlowProblem& p, const std::vector<int64_t>& flow,
                          const std::vector<int>& label);

}  // namespace expdec

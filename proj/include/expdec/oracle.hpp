#pragma once

#include <utility>
#include <vector>

#include "expdec/common.hpp"
#include "expdec/graph.hpp"

namespace expdec {
namespace oracle {

// Exhaustive verifiers for desk-scale cross-checking. Every certificate the
// fast paths produce is re-derivable here by brute force.

struct ExactCutReport {
  std::vector<NodeId> best_side;  // empty for a singleton graph
  Rat value{1, 1};
  int64_t enumerated = 0;
};

// Minimum conductance over all nontrivial cuts by 2^(n-1) enumeration with
// incremental cut/volume updates. Requires n <= 20; singleton reports 1.
ExactCutReport exact_min_conductance(const Graph& g);

// Is every S ⊆ A with vol(S) <= vol(A)/2 cut by at least φ·vol(S) edges of
// the whole graph? Enumeration over subsets of A; |A| <= 20.
bool exact_nearly_expander(const Graph& g, const std::vector<NodeId>& a, Phi phi);

// s–t max flow on the augmented network: super-source -> v with capacity
// Δ(v), v -> super-sink with capacity T(v), every non-loop edge with
// capacity arc_cap in each direction. Feasible iff the max flow equals |Δ|.
struct MaxFlowReport {
  bool feasible = false;
  int64_t value = 0;
  int64_t demand = 0;                   // |Δ(·)|
  std::vector<NodeId> mincut_side;      // graph nodes on the source side
  std::vector<int64_t> source_routed;   // flow on s->v
  std::vector<int64_t> sink_used;       // flow on v->t
  std::vector<int64_t> edge_flow;       // signed along stored endpoints
};

MaxFlowReport exact_flow_feasible(const Graph& g, const std::vector<int64_t>& delta,
                                  const std::vector<int64_t>& sink_cap, int64_t arc_cap);

// Independent second route: plain FIFO push-relabel max flow (no label
// bound) on the same augmented network; returns only the value.
int64_t push_relabel_max_flow_value(const Graph& g, const std::vector<int64_t>& delta,
                                    const std::vector<int64_t>& sink_cap, int64_t arc_cap);

// Trimming by exact max flow: terminates in at most two rounds, removing
// the max-flow min-cut once. Used only to cross-check the dynamic trimmer.
struct SlowTrimReport {
  std::vector<NodeId> a_prime;  // node ids of g
  int rounds = 0;
  MaxFlowReport round1;
  MaxFlowReport final_round;
};

SlowTrimReport slow_trim(const Graph& g, const std::vector<NodeId>& a, Phi phi);

// Exact recursive sparsest-cut-or-certify decomposition: certify the
// component when its conductance reaches φ, otherwise split along the
// minimum-conductance cut and recurse on both induced sides. Node counts
// must stay within the enumeration guard. Returns clusters over g's ids.
std::vector<std::vector<NodeId>> decompose_exact(const Graph& g, Phi phi);

// Dense row-stochastic flow matrix F_t = ((I+M_t)/2)···((I+M_1)/2) for the
// cut-matching potential; affordable for m <= 512.
class DenseFlowTracker {
 public:
  explicit DenseFlowTracker(int m);

  void apply_matching(const std::vector<std::pair<int, int>>& pairs);

  // ψ over the live split nodes: Σ ||F(x_e) − μ||².
  double psi(const std::vector<char>& live) const;

  double entry(int row, int col) const { return f_[static_cast<size_t>(row) * m_ + col]; }
  int size() const { return m_; }

 private:
  int m_;
  std::vector<double> f_;
};

}  // namespace oracle
}  // namespace expdec

// Acceptance suite: one test case per criterion, each printing a PASS line
// with its measured evidence. Everything is checked at the stated exactness;
// run via ctest or directly.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "expdec/cli_run.hpp"
#include "expdec/cut_matching.hpp"
#include "expdec/decomposition.hpp"
#include "expdec/edgelist_io.hpp"
#include "expdec/generators.hpp"
#include "expdec/oracle.hpp"
#include "expdec/pruning.hpp"
#include "expdec/trimming.hpp"
#include "../fixtures.hpp"

using namespace expdec;

namespace {

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

// Shared across criteria 2/3/4: realized work-vs-bound ratios.
double g_max_work_ratio = 0.0;

void note_work(int64_t work, int64_t delta_total, int height) {
  if (delta_total <= 0) return;
  double ratio = static_cast<double>(work) /
                 (static_cast<double>(delta_total) * static_cast<double>(height));
  g_max_work_ratio = std::max(g_max_work_ratio, ratio);
}

std::vector<std::pair<Graph, std::vector<NodeId>>> trimming_fixtures(Phi phi, int& attempted) {
  std::vector<std::pair<Graph, std::vector<NodeId>>> out;
  for (int k = 8; k <= 17; ++k) {
    for (int b = 1; b <= 8; ++b) {
      ++attempted;
      Graph g = fixtures::clique_with_triangle(k, b);
      std::vector<NodeId> a = fixtures::range_nodes(0, k + 3);
      if (10 * phi.q * g.cut_size(a) > phi.p * g.volume(a)) continue;
      if (!oracle::exact_nearly_expander(g, a, phi)) continue;
      out.emplace_back(std::move(g), std::move(a));
    }
  }
  // Clique cores with pendant strands: boundary made of pendant edges.
  for (int k = 6; k <= 16; ++k) {
    for (int pendants = 1; pendants <= 4; ++pendants) {
      ++attempted;
      Graph g(k + pendants);
      for (NodeId u = 0; u < k; ++u)
        for (NodeId v = u + 1; v < k; ++v) g.add_edge(u, v);
      for (int i = 0; i < pendants; ++i) g.add_edge(i % k, k + i);
      std::vector<NodeId> a = fixtures::range_nodes(0, k);
      if (10 * phi.q * g.cut_size(a) > phi.p * g.volume(a)) continue;
      if (!oracle::exact_nearly_expander(g, a, phi)) continue;
      out.emplace_back(std::move(g), std::move(a));
    }
  }
  // Random dense cores with sparse random satellites.
  std::mt19937_64 rng(0xacce5500u + static_cast<uint64_t>(phi.p * 1000 + phi.q));
  for (int trial = 0; trial < 40; ++trial) {
    ++attempted;
    int k = 8 + static_cast<int>(rng() % 9);
    int sat = 1 + static_cast<int>(rng() % 3);
    int64_t want = static_cast<int64_t>(k) * (k - 1) / 2;
    want = want * 3 / 4;
    Graph core = make_gnm(k, want, rng());
    Graph g(k + sat);
    for (EdgeId e = 0; e < core.edge_count(); ++e) {
      auto [u, v] = core.endpoints(e);
      g.add_edge(u, v);
    }
    for (int i = 0; i < sat; ++i) g.add_edge(static_cast<NodeId>(rng() % k), k + i);
    std::vector<NodeId> a = fixtures::range_nodes(0, k);
    if (10 * phi.q * g.cut_size(a) > phi.p * g.volume(a)) continue;
    if (!oracle::exact_nearly_expander(g, a, phi)) continue;
    out.emplace_back(std::move(g), std::move(a));
  }
  return out;
}

}  // namespace

TEST_CASE("criterion 1: unit-flow agrees with the exact max-flow oracle") {
  Timer timer;
  std::mt19937_64 rng(101);
  int instances = 0, feasible = 0, cuts = 0, attempts = 0;
  while ((instances < 600 || feasible < 100 || cuts < 100) && attempts < 6000) {
    ++attempts;
    int n = 2 + static_cast<int>(rng() % 6);
    Graph g = fixtures::random_connected(n, static_cast<int>(rng() % 7),
                                         static_cast<int>(rng() % 3), rng);
    Phi phi(1, 2 + static_cast<int>(rng() % 4));
    FlowProblem p = deg_sink_problem(g, phi, g.node_count() + 2);
    int64_t budget = 3 * phi.p * g.edge_count() / 2;
    if (budget == 0) continue;
    if (rng() % 2) {
      for (NodeId v = 0; v < g.node_count() && budget > 0; ++v) {
        int64_t amt = std::min<int64_t>(static_cast<int64_t>(rng() % 5), budget);
        p.source[v] = amt;
        budget -= amt;
      }
    } else {
      // Pile the budget onto a minimum-degree node: frequently beyond its
      // local routing capacity, exercising the level-cut branch.
      NodeId lowest = 0;
      for (NodeId v = 1; v < g.node_count(); ++v)
        if (g.degree(v) < g.degree(lowest)) lowest = v;
      p.source[lowest] = budget;
    }
    ++instances;
    auto want = oracle::exact_flow_feasible(g, p.source, p.sink_cap, p.arc_cap);
    int height = p.height;
    int64_t m = g.edge_count();
    UnitFlowState st(std::move(p));
    FlowResult res = st.run();
    REQUIRE(res.feasible == want.feasible);
    if (res.feasible) {
      ++feasible;
    } else {
      ++cuts;
      // lem:key case 2, recomputed from the final labels: type-1 boundary
      // edges of the returned level cut obey z1*h <= 5*vol(S)*ln(2m).
      int64_t z1 = 0, vol = 0;
      for (NodeId v = 0; v < g.node_count(); ++v)
        if (st.label(v) >= res.cut_level) vol += g.degree(v);
      for (EdgeId e = 0; e < m; ++e) {
        auto [u, v] = g.endpoints(e);
        if (u == v) continue;
        int hi = std::max(st.label(u), st.label(v));
        int lo = std::min(st.label(u), st.label(v));
        if (hi == res.cut_level && lo == res.cut_level - 1) ++z1;
        // Unsaturated cut arcs are never steeper than one level.
        if (hi >= res.cut_level && lo < res.cut_level && hi - lo > 1) {
          NodeId up = st.label(u) == hi ? u : v;
          REQUIRE(st.flow_from(e, up) == st.problem().arc_cap);
        }
      }
      REQUIRE(z1 == res.type1_boundary);
      REQUIRE(vol == res.cut_volume);
      REQUIRE(static_cast<double>(z1) * height <=
              5.0 * static_cast<double>(vol) * std::log(2.0 * static_cast<double>(m)));
    }
  }
  REQUIRE(instances >= 500);
  REQUIRE(feasible >= 100);
  REQUIRE(cuts >= 100);
  REQUIRE(timer.seconds() < 60.0);
  std::printf("[criterion 1] PASS  %d instances (%d feasible, %d level cuts), %.1fs\n",
              instances, feasible, cuts, timer.seconds());
}

TEST_CASE("criterion 2: trimming postconditions hold exactly on 200+ fixtures") {
  Timer timer;
  int attempted = 0, checked = 0;
  for (Phi phi : {Phi(1, 2), Phi(2, 5), Phi(1, 3), Phi(1, 4)}) {
    for (auto& [g, a] : trimming_fixtures(phi, attempted)) {
      TrimReport rep = trim(g, a, phi, {.debug_validate = false, .collect_round_stats = false});
      REQUIRE_FALSE(rep.failed);
      // (a) conductance certificate, exact.
      InducedGraph ind = induce_with_loops(g, rep.a_prime);
      REQUIRE(oracle::exact_min_conductance(ind.graph).value >= phi.sixth());
      // (b) volume loss bounded, exact scaled integers.
      REQUIRE(phi.p * rep.vol_after >=
              phi.p * rep.vol_before - 4 * phi.q * rep.boundary_before);
      // (c) boundary at most doubled.
      REQUIRE(rep.boundary_after <= 2 * rep.boundary_before);
      // Mass ledger for criterion 3.
      REQUIRE(rep.delta_total <= 2 * rep.delta1);
      REQUIRE(phi.p * rep.removed_volume <= rep.delta_total);
      REQUIRE(rep.work <= kWorkConstant * std::max<int64_t>(rep.delta_total, 1) * rep.height);
      note_work(rep.work, rep.delta_total, rep.height);
      ++checked;
    }
  }
  REQUIRE(checked >= 200);
  REQUIRE(timer.seconds() < 120.0);
  std::printf("[criterion 2] PASS  %d fixtures (of %d candidate shapes), %.1fs\n", checked,
              attempted, timer.seconds());
}

TEST_CASE("criterion 3: mass accounting and the frozen work constant") {
  Timer timer;
  // Trimming side: the scaled identities p*vol(∪S) <= Δ_total <= 2Δ₁ are
  // asserted inside trim() on every run and re-checked in criterion 2.
  // Pruning side: Δ_total <= 8q*i with the work bound, across a stream.
  Graph g = make_clique(16);
  Phi phi(1, 4);
  std::mt19937_64 rng(103);
  for (int stream = 0; stream < 40; ++stream) {
    Pruner pruner(g, phi);
    for (int64_t i = 0; i < pruner.budget(); ++i) {
      EdgeId e;
      do {
        e = static_cast<EdgeId>(rng() % g.edge_count());
      } while (pruner.deleted_edges()[e]);
      auto [u, v] = g.endpoints(e);
      PruneStep step = pruner.delete_edge(u, v);
      REQUIRE(pruner.delta_total() <= 8 * phi.q * step.index);
      REQUIRE(phi.p * step.vol_pruned <= pruner.delta_total());
      REQUIRE(pruner.work() <=
              kWorkConstant * std::max<int64_t>(pruner.delta_total(), 1) * pruner.height());
      note_work(pruner.work(), pruner.delta_total(), pruner.height());
    }
  }
  REQUIRE(g_max_work_ratio > 0.0);
  REQUIRE(g_max_work_ratio <= static_cast<double>(kWorkConstant));
  std::printf(
      "[criterion 3] PASS  exact ledgers held on every trim/prune run; "
      "max work/(Δ_total·h) = %.3f with frozen C = %lld, %.1fs\n",
      g_max_work_ratio, static_cast<long long>(kWorkConstant), timer.seconds());
}

TEST_CASE("criterion 4: pruning streams keep the theorem bounds exactly") {
  Timer timer;
  std::mt19937_64 rng(104);
  int prefixes_checked = 0, conductance_checks = 0;

  auto run_streams = [&](const Graph& g, Phi phi, int streams, bool oracle_phi) {
    for (int s = 0; s < streams; ++s) {
      Pruner pruner(g, phi);
      std::vector<NodeId> prev;
      for (int64_t i = 0; i < pruner.budget(); ++i) {
        EdgeId e;
        do {
          e = static_cast<EdgeId>(rng() % g.edge_count());
        } while (pruner.deleted_edges()[e]);
        auto [u, v] = g.endpoints(e);
        PruneStep step = pruner.delete_edge(u, v);
        ++prefixes_checked;
        REQUIRE(std::includes(pruner.pruned().begin(), pruner.pruned().end(), prev.begin(),
                              prev.end()));
        prev = pruner.pruned();
        // vol(P_i) <= 8i/phi and boundary <= 4i, exact scaled integers.
        REQUIRE(phi.p * step.vol_pruned <= 8 * phi.q * step.index);
        REQUIRE(step.boundary_pruned <= 4 * step.index);
        REQUIRE(pruner.delta_total() <= 8 * phi.q * step.index);
        if (oracle_phi) {
          Graph gi(g.node_count());
          for (EdgeId e2 = 0; e2 < g.edge_count(); ++e2) {
            if (pruner.deleted_edges()[e2]) continue;
            auto [a, b] = g.endpoints(e2);
            gi.add_edge(a, b);
          }
          std::vector<NodeId> rest;
          for (NodeId w = 0; w < g.node_count(); ++w)
            if (!pruner.is_pruned(w)) rest.push_back(w);
          REQUIRE_FALSE(rest.empty());
          InducedGraph ind = induce_with_loops(gi, rest);
          REQUIRE(oracle::exact_min_conductance(ind.graph).value >= phi.sixth());
          ++conductance_checks;
        }
      }
    }
  };

  // K16 at phi = 1/4: budget 3, all prefixes of 100 random streams; n = 16
  // is still within the enumeration oracle, so conductance is checked too.
  run_streams(make_clique(16), Phi(1, 4), 100, true);
  // hypercube(4) at phi = 1/4: phi*m/10 = 0.8, so the admissible stream is
  // empty; the initial state and the refusal path are the whole contract.
  {
    Graph h4 = make_hypercube(4);
    REQUIRE(oracle::exact_min_conductance(h4).value >= Rat(1, 4));
    Pruner pruner(h4, Phi(1, 4));
    REQUIRE(pruner.budget() == 0);
    REQUIRE(pruner.pruned().empty());
    REQUIRE(pruner.delta_total() == 0);
    CHECK_THROWS_AS(pruner.delete_edge(0, 1), ParamError);
  }
  // K12 at phi = 1/2 (n <= 12): the exact conductance check per prefix on
  // 100 random streams.
  run_streams(make_clique(12), Phi(1, 2), 100, true);

  REQUIRE(prefixes_checked >= 600);
  REQUIRE(conductance_checks >= 600);
  REQUIRE(timer.seconds() < 120.0);
  std::printf("[criterion 4] PASS  %d prefixes, %d exact conductance checks, %.1fs\n",
              prefixes_checked, conductance_checks, timer.seconds());
}

TEST_CASE("criterion 5: cut-matching cases on the named fixtures") {
  Timer timer;
  // K16 at phi = 1/100: case 1 on at least 95 of 100 seeds.
  Graph k16 = make_clique(16);
  int case1 = 0;
  for (uint64_t seed = 1; seed <= 100; ++seed) {
    CutMatchConfig cfg;
    cfg.seed = seed;
    CutMatchReport rep = cut_match(k16, Phi(1, 100), cfg);
    REQUIRE(rep.skipped_removals == 0);
    if (rep.kase == CutMatchCase::Expander) ++case1;
  }
  REQUIRE(case1 >= 95);

  // barbell(8) at phi = 1/64: case 2 or 3 on every seed, with the removed
  // side's conductance within 1/c, exactly.
  Graph bb = make_barbell(8);
  int case23 = 0;
  for (uint64_t seed = 1; seed <= 100; ++seed) {
    CutMatchConfig cfg;
    cfg.seed = seed;
    CutMatchReport rep = cut_match(bb, Phi(1, 64), cfg);
    REQUIRE(rep.skipped_removals == 0);
    if (rep.kase == CutMatchCase::BalancedCut || rep.kase == CutMatchCase::NearExpander) {
      ++case23;
      REQUIRE_FALSE(rep.r_sub.empty());
      REQUIRE(rep.r_conductance_sub <= rep.threshold);
    }
  }
  REQUIRE(case23 == 100);

  // Case-3 outputs must pass the exact nearly-expander predicate. With the
  // default constants the balance threshold sits below one node at this
  // scale, so case 3 is structurally rare; the sweep includes an engineered
  // multigraph window where it can arise.
  int case3_seen = 0;
  std::mt19937_64 rng(105);
  auto check_case3 = [&](const Graph& g, Phi phi, const CutMatchConfig& cfg) {
    CutMatchReport rep = cut_match(g, phi, cfg);
    if (rep.kase == CutMatchCase::NearExpander && !rep.a_side.empty()) {
      ++case3_seen;
      REQUIRE(oracle::exact_nearly_expander(g, rep.a_side, phi));
    }
  };
  for (int trial = 0; trial < 25; ++trial) {
    Graph g = fixtures::random_connected(10 + static_cast<int>(rng() % 5),
                                         10 + static_cast<int>(rng() % 12), 0, rng);
    if (g.edge_count() < 17) continue;
    int64_t level =
        static_cast<int64_t>(std::ceil(std::log2(static_cast<double>(g.edge_count()))));
    CutMatchConfig cfg;
    cfg.seed = 500 + trial;
    check_case3(g, Phi(1, 2 * level * level), cfg);
  }
  {
    // K13 with every edge 25-fold plus a pendant: a window where a tiny
    // conforming cut can survive the balance threshold for a short budget.
    Graph g(14);
    for (int rep = 0; rep < 25; ++rep)
      for (NodeId u = 0; u < 13; ++u)
        for (NodeId v = u + 1; v < 13; ++v) g.add_edge(u, v);
    g.add_edge(0, 13);
    for (uint64_t seed = 1; seed <= 40; ++seed) {
      CutMatchConfig cfg;
      cfg.seed = seed;
      cfg.c_round_budget = 0.45;
      check_case3(g, Phi(1, 150), cfg);
    }
  }
  REQUIRE(timer.seconds() < 180.0);
  std::printf(
      "[criterion 5] PASS  K16 case-1 %d/100, barbell case-2/3 %d/100 with exact "
      "conductance, case-3 outputs checked: %d, %.1fs\n",
      case1, case23, case3_seen, timer.seconds());
}

TEST_CASE("criterion 6: potential decay in dense test mode") {
  Timer timer;
  struct PsiFixture {
    Graph g;
    Phi phi;
    const char* name;
  };
  std::vector<PsiFixture> fixtures_list;
  fixtures_list.push_back({make_clique(10), Phi(1, 80), "K10"});
  fixtures_list.push_back({make_hypercube(4), Phi(1, 60), "hypercube4"});
  fixtures_list.push_back({make_clique(20), Phi(1, 200), "K20"});
  int total_runs = 0, converged = 0;
  for (const auto& fx : fixtures_list) {
    int64_t m = fx.g.edge_count();
    REQUIRE(m <= 200);
    double threshold = 1.0 / (16.0 * static_cast<double>(m) * static_cast<double>(m));
    for (uint64_t seed = 1; seed <= 50; ++seed) {
      CutMatchConfig cfg;
      cfg.seed = seed;
      cfg.track_psi = true;
      CutMatchReport rep = cut_match(fx.g, fx.phi, cfg);
      ++total_runs;
      REQUIRE_FALSE(rep.psi_trace.empty());
      // psi(0) = m-1, exact in floating point.
      REQUIRE(rep.psi_trace.front() == static_cast<double>(m - 1));
      // Non-increasing before removals.
      for (size_t i = 0; i < rep.round_stats.size(); ++i) {
        double before = i == 0 ? rep.psi_trace.front() : rep.round_stats[i - 1].psi;
        REQUIRE(rep.round_stats[i].psi_before_removal <= before + 1e-9 * std::max(1.0, before));
      }
      if (rep.psi_trace.back() <= threshold) ++converged;
    }
  }
  // >= 90% of seeds reach psi(T) <= 1/(16 m^2).
  REQUIRE(converged * 10 >= total_runs * 9);
  REQUIRE(timer.seconds() < 300.0);
  std::printf("[criterion 6] PASS  psi(0)=m-1 exact, monotone decay, %d/%d runs below 1/(16m^2), %.1fs\n",
              converged, total_runs, timer.seconds());
}

TEST_CASE("criterion 7: end-to-end decomposition certificates") {
  Timer timer;
  std::mt19937_64 rng(107);
  int graphs = 0, clusters_checked = 0;
  double worst_charge = 0.0;

  auto check = [&](const Graph& g, Phi phi, uint64_t seed) {
    DecompositionConfig cfg;
    cfg.seed = seed;
    DecompositionResult res = decompose(g, phi, cfg);
    ++graphs;
    // Partition (decompose also asserts this internally).
    std::vector<int> owner(g.node_count(), -1);
    for (size_t i = 0; i < res.clusters.size(); ++i)
      for (NodeId v : res.clusters[i].nodes) {
        REQUIRE(owner[v] == -1);
        owner[v] = static_cast<int>(i);
      }
    for (NodeId v = 0; v < g.node_count(); ++v) REQUIRE(owner[v] >= 0);
    // Certified conductance of every cluster, exact.
    for (const auto& c : res.clusters) {
      if (c.nodes.size() == 1) continue;
      REQUIRE(static_cast<int>(c.nodes.size()) <= 20);
      InducedGraph ind = induce_with_loops(g, c.nodes);
      REQUIRE(oracle::exact_min_conductance(ind.graph).value >= phi.sixth());
      ++clusters_checked;
    }
    // Charge bound with c_charge = 32.
    ChargeAudit audit = charge_audit(res, g, phi, 32.0);
    REQUIRE(audit.recount == res.inter_cluster_edges);
    REQUIRE(audit.within);
    worst_charge = std::max(worst_charge, audit.realized_constant);
    // Recursion depth stays within the cubic-log budget (loose constant).
    double log2m = std::log2(std::max<double>(2.0, static_cast<double>(g.edge_count())));
    REQUIRE(res.max_depth <= 4.0 * log2m * log2m * log2m);
  };

  for (int trial = 0; trial < 100; ++trial) {
    int n = 4 + static_cast<int>(rng() % 11);
    int64_t max_m = static_cast<int64_t>(n) * (n - 1) / 2;
    int64_t m = std::min<int64_t>(max_m, n - 1 + static_cast<int64_t>(rng() % (2 * n)));
    Graph g = make_gnm(n, m, rng());
    check(g, trial % 2 == 0 ? Phi(1, 5) : Phi(1, 30), 1000 + trial);
  }
  // Named fixtures.
  check(fixtures::triangle_pair(), Phi(1, 5), 1);
  check(fixtures::triangle_pair(), Phi(1, 10), 1);
  check(make_barbell(8), Phi(1, 30), 1);
  check(make_cycle(20), Phi(1, 30), 1);

  REQUIRE(graphs >= 100);
  REQUIRE(timer.seconds() < 300.0);
  std::printf(
      "[criterion 7] PASS  %d graphs, %d clusters oracle-certified at phi/6, "
      "worst charge constant %.4f (allowed 32), %.1fs\n",
      graphs, clusters_checked, worst_charge, timer.seconds());
}

TEST_CASE("criterion 8: byte-identical reports for identical seeds") {
  Timer timer;
  auto temp_file = [](const char* name) {
    return (std::filesystem::temp_directory_path() / name).string();
  };
  std::string barbell_path = temp_file("expdec_acc_barbell8.edges");
  std::string dels_path = temp_file("expdec_acc_dels.txt");
  std::string k16_path = temp_file("expdec_acc_k16.edges");
  {
    std::ofstream f(barbell_path);
    write_edge_list(f, make_barbell(8));
  }
  {
    std::ofstream f(dels_path);
    f << "0 1\n2 3\n";
  }
  {
    std::ofstream f(k16_path);
    write_edge_list(f, make_clique(16));
  }
  std::vector<RunConfig> configs;
  {
    RunConfig c;
    c.command = "decompose";
    c.phi_text = "1/30";
    c.seed = 11;
    c.input_path = barbell_path;
    configs.push_back(c);
    c.command = "cutmatch";
    c.phi_text = "1/64";
    configs.push_back(c);
    c.command = "verify";
    c.verify_kind = "phi";
    configs.push_back(c);
  }
  {
    RunConfig c;
    c.command = "prune";
    c.phi_text = "1/4";
    c.input_path = k16_path;
    c.deletions_path = dels_path;
    configs.push_back(c);
  }
  for (const auto& cfg : configs) {
    std::string a = run_to_string(cfg);
    std::string b = run_to_string(cfg);
    REQUIRE(!a.empty());
    REQUIRE(a == b);
  }
  // The worker-thread count must not affect the bytes either.
  {
    RunConfig c;
    c.command = "decompose";
    c.phi_text = "1/30";
    c.seed = 11;
    c.input_path = barbell_path;
    std::string sequential = run_to_string(c);
    c.threads = 4;
    REQUIRE(run_to_string(c) == sequential);
  }
  std::printf("[criterion 8] PASS  %zu commands reproduced byte-identically "
              "(thread count included), %.1fs\n",
              configs.size(), timer.seconds());
}

#include <iostream>

#include <CLI11.hpp>

#include "expdec/cli_run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"expander decomposition toolkit: nearly-linear-time expander decomposition, "
               "local-flow trimming, cut-matching and online expander pruning"};
  app.require_subcommand(1);

  expdec::RunConfig cfg;

  auto add_common = [&](CLI::App* cmd, bool needs_graph) {
    cmd->add_option("--phi", cfg.phi_text,
                    "conductance parameter, 'p/q' or decimal (decimal is converted to the "
                    "nearest rational with denominator <= 1e6)")
        ->capture_default_str();
    cmd->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    cmd->add_option("--c-rounds", cfg.c_round_budget,
                    "cut-matching round budget constant: T = ceil(c*(log2 m)^2)")
        ->capture_default_str();
    cmd->add_option("--c-phi-guard", cfg.c_phi_guard,
                    "cut-matching requires phi < 1/(c*ceil(log2 m)^2)")
        ->capture_default_str();
    cmd->add_option("--out", cfg.output_path, "write the report to a file instead of stdout");
    cmd->add_flag("--debug-invariants", cfg.debug_validate,
                  "check flow invariants after every push/relabel");
    if (needs_graph)
      cmd->add_option("graph", cfg.input_path, "edge-list file ('-' for stdin)")->required();
  };

  auto* dec = app.add_subcommand("decompose", "partition into certified expander clusters");
  add_common(dec, true);
  dec->add_option("--c-charge", cfg.c_charge, "charge-audit constant")->capture_default_str();
  dec->add_option("--c-balance", cfg.c_balance, "volume-drop diagnostic constant")
      ->capture_default_str();
  dec->add_option("--threads", cfg.threads, "worker threads for sibling components")
      ->capture_default_str();
  dec->add_flag("--tsv", cfg.tsv, "emit 'cluster<TAB>node' lines instead of JSON");

  auto* tr = app.add_subcommand("trim", "trim a nearly-expander to a certified expander");
  add_common(tr, true);
  tr->add_option("--nodes", cfg.nodeset_path, "file with the node set A")->required();

  auto* cm = app.add_subcommand("cutmatch", "run the cut-matching game on one graph");
  add_common(cm, true);
  cm->add_flag("--psi", cfg.psi_trace, "track the exact potential (dense; m <= 512)");

  auto* pr = app.add_subcommand("prune", "online expander pruning over a deletion stream");
  add_common(pr, true);
  pr->add_option("deletions", cfg.deletions_path, "file with one 'u v' deletion per line")
      ->required();

  auto* ver = app.add_subcommand("verify", "exact brute-force verifiers");
  ver->add_option("kind", cfg.verify_kind, "phi | nearly | feasible")->required();
  add_common(ver, true);
  ver->add_option("--nodes", cfg.nodeset_path, "node set for 'nearly'");
  ver->add_option("--sources", cfg.sources_path, "scaled 'node amount' lines for 'feasible'");

  auto* gen = app.add_subcommand("generate", "write a generator graph as an edge list");
  gen->add_option("family", cfg.family, "clique | barbell | cycle | hypercube | gnm")->required();
  gen->add_option("params", cfg.family_params, "family parameters");
  gen->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  gen->add_option("--out", cfg.output_path, "write to a file instead of stdout");

  CLI11_PARSE(app, argc, argv);
  cfg.command = app.get_subcommands().front()->get_name();
  return expdec::run_command(cfg, std::cout, std::cerr);
}

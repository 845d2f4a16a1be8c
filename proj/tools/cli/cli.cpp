#include "cli/cli.hpp"

#include <algorithm>
#include <ostream>

#include <CLI11.hpp>

#include "cli/commands.hpp"

namespace nlpm::cli {

namespace {

template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kDataError;
  } catch (const ConsistencyError& e) {
    err << "internal consistency fault: " << e.what() << '\n';
    return kConsistencyError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Latent position model MCMC: exact and grid-approximated samplers"};
  app.set_config("--config", "", "TOML or INI file; sections are subcommand names");
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Generate a synthetic network");
  sim.model.add_to(*simulate);
  sim.synth.add_to(*simulate, true);
  simulate->add_option("--seed", sim.seed, "Random seed")->capture_default_str();
  simulate->add_option("--out", sim.out_dir, "Output directory")->required();

  FitArgs fit;
  auto* fitc = app.add_subcommand("fit", "Run the exact or noisy sampler on an edge list");
  fit.model.add_to(*fitc);
  fit.sampler.add_to(*fitc);
  fitc->add_option("--edges", fit.edges, "Edge list file")->required();
  fitc->add_option("--out", fit.out_dir, "Output directory")->required();
  fitc->add_option("--reference", fit.reference,
                   "Positions CSV (node,x,y) used as the alignment target");
  fitc->add_flag("--skip-z-draws", fit.skip_z_draws, "Do not write z_draws.csv");

  BoundsArgs bnd;
  auto* bounds = app.add_subcommand("bounds", "Evaluate perturbation bounds as JSON");
  bnd.model.add_to(*bounds);
  bounds->add_option("--n", bnd.N, "Number of nodes")->capture_default_str();
  bounds->add_option("--M", bnd.M, "Grid resolutions")->delimiter(',')->capture_default_str();
  bounds->add_option("--b", bnd.b, "Explicit box side (overrides --M)");
  bounds->add_option("--C", bnd.C, "Ergodicity constant C")->capture_default_str();
  bounds->add_option("--tau", bnd.tau, "Ergodicity rate tau")->capture_default_str();
  bounds->add_flag("--certify", bnd.certify, "Run the empirical certificates");
  bounds->add_option("--certify-n", bnd.certify_n, "Nodes per certificate instance")
      ->capture_default_str();
  bounds->add_option("--instances", bnd.instances, "Certificate instances")
      ->capture_default_str();
  bounds->add_option("--proposals", bnd.proposals, "Proposals per instance and grid")
      ->capture_default_str();
  bounds->add_option("--lemma-samples", bnd.lemma_samples, "Lipschitz sandwich samples")
      ->capture_default_str();
  bounds->add_option("--seed", bnd.seed, "Random seed")->capture_default_str();
  bounds->add_option("--out", bnd.out, "Output JSON file (default stdout)");

  auto* compare = app.add_subcommand("compare", "Study replication and fit comparison");
  compare->require_subcommand(1);

  Study1Args st1;
  auto* study1 = compare->add_subcommand(
      "study1", "Noisy minus exact log-likelihood at the truth over simulated networks");
  st1.model.add_to(*study1);
  st1.synth.add_to(*study1, true);
  study1->add_option("--networks", st1.networks, "Number of networks")->capture_default_str();
  study1->add_option("--M", st1.M, "Grid resolutions")->delimiter(',')->capture_default_str();
  study1->add_option("--seed", st1.seed, "Seed of the first network")->capture_default_str();
  study1->add_option("--out", st1.out, "Per-network CSV");

  CompareFitsArgs cf;
  auto* fits = compare->add_subcommand("fits", "Compare two fit output directories");
  fits->add_option("--reference", cf.reference_dir, "Reference fit directory")->required();
  fits->add_option("--other", cf.other_dir, "Fit directory to compare")->required();

  BenchArgs bn;
  auto* bench = app.add_subcommand("bench", "Time sampler sweeps");
  bn.model.add_to(*bench);
  bn.synth.add_to(*bench, false);
  bench->add_option("--sizes", bn.sizes, "Synthetic network sizes")
      ->delimiter(',')
      ->capture_default_str();
  bench->add_option("--modes", bn.modes, "exact, noisy")->delimiter(',')->capture_default_str();
  bench->add_option("--M", bn.M, "Grid resolutions")->delimiter(',')->capture_default_str();
  bench->add_option("--sweeps", bn.sweeps, "Timed sweeps per case")->capture_default_str();
  bench->add_option("--seed", bn.seed, "Random seed")->capture_default_str();
  bench->add_option("--edges", bn.edges, "Edge list to time instead of synthetic graphs");
  bench->add_option("--out", bn.out, "Output CSV (default stdout)");
  bench->add_option("--threads", bn.threads, "Worker threads")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  RunMeta meta;
  meta.config_hash = fnv1a(app.config_to_str(true, false));

  return guarded(err, [&] {
    if (*simulate) {
      meta.command = "simulate";
      meta.seed = sim.seed;
      return cmd_simulate(sim, meta, out);
    }
    if (*fitc) {
      meta.command = "fit";
      meta.seed = fit.sampler.seed;
      return cmd_fit(fit, meta, out);
    }
    if (*bounds) {
      meta.command = "bounds";
      meta.seed = bnd.seed;
      return cmd_bounds(bnd, meta, out);
    }
    if (*study1) {
      meta.command = "compare study1";
      meta.seed = st1.seed;
      return cmd_study1(st1, meta, out);
    }
    if (*fits) {
      meta.command = "compare fits";
      return cmd_compare_fits(cf, meta, out);
    }
    meta.command = "bench";
    meta.seed = bn.seed;
    return cmd_bench(bn, meta, out);
  });
}

}  // namespace nlpm::cli

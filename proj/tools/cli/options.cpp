#include "cli/options.hpp"

#include <CLI11.hpp>

namespace nlpm::cli {

namespace {

Interval interval(const std::vector<double>& v, const std::string& name) {
  if (v.size() != 2) throw ConfigError(name + " needs exactly two values");
  return {v[0], v[1]};
}

}  // namespace

void ModelOptions::add_to(CLI::App& app) {
  app.add_option("--link", link, "Link function: two-param | hoff")->capture_default_str();
  app.add_option("--beta-bounds", beta_bounds, "Support of beta (or psi for the Hoff link)")
      ->expected(2)
      ->delimiter(',')
      ->capture_default_str();
  app.add_option("--theta-bounds", theta_bounds, "Support of theta")
      ->expected(2)
      ->delimiter(',')
      ->capture_default_str();
  app.add_option("--S", S, "Half side of the latent square")->capture_default_str();
  app.add_option("--gamma", gamma, "Prior std of latent coordinates")->capture_default_str();
  app.add_option("--prior-std-psi", prior_std_psi, "Prior std of global parameters")
      ->capture_default_str();
  app.add_option("--prop-std-z", prop_std_z, "Latent proposal std")->capture_default_str();
  app.add_option("--prop-std-psi", prop_std_psi, "Global-parameter proposal std")
      ->capture_default_str();
}

LinkFunction ModelOptions::make_link() const { return LinkFunction(link_kind_from_string(link)); }

ParameterSpace ModelOptions::make_space() const {
  const auto l = make_link();
  ParameterSpace space;
  space.S = S;
  space.gamma = gamma;
  space.prior_std_psi = prior_std_psi;
  space.prop_std_z = prop_std_z;
  space.prop_std_psi = prop_std_psi;
  space.psi_bounds.push_back(interval(beta_bounds, "--beta-bounds"));
  if (l.n_params() == 2) space.psi_bounds.push_back(interval(theta_bounds, "--theta-bounds"));
  space.validate(l);
  return space;
}

void SamplerOptions::add_to(CLI::App& app) {
  app.add_option("--iterations", iterations, "Total sweeps")->capture_default_str();
  app.add_option("--burn-in", burn_in, "Burn-in sweeps")->capture_default_str();
  app.add_option("--thin", thin, "Keep every thin-th sweep")->capture_default_str();
  app.add_option("--mode", mode, "exact | noisy")->capture_default_str();
  app.add_option("--M", M, "Grid intervals per axis (noisy mode)")->capture_default_str();
  app.add_option("--seed", seed, "Random seed")->capture_default_str();
  app.add_flag("--adapt", adapt, "Tune proposal stds during burn-in");
  app.add_flag("--random-scan", random_scan, "Shuffle the node order every sweep");
  app.add_option("--check-grid-every", check_grid_every,
                 "Verify the grid against a rebuild every n sweeps")
      ->capture_default_str();
  app.add_option("--threads", threads, "Worker threads (0: runtime default)")
      ->capture_default_str();
}

SamplerConfig SamplerOptions::make_config() const {
  SamplerConfig c;
  c.iterations = iterations;
  c.burn_in = burn_in;
  c.thin = thin;
  c.mode = mode_from_string(mode);
  c.M = M;
  c.seed = seed;
  c.adapt.enabled = adapt;
  c.scan = random_scan ? ScanOrder::Random : ScanOrder::Deterministic;
  c.check_grid_every = check_grid_every;
  c.validate();
  return c;
}

void SynthOptions::add_to(CLI::App& app, bool with_size) {
  if (with_size) app.add_option("--n", N, "Number of nodes")->capture_default_str();
  app.add_option("--beta", beta, "True beta (psi for the Hoff link)")->capture_default_str();
  app.add_option("--theta", theta, "True theta")->capture_default_str();
  app.add_option("--law", law, "Position law: uniform | truncated-gaussian")
      ->capture_default_str();
  app.add_flag("--pin-origin", pin_origin, "Place node 0 at the origin");
}

SynthSpec SynthOptions::make_spec(const ModelOptions& model, std::uint64_t seed) const {
  SynthSpec s;
  s.N = N;
  s.beta = beta;
  s.theta = theta;
  s.law = position_law_from_string(law);
  s.seed = seed;
  s.pin_first_node_at_origin = pin_origin;
  s.S = model.S;
  s.gamma = model.gamma;
  s.validate();
  return s;
}

}  // namespace nlpm::cli

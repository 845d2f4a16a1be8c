#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "nlpm/model.hpp"
#include "nlpm/sampler.hpp"
#include "nlpm/synth.hpp"

namespace CLI {
class App;
}

namespace nlpm::cli {

/// Link, supports, priors and proposal scales. The Hoff link's single
/// parameter takes --beta-bounds.
struct ModelOptions {
  std::string link = "two-param";
  std::vector<double> beta_bounds{-10.0, 10.0};
  std::vector<double> theta_bounds{-5.0, 5.0};
  double S = 1.0;
  double gamma = 1.0;
  double prior_std_psi = 10.0;
  double prop_std_z = 0.1;
  double prop_std_psi = 0.05;

  void add_to(CLI::App& app);
  LinkFunction make_link() const;
  ParameterSpace make_space() const;
};

struct SamplerOptions {
  std::size_t iterations = 1000;
  std::size_t burn_in = 500;
  std::size_t thin = 1;
  std::string mode = "noisy";
  std::uint32_t M = 8;
  std::uint64_t seed = 1;
  bool adapt = false;
  bool random_scan = false;
  std::size_t check_grid_every = 0;
  int threads = 0;

  void add_to(CLI::App& app);
  SamplerConfig make_config() const;
};

/// Network generation options shared by simulate, compare and bench.
struct SynthOptions {
  std::size_t N = 200;
  double beta = 0.5;
  double theta = 1.0986122886681098;
  std::string law = "uniform";
  bool pin_origin = false;

  void add_to(CLI::App& app, bool with_size);
  SynthSpec make_spec(const ModelOptions& model, std::uint64_t seed) const;
};

}  // namespace nlpm::cli

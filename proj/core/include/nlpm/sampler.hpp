#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nlpm/graph.hpp"
#include "nlpm/likelihood.hpp"
#include "nlpm/model.hpp"
#include "nlpm/types.hpp"

namespace nlpm {

enum class Mode { Exact, Noisy };
enum class ScanOrder { Deterministic, Random };

std::string to_string(Mode mode);
Mode mode_from_string(const std::string& name);

/// Proposal scale tuning during burn-in: every `interval` sweeps each
/// parameter's std is multiplied by `grow` if its acceptance rate over the
/// window exceeds `hi`, and by `shrink` if it falls below `lo`.
struct AdaptConfig {
  bool enabled = false;
  double lo = 0.2;
  double hi = 0.5;
  std::size_t interval = 100;
  double grow = 1.25;
  double shrink = 0.8;
};

struct SamplerConfig {
  std::size_t iterations = 1000;
  std::size_t burn_in = 500;
  std::size_t thin = 1;
  Mode mode = Mode::Exact;
  std::uint32_t M = 8;  ///< grid intervals per axis (noisy mode)
  std::uint64_t seed = 1;
  AdaptConfig adapt;
  ScanOrder scan = ScanOrder::Deterministic;

  /// Restrict the latent updates to these nodes (empty: all nodes).
  std::vector<NodeId> update_nodes;
  bool update_psi = true;

  /// Starting point; defaults to a prior draw for z and bound midpoints for psi.
  std::optional<Positions> init_z;
  std::optional<GlobalParams> init_psi;

  bool store_z = true;
  /// Keep one byte per accept/reject decision (for coupled-chain checks).
  bool record_decisions = false;
  /// Re-verify the grid against a rebuild every this many sweeps (0: never).
  std::size_t check_grid_every = 0;

  /// Throws ConfigError on burn_in >= iterations, thin == 0, a bad adaptation
  /// window or M == 0 in noisy mode.
  void validate() const;
  std::size_t n_draws() const { return (iterations - burn_in) / thin; }
};

struct ProposalScales {
  std::vector<double> z;    ///< per node
  std::vector<double> psi;  ///< per global parameter
};

struct ChainSample {
  Mode mode = Mode::Exact;
  std::uint32_t M = 0;
  std::uint64_t seed = 0;

  std::vector<Positions> z_draws;      ///< thinned, post burn-in
  std::vector<GlobalParams> psi_draws;
  std::vector<double> z_acceptance;    ///< per node, sampling phase
  std::vector<double> psi_acceptance;  ///< per parameter, sampling phase
  std::vector<double> burn_in_sweep_seconds;
  std::vector<double> sampling_sweep_seconds;
  double z_phase_seconds = 0.0;  ///< time spent in latent updates, all sweeps
  std::size_t z_updates = 0;
  ProposalScales final_scales;
  std::vector<std::uint8_t> decisions;

  double mean_burn_in_sweep_seconds() const;
  double mean_sampling_sweep_seconds() const;
  double seconds_per_z_update() const {
    return z_updates == 0 ? 0.0 : z_phase_seconds / static_cast<double>(z_updates);
  }
};

/// min(1, q-ratio * prior-ratio * LR) for a latent move, with the exact or
/// grid LR depending on mode. The log variant returns min(0, log ratio).
double log_accept_prob_z(const LatentState& state, const Network& net, const LinkFunction& link,
                         const ParameterSpace& space, NodeId i, Point z_new, double log_q_ratio,
                         Mode mode);
double accept_prob_z(const LatentState& state, const Network& net, const LinkFunction& link,
                     const ParameterSpace& space, NodeId i, Point z_new, double log_q_ratio,
                     Mode mode);

/// Same for replacing psi by psi_new, which differs from psi in one
/// coordinate only.
double log_accept_prob_psi(const LatentState& state, const Network& net, const LinkFunction& link,
                           const ParameterSpace& space, std::span<const double> psi_new,
                           double log_q_ratio, Mode mode);
double accept_prob_psi(const LatentState& state, const Network& net, const LinkFunction& link,
                       const ParameterSpace& space, std::span<const double> psi_new,
                       double log_q_ratio, Mode mode);

/// New proposal stds from window acceptance rates. Stds are capped at
/// `max_std` so a flat conditional cannot push them to infinity.
std::vector<double> adapt_proposals(std::span<const double> acceptance,
                                    std::span<const double> stds, const AdaptConfig& window,
                                    double max_std);

/// Metropolis-within-Gibbs sampler, exact or grid-approximated. One sweep
/// updates every latent position (both coordinates in block), then every
/// global parameter.
class Sampler {
 public:
  Sampler(const Network& net, const LinkFunction& link, const ParameterSpace& space,
          SamplerConfig config);

  const LatentState& state() const { return state_; }
  const ProposalScales& scales() const { return scales_; }
  ProposalScales& scales() { return scales_; }

  /// One full scan over the latent positions, then the global parameters.
  void sweep();

  /// Burn-in (with optional adaptation) then thinned sampling.
  ChainSample run();

 private:
  void update_z(NodeId i);
  void update_psi(std::size_t k);
  void adapt_now();

  const Network& net_;
  LinkFunction link_;
  ParameterSpace space_;
  SamplerConfig config_;
  Rng rng_;
  LatentState state_;
  ProposalScales scales_;
  std::vector<NodeId> z_order_;

  std::vector<std::size_t> z_acc_, z_prop_, psi_acc_, psi_prop_;
  std::vector<std::size_t> win_z_acc_, win_psi_acc_;
  std::size_t win_sweeps_ = 0;
  std::vector<std::uint8_t> decisions_;
  double z_phase_seconds_ = 0.0;
  std::size_t z_updates_ = 0;
  std::size_t sweeps_done_ = 0;
};

/// Convenience wrapper: Sampler(net, link, space, config).run().
ChainSample run(const Network& net, const LinkFunction& link, const ParameterSpace& space,
                const SamplerConfig& config);

/// Initial latent positions drawn from the truncated Gaussian prior.
Positions draw_prior_positions(std::size_t n, const ParameterSpace& space, Rng& rng);

}  // namespace nlpm

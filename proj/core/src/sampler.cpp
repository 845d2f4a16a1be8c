#include "nlpm/sampler.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

namespace nlpm {

std::string to_string(Mode mode) { return mode == Mode::Exact ? "exact" : "noisy"; }

Mode mode_from_string(const std::string& name) {
  if (name == "exact") return Mode::Exact;
  if (name == "noisy") return Mode::Noisy;
  throw ConfigError("unknown sampler mode '" + name + "' (expected exact or noisy)");
}

void SamplerConfig::validate() const {
  if (burn_in >= iterations) throw ConfigError("burn-in must be smaller than iterations");
  if (thin == 0) throw ConfigError("thin must be at least 1");
  if (mode == Mode::Noisy && M == 0) throw ConfigError("noisy mode needs M >= 1");
  if (!(adapt.lo > 0.0 && adapt.lo < adapt.hi && adapt.hi < 1.0))
    throw ConfigError("adaptation window must satisfy 0 < lo < hi < 1");
  if (adapt.enabled && adapt.interval == 0)
    throw ConfigError("adaptation interval must be positive");
}

namespace {

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double rate(std::size_t acc, std::size_t prop) {
  return prop == 0 ? 0.0 : static_cast<double>(acc) / static_cast<double>(prop);
}

}  // namespace

double ChainSample::mean_burn_in_sweep_seconds() const { return mean_of(burn_in_sweep_seconds); }
double ChainSample::mean_sampling_sweep_seconds() const { return mean_of(sampling_sweep_seconds); }

double log_accept_prob_z(const LatentState& state, const Network& net, const LinkFunction& link,
                         const ParameterSpace& space, NodeId i, Point z_new, double log_q_ratio,
                         Mode mode) {
  const double log_prior = log_prior_z(z_new, space) - log_prior_z(state.z[i], space);
  if (!std::isfinite(log_prior)) return -std::numeric_limits<double>::infinity();
  const double log_lr = mode == Mode::Exact ? exact_log_lr_z(state, net, link, i, z_new)
                                            : noisy_log_lr_z(state, net, link, i, z_new);
  return std::min(0.0, log_q_ratio + log_prior + log_lr);
}

double accept_prob_z(const LatentState& state, const Network& net, const LinkFunction& link,
                     const ParameterSpace& space, NodeId i, Point z_new, double log_q_ratio,
                     Mode mode) {
  return std::exp(log_accept_prob_z(state, net, link, space, i, z_new, log_q_ratio, mode));
}

double log_accept_prob_psi(const LatentState& state, const Network& net, const LinkFunction& link,
                           const ParameterSpace& space, std::span<const double> psi_new,
                           double log_q_ratio, Mode mode) {
  const double log_prior = log_prior_psi(psi_new, space) - log_prior_psi(state.psi, space);
  if (!std::isfinite(log_prior)) return -std::numeric_limits<double>::infinity();
  const double log_lr = mode == Mode::Exact ? exact_log_lr_psi(state, net, link, psi_new)
                                            : noisy_log_lr_psi(state, net, link, psi_new);
  return std::min(0.0, log_q_ratio + log_prior + log_lr);
}

double accept_prob_psi(const LatentState& state, const Network& net, const LinkFunction& link,
                       const ParameterSpace& space, std::span<const double> psi_new,
                       double log_q_ratio, Mode mode) {
  return std::exp(log_accept_prob_psi(state, net, link, space, psi_new, log_q_ratio, mode));
}

std::vector<double> adapt_proposals(std::span<const double> acceptance,
                                    std::span<const double> stds, const AdaptConfig& window,
                                    double max_std) {
  std::vector<double> out(stds.begin(), stds.end());
  for (std::size_t r = 0; r < out.size(); ++r) {
    if (acceptance[r] > window.hi)
      out[r] = std::min(out[r] * window.grow, max_std);
    else if (acceptance[r] < window.lo)
      out[r] *= window.shrink;
  }
  return out;
}

Positions draw_prior_positions(std::size_t n, const ParameterSpace& space, Rng& rng) {
  Positions z(n);
  const Interval w{-space.S, space.S};
  for (auto& p : z) {
    p.x = sample_truncated_normal(0.0, w, space.gamma, rng);
    p.y = sample_truncated_normal(0.0, w, space.gamma, rng);
  }
  return z;
}

Sampler::Sampler(const Network& net, const LinkFunction& link, const ParameterSpace& space,
                 SamplerConfig config)
    : net_(net), link_(link), space_(space), config_(std::move(config)), rng_(config_.seed) {
  config_.validate();
  space_.validate(link_);
  const std::size_t n = net_.size();

  if (config_.init_z) {
    if (config_.init_z->size() != n) throw ConfigError("initial positions do not match N");
    for (const auto& p : *config_.init_z)
      if (!space_.contains(p)) throw ConfigError("initial position outside the latent square");
    state_.z = *config_.init_z;
  } else {
    state_.z = draw_prior_positions(n, space_, rng_);
  }
  if (config_.init_psi) {
    if (!space_.contains(*config_.init_psi)) throw ConfigError("initial psi outside its bounds");
    state_.psi = *config_.init_psi;
  } else {
    for (const auto& b : space_.psi_bounds) state_.psi.push_back(b.midpoint());
  }
  if (config_.mode == Mode::Noisy) state_.rebuild_grid(net_, config_.M, space_.S);

  scales_.z.assign(n, space_.prop_std_z);
  scales_.psi.assign(space_.psi_bounds.size(), space_.prop_std_psi);

  if (config_.update_nodes.empty()) {
    z_order_.resize(n);
    std::iota(z_order_.begin(), z_order_.end(), NodeId{0});
  } else {
    z_order_ = config_.update_nodes;
    for (NodeId i : z_order_)
      if (i >= n) throw ConfigError("update node id out of range");
  }

  z_acc_.assign(n, 0);
  z_prop_.assign(n, 0);
  psi_acc_.assign(scales_.psi.size(), 0);
  psi_prop_.assign(scales_.psi.size(), 0);
  win_z_acc_.assign(n, 0);
  win_psi_acc_.assign(scales_.psi.size(), 0);
}

void Sampler::update_z(NodeId i) {
  const auto prop = propose_z(state_.z[i], space_.S, scales_.z[i], rng_);
  const double log_u = std::log(std::uniform_real_distribution<double>(0.0, 1.0)(rng_));
  const double log_alpha = log_accept_prob_z(state_, net_, link_, space_, i, prop.value,
                                             prop.log_q_ratio, config_.mode);
  const bool accept = log_u < log_alpha;
  ++z_prop_[i];
  if (config_.record_decisions) decisions_.push_back(accept ? 1 : 0);
  if (!accept) return;
  ++z_acc_[i];
  ++win_z_acc_[i];
  if (state_.grid) state_.grid->move_node(i, prop.value, net_);
  state_.z[i] = prop.value;
}

void Sampler::update_psi(std::size_t k) {
  const auto prop = propose_psi(state_.psi[k], space_.psi_bounds[k], scales_.psi[k], rng_);
  const double log_u = std::log(std::uniform_real_distribution<double>(0.0, 1.0)(rng_));
  GlobalParams next = state_.psi;
  next[k] = prop.value;
  const double log_alpha =
      log_accept_prob_psi(state_, net_, link_, space_, next, prop.log_q_ratio, config_.mode);
  const bool accept = log_u < log_alpha;
  ++psi_prop_[k];
  if (config_.record_decisions) decisions_.push_back(accept ? 1 : 0);
  if (!accept) return;
  ++psi_acc_[k];
  ++win_psi_acc_[k];
  state_.psi = std::move(next);
}

void Sampler::sweep() {
  using clock = std::chrono::steady_clock;
  if (config_.scan == ScanOrder::Random) std::shuffle(z_order_.begin(), z_order_.end(), rng_);

  const auto t0 = clock::now();
  for (NodeId i : z_order_) update_z(i);
  z_phase_seconds_ += std::chrono::duration<double>(clock::now() - t0).count();
  z_updates_ += z_order_.size();

  if (config_.update_psi) {
    std::vector<std::size_t> order(scales_.psi.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (config_.scan == ScanOrder::Random) std::shuffle(order.begin(), order.end(), rng_);
    for (std::size_t k : order) update_psi(k);
  }
  ++win_sweeps_;
  ++sweeps_done_;

  if (config_.check_grid_every > 0 && state_.grid && sweeps_done_ % config_.check_grid_every == 0) {
    state_.grid->check_invariants(net_);
    if (!(*state_.grid == BoxGrid(state_.z, net_, config_.M, space_.S)))
      throw ConsistencyError("grid differs from a rebuild after sweep " +
                             std::to_string(sweeps_done_));
  }
}

void Sampler::adapt_now() {
  const double w = static_cast<double>(win_sweeps_);
  std::vector<double> acc(scales_.z.size());
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = static_cast<double>(win_z_acc_[i]) / w;
  // Nodes outside the update set keep rate 0.35 (inside the window), i.e.
  // their scale is left alone.
  if (!config_.update_nodes.empty()) {
    std::vector<bool> active(acc.size(), false);
    for (NodeId i : z_order_) active[i] = true;
    for (std::size_t i = 0; i < acc.size(); ++i)
      if (!active[i]) acc[i] = 0.5 * (config_.adapt.lo + config_.adapt.hi);
  }
  scales_.z = adapt_proposals(acc, scales_.z, config_.adapt, 4.0 * space_.S);

  if (config_.update_psi) {
    std::vector<double> pacc(scales_.psi.size());
    double widest = 0.0;
    for (std::size_t k = 0; k < pacc.size(); ++k) {
      pacc[k] = static_cast<double>(win_psi_acc_[k]) / w;
      widest = std::max(widest, space_.psi_bounds[k].width());
    }
    scales_.psi = adapt_proposals(pacc, scales_.psi, config_.adapt, 2.0 * widest);
  }
  std::fill(win_z_acc_.begin(), win_z_acc_.end(), 0);
  std::fill(win_psi_acc_.begin(), win_psi_acc_.end(), 0);
  win_sweeps_ = 0;
}

ChainSample Sampler::run() {
  using clock = std::chrono::steady_clock;
  ChainSample out;
  out.mode = config_.mode;
  out.M = config_.mode == Mode::Noisy ? config_.M : 0;
  out.seed = config_.seed;
  out.burn_in_sweep_seconds.reserve(config_.burn_in);
  out.sampling_sweep_seconds.reserve(config_.iterations - config_.burn_in);
  out.psi_draws.reserve(config_.n_draws());
  if (config_.store_z) out.z_draws.reserve(config_.n_draws());

  win_sweeps_ = 0;
  for (std::size_t t = 0; t < config_.burn_in; ++t) {
    const auto t0 = clock::now();
    sweep();
    if (config_.adapt.enabled && win_sweeps_ == config_.adapt.interval) adapt_now();
    out.burn_in_sweep_seconds.push_back(std::chrono::duration<double>(clock::now() - t0).count());
  }

  // Scales are frozen from here on; acceptance is reported for this phase.
  std::fill(z_acc_.begin(), z_acc_.end(), 0);
  std::fill(z_prop_.begin(), z_prop_.end(), 0);
  std::fill(psi_acc_.begin(), psi_acc_.end(), 0);
  std::fill(psi_prop_.begin(), psi_prop_.end(), 0);
  const ProposalScales frozen = scales_;

  const std::size_t sampling = config_.iterations - config_.burn_in;
  for (std::size_t s = 0; s < sampling; ++s) {
    const auto t0 = clock::now();
    sweep();
    out.sampling_sweep_seconds.push_back(std::chrono::duration<double>(clock::now() - t0).count());
    if ((s + 1) % config_.thin == 0) {
      out.psi_draws.push_back(state_.psi);
      if (config_.store_z) out.z_draws.push_back(state_.z);
    }
  }
  if (scales_.z != frozen.z || scales_.psi != frozen.psi)
    throw ConsistencyError("proposal scales changed after burn-in");

  out.z_acceptance.resize(z_acc_.size());
  for (std::size_t i = 0; i < z_acc_.size(); ++i) out.z_acceptance[i] = rate(z_acc_[i], z_prop_[i]);
  out.psi_acceptance.resize(psi_acc_.size());
  for (std::size_t k = 0; k < psi_acc_.size(); ++k)
    out.psi_acceptance[k] = rate(psi_acc_[k], psi_prop_[k]);
  out.final_scales = scales_;
  out.z_phase_seconds = z_phase_seconds_;
  out.z_updates = z_updates_;
  out.decisions = std::move(decisions_);
  return out;
}

ChainSample run(const Network& net, const LinkFunction& link, const ParameterSpace& space,
                const SamplerConfig& config) {
  return Sampler(net, link, space, config).run();
}

}  // namespace nlpm

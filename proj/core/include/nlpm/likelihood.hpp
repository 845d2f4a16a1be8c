#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>

#include "nlpm/graph.hpp"
#include "nlpm/grid.hpp"
#include "nlpm/model.hpp"
#include "nlpm/types.hpp"

namespace nlpm {

/// Latent positions, global parameters and (for noisy evaluation) the box
/// grid, which must be kept consistent with z.
struct LatentState {
  Positions z;
  GlobalParams psi;
  std::optional<BoxGrid> grid;

  void rebuild_grid(const Network& net, std::uint32_t M, double S) {
    grid.emplace(z, net, M, S);
  }
};

// All likelihood quantities are accumulated in log space. Sums over pairs
// use compensated summation in a fixed chunk order, so the result does not
// depend on the number of threads.

/// Exact log-likelihood: sum over unordered pairs of
/// y log p + (1 - y) log(1 - p). O(N^2).
double exact_log_lik(const LatentState& state, const Network& net, const LinkFunction& link);

/// Grid-approximated log-likelihood: every partner j of node i is replaced by
/// the centre of j's box, with the global square root. Requires state.grid.
double noisy_log_lik(const LatentState& state, const Network& net, const LinkFunction& link);

/// log LR for moving node i to z_new, all other parameters fixed. O(N).
double exact_log_lr_z(const LatentState& state, const Network& net, const LinkFunction& link,
                      NodeId i, Point z_new);

/// Grid version of the above: a product over non-empty boxes using node i's
/// edge and non-edge counts. O(#non-empty boxes + |xi_i|).
double noisy_log_lr_z(const LatentState& state, const Network& net, const LinkFunction& link,
                      NodeId i, Point z_new);

/// log LR for replacing psi by psi_new (with the 1/2 exponent). O(N^2).
double exact_log_lr_psi(const LatentState& state, const Network& net, const LinkFunction& link,
                        std::span<const double> psi_new);

/// Grid version: O(N * #non-empty boxes).
double noisy_log_lr_psi(const LatentState& state, const Network& net, const LinkFunction& link,
                        std::span<const double> psi_new);

inline double exact_lr_z(const LatentState& s, const Network& net, const LinkFunction& link,
                         NodeId i, Point z_new) {
  return std::exp(exact_log_lr_z(s, net, link, i, z_new));
}
inline double noisy_lr_z(const LatentState& s, const Network& net, const LinkFunction& link,
                         NodeId i, Point z_new) {
  return std::exp(noisy_log_lr_z(s, net, link, i, z_new));
}
inline double exact_lr_psi(const LatentState& s, const Network& net, const LinkFunction& link,
                           std::span<const double> psi_new) {
  return std::exp(exact_log_lr_psi(s, net, link, psi_new));
}
inline double noisy_lr_psi(const LatentState& s, const Network& net, const LinkFunction& link,
                           std::span<const double> psi_new) {
  return std::exp(noisy_log_lr_psi(s, net, link, psi_new));
}

/// Sets the worker count used by the pair sums (no-op without OpenMP).
void set_num_threads(int n);

}  // namespace nlpm

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "nlpm/model.hpp"

namespace nlpm {

/// Uniform-ergodicity constants (C, tau) of the exact kernel. They cannot be
/// derived from the model and are supplied by the user.
struct ErgodicityConstants {
  double C = 1.0;
  double tau = 0.99;
};

/// A bound kept in log space; `value` is exp(log_value) and may be +inf.
struct BoundValue {
  double log_value;
  double value;
  bool vacuous;  ///< value >= 1 (acceptance probabilities never differ by more)
};

struct ChiConstants {
  double chi1;
  double chi2;
  double chi3;
};

/// Prior- and proposal-ratio constants, all in log space. Proposal constants
/// are e^{4S^2/v^2} (e^{w^2/(2v^2)} for an interval of width w), raised to the
/// exact truncation-mass ratio when that is larger (v large against S).
struct RatioConstants {
  double log_kappa_pi;     ///< psi prior ratio
  double log_varkappa_pi;  ///< latent prior ratio, S^2 / gamma^2
  double log_kappa_q;      ///< psi proposal ratio
  double log_varkappa_q;   ///< latent proposal ratio
};

struct BoundReport {
  std::size_t n_nodes = 0;
  std::size_t n_params = 0;
  std::uint32_t M = 0;
  double b = 0.0;

  LinkConstants link{};
  RatioConstants ratios{};
  ChiConstants chi{};
  ErgodicityConstants ergodicity{};
  double log_base = 0.0;  ///< log of [(1 - p^L) p^U] / [(1 - p^U) p^L]
  double eta = 0.0;

  BoundValue theorem2_z{};
  BoundValue theorem2_psi{};
  BoundValue corollary2_z{};
  BoundValue corollary2_psi{};
  BoundValue theorem3{};

  std::size_t R = 0;            ///< number of elementary updates per sweep, N + K
  long lambda = 0;
  BoundValue kernel_gap{};      ///< per-update bound nu * kappa_alpha
  BoundValue sweep_kernel_gap{};  ///< R times kernel_gap
};

ChiConstants chi_constants(std::size_t N, const LinkConstants& lc);

/// chi1 b + chi2 log(1 + chi3 b).
double eta(double b, std::size_t N, const LinkConstants& lc);

double log_ratio_base(const LinkConstants& lc);

/// Likelihood-ratio error bounds for a latent move and a psi move.
struct LikelihoodRatioBounds {
  BoundValue z;
  BoundValue psi;
};
LikelihoodRatioBounds theorem2_bounds(double b, std::size_t N, const LinkConstants& lc);

RatioConstants ratio_constants(const ParameterSpace& space);

/// Acceptance-probability error bounds with the exponents of the published
/// statement: the psi bound carries exponent N - 1, the latent bound N(N-1)/2.
struct AcceptanceBounds {
  BoundValue psi;
  BoundValue z;
};
AcceptanceBounds corollary2_bounds(double b, std::size_t N, const RatioConstants& ratios,
                                   const LinkConstants& lc);

/// ceil(log(1/C) / log tau), clamped at 0. Throws ConfigError unless C > 0
/// and 0 < tau < 1.
long ergodicity_lambda(const ErgodicityConstants& e);

/// Total-variation bound between exact and noisy chains after any number of
/// sweeps, from any start.
BoundValue theorem3_bound(double b, std::size_t N, const RatioConstants& ratios,
                          const LinkConstants& lc, const ErgodicityConstants& e);

/// Every constant and bound for an N-node network on an M x M grid.
BoundReport make_bound_report(std::size_t N, std::uint32_t M, const LinkFunction& link,
                              const ParameterSpace& space, const ErgodicityConstants& e = {});

/// Same, at an explicit box side b (b = 0 gives all-zero bounds).
BoundReport make_bound_report_at(std::size_t N, double b, const LinkFunction& link,
                                 const ParameterSpace& space, const ErgodicityConstants& e = {});

nlohmann::json to_json(const BoundReport& report);

/// Random sweeps over (d1, d2, psi) checking the two Lipschitz sandwiches
/// for ratios of f = rho(., psi) and of 1 - f.
struct Lemma1Report {
  std::size_t samples = 0;
  std::size_t violations = 0;
  double min_slack = 0.0;  ///< smallest log-margin to either side of either sandwich
};
Lemma1Report lemma1_certify(const LinkFunction& link, const ParameterSpace& space,
                            std::size_t samples, std::uint64_t seed);

/// Empirical check of the likelihood-ratio and acceptance bounds on small
/// random instances, where everything can be evaluated directly.
struct CertificateConfig {
  std::size_t n_nodes = 6;
  std::size_t instances = 10;
  std::size_t proposals = 1000;  ///< per instance and grid
  std::vector<std::uint32_t> grids{4, 8, 16};
  std::uint64_t seed = 2024;
};

struct CertificateReport {
  std::size_t checks = 0;
  std::size_t lr_z_violations = 0;
  std::size_t lr_psi_violations = 0;
  std::size_t acc_z_violations = 0;
  std::size_t acc_psi_violations = 0;
  double max_lr_z_error = 0.0;
  double max_lr_psi_error = 0.0;
  double max_acc_z_error = 0.0;
  double max_acc_psi_error = 0.0;

  std::size_t violations() const {
    return lr_z_violations + lr_psi_violations + acc_z_violations + acc_psi_violations;
  }
};
CertificateReport certify_bounds(const LinkFunction& link, const ParameterSpace& space,
                                 const CertificateConfig& config);

nlohmann::json to_json(const Lemma1Report& report);
nlohmann::json to_json(const CertificateReport& report);

}  // namespace nlpm

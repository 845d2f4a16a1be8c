#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "nlpm/types.hpp"

namespace nlpm {

/// Closed interval [lo, hi] bounding one global parameter.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  double midpoint() const { return 0.5 * (lo + hi); }
  bool contains(double x) const { return x >= lo && x <= hi; }
};

enum class LinkKind {
  HoffLogit,      ///< logit p = psi - d, K = 1
  TwoParamLogit,  ///< logit p = beta - exp(theta) d, K = 2
};

std::string to_string(LinkKind kind);
LinkKind link_kind_from_string(const std::string& name);

/// Every supported link is logistic in an affine function of the distance:
/// logit p = intercept - slope * d, with slope > 0 for fixed psi.
struct LinkCoeffs {
  double intercept = 0.0;
  double slope = 1.0;

  double logit(double d) const { return intercept - slope * d; }
};

/// log p and log(1 - p) for a single logit value, computed without
/// cancellation.
struct LogProbs {
  double log_p;
  double log_1mp;
};

inline double softplus(double x) {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

inline LogProbs log_probs_from_logit(double eta) {
  return {-softplus(-eta), -softplus(eta)};
}

inline double logistic(double x) {
  return x >= 0.0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x));
}

class LinkFunction {
 public:
  explicit LinkFunction(LinkKind kind = LinkKind::TwoParamLogit) : kind_(kind) {}

  LinkKind kind() const { return kind_; }
  std::size_t n_params() const { return kind_ == LinkKind::HoffLogit ? 1 : 2; }
  std::vector<std::string> param_names() const;

  LinkCoeffs coeffs(std::span<const double> psi) const;

  double prob(double d, std::span<const double> psi) const {
    return logistic(coeffs(psi).logit(d));
  }
  LogProbs log_probs(double d, std::span<const double> psi) const {
    return log_probs_from_logit(coeffs(psi).logit(d));
  }

 private:
  LinkKind kind_;
};

/// Bounded supports, priors and random-walk proposal scales.
struct ParameterSpace {
  double S = 1.0;                     ///< latent square is [-S, S]^2
  std::vector<Interval> psi_bounds;   ///< one interval per global parameter
  double gamma = 1.0;                 ///< prior std of each latent coordinate
  double prior_std_psi = 10.0;        ///< prior std of each global parameter
  double prop_std_z = 0.1;
  double prop_std_psi = 0.05;

  /// beta in [-10, 10], theta in [-5, 5] (or psi in [-10, 10] for the Hoff
  /// link), S = gamma = 1.
  static ParameterSpace study_default(LinkKind kind = LinkKind::TwoParamLogit);

  /// Throws ConfigError unless S, gamma, stds > 0 and every interval is
  /// non-degenerate.
  void validate(const LinkFunction& link) const;

  bool contains(Point z) const { return std::abs(z.x) <= S && std::abs(z.y) <= S; }
  bool contains(std::span<const double> psi) const;
  double max_distance() const;  ///< diagonal of the square, 2 sqrt(2) S
};

double edge_prob(const LinkFunction& link, double d, std::span<const double> psi);

/// Standard normal helpers.
double normal_log_pdf(double x);
double normal_cdf(double x);

/// log(Phi((hi - c)/v) - Phi((lo - c)/v)): the mass a N(c, v^2) puts on [lo, hi].
double log_truncated_mass(double center, Interval window, double v);

/// Truncated spherical Gaussian prior on a latent position; -inf outside.
double log_prior_z(Point z, const ParameterSpace& space);

/// Independent N(0, prior_std_psi^2) log-densities; -inf outside the bounds
/// (truncation constants are omitted: they cancel in every ratio).
double log_prior_psi(std::span<const double> psi, const ParameterSpace& space);

template <typename T>
struct Proposal {
  T value;
  double log_q_ratio;  ///< log q(new -> old) - log q(old -> new)
};

/// Draws from N(center, v^2) truncated to the window.
double sample_truncated_normal(double center, Interval window, double v, Rng& rng);

/// Coordinate-wise truncated Gaussian random walk on [-S, S]^2.
Proposal<Point> propose_z(Point z, double S, double v, Rng& rng);

/// One-dimensional truncated Gaussian random walk on the bound interval.
Proposal<double> propose_psi(double psi_k, Interval bounds, double v, Rng& rng);

/// log q(from -> to) for the latent-position proposal.
double log_q_z(Point from, Point to, double S, double v);
/// log q(from -> to) for a global-parameter proposal.
double log_q_psi(double from, double to, Interval bounds, double v);

/// log q(to -> from) - log q(from -> to) without sampling.
double log_q_ratio_z(Point from, Point to, double S, double v);
double log_q_ratio_psi(double from, double to, Interval bounds, double v);

/// p^L, p^U and the Lipschitz constant of rho in d over the bounded space.
struct LinkConstants {
  double p_lo;
  double p_hi;
  double lipschitz;
};

LinkConstants derived_constants(const LinkFunction& link, const ParameterSpace& space);

}  // namespace nlpm

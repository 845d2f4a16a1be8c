#include "nlpm/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/special_functions/erf.hpp>

namespace nlpm {

std::string to_string(LinkKind kind) {
  return kind == LinkKind::HoffLogit ? "hoff" : "two-param";
}

LinkKind link_kind_from_string(const std::string& name) {
  if (name == "hoff" || name == "hoff-logit") return LinkKind::HoffLogit;
  if (name == "two-param" || name == "two-param-logit") return LinkKind::TwoParamLogit;
  throw ConfigError("unknown link kind '" + name + "' (expected hoff or two-param)");
}

std::vector<std::string> LinkFunction::param_names() const {
  if (kind_ == LinkKind::HoffLogit) return {"psi"};
  return {"beta", "theta"};
}

LinkCoeffs LinkFunction::coeffs(std::span<const double> psi) const {
  if (kind_ == LinkKind::HoffLogit) return {psi[0], 1.0};
  return {psi[0], std::exp(psi[1])};
}

ParameterSpace ParameterSpace::study_default(LinkKind kind) {
  ParameterSpace space;
  if (kind == LinkKind::HoffLogit)
    space.psi_bounds = {{-10.0, 10.0}};
  else
    space.psi_bounds = {{-10.0, 10.0}, {-5.0, 5.0}};
  return space;
}

void ParameterSpace::validate(const LinkFunction& link) const {
  if (!(S > 0.0)) throw ConfigError("S must be positive");
  if (!(gamma > 0.0)) throw ConfigError("gamma must be positive");
  if (!(prior_std_psi > 0.0)) throw ConfigError("prior std of psi must be positive");
  if (!(prop_std_z > 0.0) || !(prop_std_psi > 0.0))
    throw ConfigError("proposal standard deviations must be positive");
  if (psi_bounds.size() != link.n_params())
    throw ConfigError("link '" + to_string(link.kind()) + "' needs " +
                      std::to_string(link.n_params()) + " parameter bounds, got " +
                      std::to_string(psi_bounds.size()));
  for (const auto& b : psi_bounds)
    if (!(b.lo < b.hi)) throw ConfigError("parameter bounds must satisfy lo < hi");
}

bool ParameterSpace::contains(std::span<const double> psi) const {
  if (psi.size() != psi_bounds.size()) return false;
  for (std::size_t k = 0; k < psi.size(); ++k)
    if (!psi_bounds[k].contains(psi[k])) return false;
  return true;
}

double ParameterSpace::max_distance() const { return 2.0 * std::numbers::sqrt2 * S; }

double edge_prob(const LinkFunction& link, double d, std::span<const double> psi) {
  return link.prob(d, psi);
}

double normal_log_pdf(double x) {
  return -0.5 * x * x - 0.5 * std::log(2.0 * std::numbers::pi);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

namespace {

// Upper tail Q(x) = 1 - Phi(x).
double normal_sf(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double normal_quantile(double p) {
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

}  // namespace

double log_truncated_mass(double center, Interval window, double v) {
  const double a = (window.lo - center) / v;
  const double b = (window.hi - center) / v;
  double mass;
  if (a >= 0.0)
    mass = normal_sf(a) - normal_sf(b);
  else if (b <= 0.0)
    mass = normal_cdf(b) - normal_cdf(a);
  else
    mass = 1.0 - normal_sf(b) - normal_cdf(a);
  return std::log(mass);
}

double log_prior_z(Point z, const ParameterSpace& space) {
  if (!space.contains(z)) return -std::numeric_limits<double>::infinity();
  const double g = space.gamma;
  const double log_norm =
      std::log(g) + log_truncated_mass(0.0, {-space.S, space.S}, g);
  return normal_log_pdf(z.x / g) + normal_log_pdf(z.y / g) - 2.0 * log_norm;
}

double log_prior_psi(std::span<const double> psi, const ParameterSpace& space) {
  if (!space.contains(psi)) return -std::numeric_limits<double>::infinity();
  const double s = space.prior_std_psi;
  double total = 0.0;
  for (double v : psi) total += normal_log_pdf(v / s) - std::log(s);
  return total;
}

double sample_truncated_normal(double center, Interval window, double v, Rng& rng) {
  std::normal_distribution<double> step(0.0, 1.0);
  for (int attempt = 0; attempt < 64; ++attempt) {
    double x = center + v * step(rng);
    if (window.contains(x)) return x;
  }
  // Rejection is hopeless when v dwarfs the window; invert the CDF instead.
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double lo = normal_cdf((window.lo - center) / v);
  const double hi = normal_cdf((window.hi - center) / v);
  const double u = lo + (hi - lo) * unif(rng);
  const double x = center + v * normal_quantile(std::clamp(u, 1e-300, 1.0 - 1e-16));
  return std::clamp(x, window.lo, window.hi);
}

double log_q_ratio_z(Point from, Point to, double S, double v) {
  const Interval w{-S, S};
  return log_truncated_mass(from.x, w, v) + log_truncated_mass(from.y, w, v) -
         log_truncated_mass(to.x, w, v) - log_truncated_mass(to.y, w, v);
}

double log_q_ratio_psi(double from, double to, Interval bounds, double v) {
  return log_truncated_mass(from, bounds, v) - log_truncated_mass(to, bounds, v);
}

Proposal<Point> propose_z(Point z, double S, double v, Rng& rng) {
  const Interval w{-S, S};
  Point next{sample_truncated_normal(z.x, w, v, rng), sample_truncated_normal(z.y, w, v, rng)};
  return {next, log_q_ratio_z(z, next, S, v)};
}

Proposal<double> propose_psi(double psi_k, Interval bounds, double v, Rng& rng) {
  double next = sample_truncated_normal(psi_k, bounds, v, rng);
  return {next, log_q_ratio_psi(psi_k, next, bounds, v)};
}

double log_q_psi(double from, double to, Interval bounds, double v) {
  if (!bounds.contains(to)) return -std::numeric_limits<double>::infinity();
  return normal_log_pdf((to - from) / v) - std::log(v) - log_truncated_mass(from, bounds, v);
}

double log_q_z(Point from, Point to, double S, double v) {
  const Interval w{-S, S};
  return log_q_psi(from.x, to.x, w, v) + log_q_psi(from.y, to.y, w, v);
}

LinkConstants derived_constants(const LinkFunction& link, const ParameterSpace& space) {
  const double dmax = space.max_distance();
  const auto& b = space.psi_bounds;
  if (link.kind() == LinkKind::HoffLogit) {
    return {logistic(b[0].lo - dmax), logistic(b[0].hi), 0.25};
  }
  // The logit beta - e^theta d is increasing in beta and decreasing in theta
  // for d > 0, so the extremes sit at opposite corners of the bound box.
  const double slope_max = std::exp(b[1].hi);
  return {logistic(b[0].lo - slope_max * dmax), logistic(b[0].hi), 0.25 * slope_max};
}

}  // namespace nlpm

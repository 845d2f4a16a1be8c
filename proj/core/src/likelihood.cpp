#include "nlpm/likelihood.hpp"

#include "parallel.hpp"

namespace nlpm {

using detail::chunked_sum;
using detail::CompensatedSum;

void set_num_threads(int n) {
#ifdef NLPM_HAVE_OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

namespace {

const BoxGrid& require_grid(const LatentState& state) {
  if (!state.grid) throw ConfigError("noisy likelihood requested without a box grid");
  return *state.grid;
}

}  // namespace

// log p = eta + log(1 - p), so every pair contributes log(1 - p) and edges
// add their logit on top.
double exact_log_lik(const LatentState& state, const Network& net, const LinkFunction& link) {
  const LinkCoeffs c = link.coeffs(state.psi);
  const auto& z = state.z;
  const std::size_t n = z.size();
  return chunked_sum(n, [&](std::size_t i) {
    CompensatedSum row;
    for (std::size_t j = i + 1; j < n; ++j) row.add(-softplus(c.logit(distance(z[i], z[j]))));
    for (NodeId j : net.neighbors(static_cast<NodeId>(i)))
      if (j > i) row.add(c.logit(distance(z[i], z[j])));
    return row.value();
  });
}

double noisy_log_lik(const LatentState& state, const Network& /*net*/, const LinkFunction& link) {
  const BoxGrid& grid = require_grid(state);
  const LinkCoeffs c = link.coeffs(state.psi);
  const auto& z = state.z;
  const auto boxes = grid.occupied();
  const double twice = chunked_sum(z.size(), [&](std::size_t i) {
    const auto node = static_cast<NodeId>(i);
    const BoxId own = grid.box_of(node);
    CompensatedSum row;
    for (const auto& b : boxes) {
      const double others = b.count - (b.box == own ? 1.0 : 0.0);
      if (others > 0.0) row.add(-others * softplus(c.logit(distance(z[i], b.center))));
    }
    for (const auto& e : grid.xi(node))
      row.add(e.count * c.logit(distance(z[i], grid.center(e.box))));
    return row.value();
  });
  return 0.5 * twice;
}

double exact_log_lr_z(const LatentState& state, const Network& net, const LinkFunction& link,
                      NodeId i, Point z_new) {
  const LinkCoeffs c = link.coeffs(state.psi);
  const auto& z = state.z;
  const Point z_old = z[i];
  CompensatedSum acc;
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (j == i) continue;
    acc.add(softplus(c.logit(distance(z_old, z[j]))) - softplus(c.logit(distance(z_new, z[j]))));
  }
  for (NodeId j : net.neighbors(i))
    acc.add(-c.slope * (distance(z_new, z[j]) - distance(z_old, z[j])));
  return acc.value();
}

double noisy_log_lr_z(const LatentState& state, const Network& /*net*/, const LinkFunction& link,
                      NodeId i, Point z_new) {
  const BoxGrid& grid = require_grid(state);
  const LinkCoeffs c = link.coeffs(state.psi);
  const Point z_old = state.z[i];
  const BoxId own = grid.box_of(i);
  // zeta_i counts the other nodes of a box that are not neighbours of i; it
  // does not depend on where i itself sits, so numerator and denominator
  // share it.
  CompensatedSum acc;
  for (const auto& b : grid.occupied()) {
    const double others = b.count - (b.box == own ? 1.0 : 0.0);
    if (others > 0.0)
      acc.add(others * (softplus(c.logit(distance(z_old, b.center))) -
                        softplus(c.logit(distance(z_new, b.center)))));
  }
  for (const auto& e : grid.xi(i)) {
    const Point ctr = grid.center(e.box);
    acc.add(-c.slope * e.count * (distance(z_new, ctr) - distance(z_old, ctr)));
  }
  return acc.value();
}

double exact_log_lr_psi(const LatentState& state, const Network& net, const LinkFunction& link,
                        std::span<const double> psi_new) {
  const LinkCoeffs c0 = link.coeffs(state.psi);
  const LinkCoeffs c1 = link.coeffs(psi_new);
  const auto& z = state.z;
  const std::size_t n = z.size();
  return chunked_sum(n, [&](std::size_t i) {
    CompensatedSum row;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = distance(z[i], z[j]);
      row.add(softplus(c0.logit(d)) - softplus(c1.logit(d)));
    }
    for (NodeId j : net.neighbors(static_cast<NodeId>(i))) {
      if (j <= i) continue;
      const double d = distance(z[i], z[j]);
      row.add(c1.logit(d) - c0.logit(d));
    }
    return row.value();
  });
}

double noisy_log_lr_psi(const LatentState& state, const Network& /*net*/,
                        const LinkFunction& link,
                        std::span<const double> psi_new) {
  const BoxGrid& grid = require_grid(state);
  const LinkCoeffs c0 = link.coeffs(state.psi);
  const LinkCoeffs c1 = link.coeffs(psi_new);
  const auto& z = state.z;
  const auto boxes = grid.occupied();
  const double twice = chunked_sum(z.size(), [&](std::size_t i) {
    const auto node = static_cast<NodeId>(i);
    const BoxId own = grid.box_of(node);
    CompensatedSum row;
    for (const auto& b : boxes) {
      const double others = b.count - (b.box == own ? 1.0 : 0.0);
      if (others <= 0.0) continue;
      const double d = distance(z[i], b.center);
      row.add(others * (softplus(c0.logit(d)) - softplus(c1.logit(d))));
    }
    for (const auto& e : grid.xi(node)) {
      const double d = distance(z[i], grid.center(e.box));
      row.add(e.count * (c1.logit(d) - c0.logit(d)));
    }
    return row.value();
  });
  return 0.5 * twice;
}

}  // namespace nlpm

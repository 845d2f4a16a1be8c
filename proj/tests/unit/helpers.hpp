#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "nlpm/graph.hpp"
#include "nlpm/likelihood.hpp"
#include "nlpm/model.hpp"

namespace nlpm::testing {

struct Instance {
  Network net;
  LatentState state;
};

inline Point uniform_point(double S, Rng& rng) {
  std::uniform_real_distribution<double> u(-S, S);
  const double x = u(rng);
  return {x, u(rng)};
}

/// Uniform positions, uniform psi within the bounds, edges drawn from the model.
inline Instance random_instance(std::size_t n, const LinkFunction& link,
                                const ParameterSpace& space, Rng& rng) {
  Instance inst;
  for (std::size_t i = 0; i < n; ++i) inst.state.z.push_back(uniform_point(space.S, rng));
  for (const auto& iv : space.psi_bounds) {
    inst.state.psi.push_back(std::uniform_real_distribution<double>(iv.lo, iv.hi)(rng));
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      if (unit(rng) < link.prob(distance(inst.state.z[i], inst.state.z[j]), inst.state.psi)) {
        edges.emplace_back(i, j);
      }
    }
  }
  inst.net = Network::from_edges(n, edges);
  return inst;
}

/// Moderate parameter space where edge probabilities stay well inside (0, 1).
inline ParameterSpace moderate_space() {
  ParameterSpace s;
  s.psi_bounds = {{-1.0, 2.0}, {-0.5, 1.5}};
  return s;
}

// Oracles below evaluate the defining sums pair by pair with plain
// std::log of the probability, independently of the library's softplus form.

inline double pair_term(double p, bool edge) { return edge ? std::log(p) : std::log1p(-p); }

inline double prob(double beta, double slope, double d) {
  return 1.0 / (1.0 + std::exp(-(beta - slope * d)));
}

inline std::pair<double, double> intercept_slope(const LinkFunction& link,
                                                 const GlobalParams& psi) {
  if (link.kind() == LinkKind::HoffLogit) return {psi[0], 1.0};
  return {psi[0], std::exp(psi[1])};
}

inline double oracle_exact_log_lik(const Positions& z, const GlobalParams& psi,
                                   const Network& net, const LinkFunction& link) {
  const auto [a, s] = intercept_slope(link, psi);
  double total = 0.0;
  for (NodeId i = 0; i < z.size(); ++i) {
    for (NodeId j = i + 1; j < z.size(); ++j) {
      total += pair_term(prob(a, s, distance(z[i], z[j])), net.edge_indicator(i, j));
    }
  }
  return total;
}

/// Centre of the box holding p on an M x M grid over [-S, S]^2.
inline Point oracle_center(Point p, std::uint32_t M, double S) {
  const double b = 2.0 * S / M;
  auto idx = [&](double c) {
    auto k = static_cast<long long>(std::floor((c + S) / b));
    if (k > static_cast<long long>(M) - 1) k = M - 1;
    return static_cast<double>(k);
  };
  return {-S + (idx(p.x) + 0.5) * b, -S + (idx(p.y) + 0.5) * b};
}

inline double oracle_noisy_log_lik(const Positions& z, const GlobalParams& psi,
                                   const Network& net, const LinkFunction& link,
                                   std::uint32_t M, double S) {
  const auto [a, s] = intercept_slope(link, psi);
  double total = 0.0;
  for (NodeId i = 0; i < z.size(); ++i) {
    for (NodeId j = 0; j < z.size(); ++j) {
      if (i == j) continue;
      const double d = distance(z[i], oracle_center(z[j], M, S));
      total += pair_term(prob(a, s, d), net.edge_indicator(i, j));
    }
  }
  return 0.5 * total;
}

/// Node i's grid-approximated conditional log-likelihood at position zi.
inline double oracle_noisy_node(const Positions& z, NodeId i, Point zi, const GlobalParams& psi,
                                const Network& net, const LinkFunction& link, std::uint32_t M,
                                double S) {
  const auto [a, s] = intercept_slope(link, psi);
  double total = 0.0;
  for (NodeId j = 0; j < z.size(); ++j) {
    if (j == i) continue;
    const double d = distance(zi, oracle_center(z[j], M, S));
    total += pair_term(prob(a, s, d), net.edge_indicator(i, j));
  }
  return total;
}

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace nlpm::testing

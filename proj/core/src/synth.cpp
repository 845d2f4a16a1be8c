#include "nlpm/synth.hpp"

#include <ostream>
#include <random>

#include <nlohmann/json.hpp>

namespace nlpm {

std::string to_string(PositionLaw law) {
  return law == PositionLaw::Uniform ? "uniform" : "truncated-gaussian";
}

PositionLaw position_law_from_string(const std::string& name) {
  if (name == "uniform") return PositionLaw::Uniform;
  if (name == "truncated-gaussian" || name == "gaussian") return PositionLaw::TruncatedGaussian;
  throw ConfigError("unknown position law '" + name + "'");
}

void SynthSpec::validate() const {
  if (N < 2) throw ConfigError("synthetic networks need N >= 2");
  if (!(S > 0.0) || !(gamma > 0.0)) throw ConfigError("S and gamma must be positive");
}

GlobalParams SynthSpec::params(const LinkFunction& link) const {
  if (link.kind() == LinkKind::HoffLogit) return {beta};
  return {beta, theta};
}

SynthNetwork generate(const SynthSpec& spec, const LinkFunction& link) {
  spec.validate();
  Rng rng(spec.seed);
  SynthNetwork out;
  out.params = spec.params(link);

  out.positions.reserve(spec.N);
  std::uniform_real_distribution<double> uni(-spec.S, spec.S);
  const Interval side{-spec.S, spec.S};
  for (std::size_t i = 0; i < spec.N; ++i) {
    Point p;
    if (spec.law == PositionLaw::Uniform) {
      p.x = uni(rng);
      p.y = uni(rng);
    } else {
      p.x = sample_truncated_normal(0.0, side, spec.gamma, rng);
      p.y = sample_truncated_normal(0.0, side, spec.gamma, rng);
    }
    out.positions.push_back(p);
  }
  if (spec.pin_first_node_at_origin) out.positions[0] = {0.0, 0.0};

  const auto c = link.coeffs(out.params);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Edge> edges;
  for (NodeId i = 0; i < spec.N; ++i) {
    for (NodeId j = i + 1; j < spec.N; ++j) {
      const double p = logistic(c.logit(distance(out.positions[i], out.positions[j])));
      if (unit(rng) < p) edges.emplace_back(i, j);
    }
  }
  out.network = Network::from_edges(spec.N, edges);
  return out;
}

void write_positions_csv(std::span<const Point> z, std::ostream& out) {
  out << "node,x,y\n";
  out.precision(17);
  for (std::size_t i = 0; i < z.size(); ++i) out << i << ',' << z[i].x << ',' << z[i].y << '\n';
}

nlohmann::json to_json(const SynthSpec& spec, const LinkFunction& link) {
  nlohmann::json j;
  j["N"] = spec.N;
  j["link"] = to_string(link.kind());
  j["params"] = spec.params(link);
  j["param_names"] = link.param_names();
  j["law"] = to_string(spec.law);
  j["seed"] = spec.seed;
  j["pin_first_node_at_origin"] = spec.pin_first_node_at_origin;
  j["S"] = spec.S;
  j["gamma"] = spec.gamma;
  return j;
}

}  // namespace nlpm

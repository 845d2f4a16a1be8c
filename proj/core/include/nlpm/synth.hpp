#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "nlpm/graph.hpp"
#include "nlpm/model.hpp"
#include "nlpm/types.hpp"

namespace nlpm {

enum class PositionLaw {
  Uniform,            ///< uniform on [-S, S]^2
  TruncatedGaussian,  ///< N(0, gamma^2 I) truncated to [-S, S]^2
};

std::string to_string(PositionLaw law);
PositionLaw position_law_from_string(const std::string& name);

struct SynthSpec {
  std::size_t N = 200;
  double beta = 0.5;
  double theta = 1.0986122886681098;  // log 3
  PositionLaw law = PositionLaw::Uniform;
  std::uint64_t seed = 1;
  bool pin_first_node_at_origin = false;
  double S = 1.0;
  double gamma = 1.0;

  /// Throws ConfigError unless N >= 2 and S, gamma > 0.
  void validate() const;

  /// (beta, theta) for the two-parameter link, (beta) for the Hoff link.
  GlobalParams params(const LinkFunction& link) const;
};

struct SynthNetwork {
  Network network;
  Positions positions;
  GlobalParams params;
};

/// Positions first (node 0 optionally pinned at the origin), then one
/// Bernoulli draw per unordered pair in (i, j) lexicographic order.
SynthNetwork generate(const SynthSpec& spec, const LinkFunction& link);

/// Header "node,x,y".
void write_positions_csv(std::span<const Point> z, std::ostream& out);

nlohmann::json to_json(const SynthSpec& spec, const LinkFunction& link);

}  // namespace nlpm

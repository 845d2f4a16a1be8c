#pragma once

#include <array>
#include <cstddef>
#include <span>

#include "nlpm/graph.hpp"
#include "nlpm/model.hpp"
#include "nlpm/sampler.hpp"
#include "nlpm/types.hpp"

namespace nlpm {

struct ReferenceConfig {
  enum class Source { TruePositions, MapDraw };

  Positions points;
  Source source = Source::TruePositions;
  std::size_t draw_index = 0;  ///< index of the MAP draw when source == MapDraw
  double log_posterior = 0.0;  ///< exact log posterior of the MAP draw
};

/// y = R x + t with R orthogonal (rotation or reflection).
struct OrthogonalTransform {
  std::array<double, 4> R{1.0, 0.0, 0.0, 1.0};  ///< row-major 2x2
  Point t;

  Point apply(Point p) const {
    return {R[0] * p.x + R[1] * p.y + t.x, R[2] * p.x + R[3] * p.y + t.y};
  }
  double determinant() const { return R[0] * R[3] - R[1] * R[2]; }
};

/// Least-squares translation + orthogonal map taking `draw` onto `ref`.
/// Coincident inputs give the identity orthogonal part (translation only).
OrthogonalTransform procrustes_fit(std::span<const Point> draw, std::span<const Point> ref);

/// procrustes_fit applied to the draw.
Positions procrustes_align(std::span<const Point> draw, const ReferenceConfig& ref);
Positions procrustes_align(std::span<const Point> draw, std::span<const Point> ref);

/// sqrt(mean ||a_i - b_i||^2).
double rmse(std::span<const Point> a, std::span<const Point> b);

/// The stored draw with the highest exact log posterior (log-likelihood plus
/// log priors), earliest index on ties. Throws ConfigError if the sample holds
/// no latent draws.
ReferenceConfig map_draw(const ChainSample& sample, const Network& net, const LinkFunction& link,
                         const ParameterSpace& space);

ReferenceConfig true_reference(Positions truth);

/// Mean over draws of each draw aligned to the reference.
Positions aligned_posterior_mean(const ChainSample& sample, const ReferenceConfig& ref);

}  // namespace nlpm

#include "nlpm/align.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>

namespace nlpm {

namespace {

Eigen::Vector2d centroid(std::span<const Point> pts) {
  Eigen::Vector2d c = Eigen::Vector2d::Zero();
  for (const auto& p : pts) c += Eigen::Vector2d(p.x, p.y);
  return c / static_cast<double>(pts.size());
}

}  // namespace

OrthogonalTransform procrustes_fit(std::span<const Point> draw, std::span<const Point> ref) {
  if (draw.size() != ref.size())
    throw ConfigError("procrustes: " + std::to_string(draw.size()) + " points vs " +
                      std::to_string(ref.size()) + " reference points");
  if (draw.empty()) throw ConfigError("procrustes: empty configuration");

  const Eigen::Vector2d dc = centroid(draw);
  const Eigen::Vector2d rc = centroid(ref);
  Eigen::Matrix2d H = Eigen::Matrix2d::Zero();
  for (std::size_t i = 0; i < draw.size(); ++i)
    H += (Eigen::Vector2d(draw[i].x, draw[i].y) - dc) *
         (Eigen::Vector2d(ref[i].x, ref[i].y) - rc).transpose();

  Eigen::Matrix2d R = Eigen::Matrix2d::Identity();
  if (H.cwiseAbs().maxCoeff() > 1e-300) {
    Eigen::JacobiSVD<Eigen::Matrix2d> svd(H, Eigen::ComputeFullU | Eigen::ComputeFullV);
    // Reflections are allowed, so no determinant correction.
    R = svd.matrixV() * svd.matrixU().transpose();
  }
  const Eigen::Vector2d t = rc - R * dc;

  OrthogonalTransform T;
  T.R = {R(0, 0), R(0, 1), R(1, 0), R(1, 1)};
  T.t = {t.x(), t.y()};
  return T;
}

Positions procrustes_align(std::span<const Point> draw, std::span<const Point> ref) {
  const auto T = procrustes_fit(draw, ref);
  Positions out;
  out.reserve(draw.size());
  for (const auto& p : draw) out.push_back(T.apply(p));
  return out;
}

Positions procrustes_align(std::span<const Point> draw, const ReferenceConfig& ref) {
  return procrustes_align(draw, ref.points);
}

double rmse(std::span<const Point> a, std::span<const Point> b) {
  if (a.size() != b.size() || a.empty()) throw ConfigError("rmse: mismatched configurations");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double dx = a[i].x - b[i].x, dy = a[i].y - b[i].y;
    acc += dx * dx + dy * dy;
  }
  return std::sqrt(acc / static_cast<double>(a.size()));
}

ReferenceConfig map_draw(const ChainSample& sample, const Network& net, const LinkFunction& link,
                         const ParameterSpace& space) {
  if (sample.z_draws.empty()) throw ConfigError("map_draw: the chain stored no latent draws");
  ReferenceConfig best;
  best.source = ReferenceConfig::Source::MapDraw;
  bool found = false;
  for (std::size_t k = 0; k < sample.z_draws.size(); ++k) {
    LatentState s{sample.z_draws[k], sample.psi_draws[k], std::nullopt};
    double lp = exact_log_lik(s, net, link) + log_prior_psi(s.psi, space);
    for (const auto& p : s.z) lp += log_prior_z(p, space);
    if (!found || lp > best.log_posterior) {
      best.log_posterior = lp;
      best.draw_index = k;
      found = true;
    }
  }
  best.points = sample.z_draws[best.draw_index];
  return best;
}

ReferenceConfig true_reference(Positions truth) {
  ReferenceConfig ref;
  ref.points = std::move(truth);
  ref.source = ReferenceConfig::Source::TruePositions;
  return ref;
}

Positions aligned_posterior_mean(const ChainSample& sample, const ReferenceConfig& ref) {
  if (sample.z_draws.empty()) throw ConfigError("posterior mean: the chain stored no latent draws");
  Positions mean(ref.points.size());
  for (const auto& draw : sample.z_draws) {
    const auto aligned = procrustes_align(draw, ref);
    for (std::size_t i = 0; i < mean.size(); ++i) {
      mean[i].x += aligned[i].x;
      mean[i].y += aligned[i].y;
    }
  }
  const double n = static_cast<double>(sample.z_draws.size());
  for (auto& p : mean) {
    p.x /= n;
    p.y /= n;
  }
  return mean;
}

}  // namespace nlpm

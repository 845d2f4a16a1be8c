#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace nlpm {

using NodeId = std::uint32_t;

/// A point of the two-dimensional latent space.
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

using Positions = std::vector<Point>;

/// Global (non node-specific) parameters psi, e.g. (beta, theta).
using GlobalParams = std::vector<double>;

/// Every stochastic routine draws from this engine; replay is bit-exact for
/// a fixed seed on a fixed standard library.
using Rng = std::mt19937_64;

/// Invalid configuration or arguments (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unreadable or malformed input data (CLI exit code 3).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Internal bookkeeping no longer matches its definition (CLI exit code 4).
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace nlpm

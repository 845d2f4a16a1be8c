#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#ifdef NLPM_HAVE_OPENMP
#include <omp.h>
#endif

namespace nlpm::detail {

/// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline constexpr std::size_t kChunks = 64;

/// Sums row(i) for i in [0, n). Rows are dealt round-robin into a fixed set
/// of chunks (which also balances triangular loops) and the chunk partials are
/// combined in order, so the value is independent of the thread count.
template <typename RowFn>
double chunked_sum(std::size_t n, RowFn&& row) {
  std::array<double, kChunks> partial{};
#ifdef NLPM_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 1) if (n > 256)
#endif
  for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(kChunks); ++c) {
    CompensatedSum acc;
    for (std::size_t i = static_cast<std::size_t>(c); i < n; i += kChunks) acc.add(row(i));
    partial[static_cast<std::size_t>(c)] = acc.value();
  }
  CompensatedSum total;
  for (double p : partial) total.add(p);
  return total.value();
}

}  // namespace nlpm::detail

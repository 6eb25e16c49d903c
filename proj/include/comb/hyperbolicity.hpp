#ifndef COMB_HYPERBOLICITY_HPP
#define COMB_HYPERBOLICITY_HPP

#include <cstdint>
#include <vector>

#include "comb/path_metric.hpp"
#include "comb/sampling.hpp"

// Four-point hyperbolicity defect and its sampled maximum over the comb
// space under the path metric. The scan over quadruples is embarrassingly
// parallel; the OpenMP kernel and the serial reference produce identical
// results because every quadruple has its own random stream and the merge
// (max, histogram sum) is order-independent.

namespace comb {

enum class ExecMode { kSerial, kParallel };

// Smallest delta making x, y, z, w satisfy the Gromov-product inequality
// for every relabeling with basepoint w:
//   max over the three pairings of min(two products) - third, clamped at 0.
template <typename Point, typename Metric>
double four_point_defect(const Point& x, const Point& y, const Point& z,
                         const Point& w, Metric&& d) {
  const double xy = gromov_product_value(x, y, w, d);
  const double yz = gromov_product_value(y, z, w, d);
  const double xz = gromov_product_value(x, z, w, d);
  const double a = std::min(xy, yz) - xz;
  const double b = std::min(xy, xz) - yz;
  const double c = std::min(yz, xz) - xy;
  return std::max({0.0, a, b, c});
}

struct DeltaEstimate {
  double delta_max = 0.0;
  std::int64_t sample_count = 0;
  double radius_cap = 0.0;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  double bucket_width = 0.0;
  std::vector<std::int64_t> histogram;  // bucket k covers [k*w, (k+1)*w)

  int bucket_count() const { return int(histogram.size()); }
};

// Samples quadruples from the comb space up to radius_cap and evaluates the
// four-point defect under dist_X at the given portal spacing.
DeltaEstimate estimate_delta(const PathMetric& metric, std::int64_t sample_count,
                             double radius_cap, std::uint64_t seed,
                             ExecMode mode = ExecMode::kParallel);

// Control run: quadruples in a plane ball under the plane metric.
DeltaEstimate estimate_delta_plane(double radius, std::int64_t sample_count,
                                   std::uint64_t seed,
                                   ExecMode mode = ExecMode::kParallel);

}  // namespace comb

#endif  // COMB_HYPERBOLICITY_HPP

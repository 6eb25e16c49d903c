#ifndef COMB_BOUNDARY_HPP
#define COMB_BOUNDARY_HPP

#include <cstdint>
#include <vector>

#include "comb/hyperbolicity.hpp"
#include "comb/path_metric.hpp"

// Boundary at infinity of the comb space. Each spoke ray converges to one
// boundary point, so the boundary is enumerated by spoke ids. Gromov
// products between distinct boundary points are exact: far out on two hairs
// every connecting path exits through the attachment vertices, so the
// products stabilize at (N_a + N_b - d_X(v_a, v_b)) / 2.

namespace comb {

struct VisualMetricParams {
  double base = 2.718281828459045;  // the a > 1 of a^(-product)
};

// +infinity when xi == zeta.
double product_at_infinity(const PathMetric& metric, std::int64_t xi, std::int64_t zeta);

// Representative visual metric a^(-product); an infinite product maps to 0.
double visual_distance(const VisualMetricParams& params, double product);

// Dense matrix of pairwise visual distances for the given spokes.
std::vector<double> visual_matrix(const PathMetric& metric, const VisualMetricParams& params,
                                  const std::vector<std::int64_t>& spokes,
                                  ExecMode mode = ExecMode::kParallel);

struct BoundaryCover {
  std::vector<std::vector<std::int64_t>> clusters;  // partition by spoke id
  double eps_mesh = 0.0;
  double mesh = 0.0;     // max intra-cluster visual distance
  double min_gap = 0.0;  // min inter-cluster visual distance
  bool certified = false;

  std::size_t cluster_count() const { return clusters.size(); }
};

// Disjoint cover of the given boundary points with mesh < eps_mesh and a
// strictly positive gap between clusters: single-linkage at eps_mesh / 2,
// then clusters whose chained diameter still reaches eps_mesh are re-split
// at geometrically smaller thresholds. Certification recomputes mesh and
// gap from the raw matrix.
BoundaryCover zero_dim_cover(const std::vector<std::int64_t>& spokes,
                             const std::vector<double>& vis, double eps_mesh);

}  // namespace comb

#endif  // COMB_BOUNDARY_HPP

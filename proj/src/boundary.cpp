#include "comb/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace comb {

double product_at_infinity(const PathMetric& metric, std::int64_t xi, std::int64_t zeta) {
  if (xi == zeta) return std::numeric_limits<double>::infinity();
  const CombSpec& spec = metric.spec();
  const SpokeRay a = spec.spoke(xi);
  const SpokeRay b = spec.spoke(zeta);
  const double dab = metric.dist(
      LocatedPoint::in_sector(a.sector, a.attachment()),
      LocatedPoint::in_sector(b.sector, b.attachment()));
  return 0.5 * (a.attach_radius + b.attach_radius - dab);
}

double visual_distance(const VisualMetricParams& params, double product) {
  if (!(params.base > 1.0)) throw std::invalid_argument("visual metric base must be > 1");
  if (std::isinf(product)) return 0.0;
  if (!(product >= 0.0)) throw std::invalid_argument("Gromov product must be >= 0");
  return std::pow(params.base, -product);
}

std::vector<double> visual_matrix(const PathMetric& metric, const VisualMetricParams& params,
                                  const std::vector<std::int64_t>& spokes, ExecMode mode) {
  const std::int64_t n = std::int64_t(spokes.size());
  std::vector<double> vis(std::size_t(n) * std::size_t(n), 0.0);
  auto fill_row = [&](std::int64_t i) {
    for (std::int64_t j = i + 1; j < n; ++j) {
      const double d = visual_distance(
          params, product_at_infinity(metric, spokes[std::size_t(i)], spokes[std::size_t(j)]));
      vis[std::size_t(i * n + j)] = d;
      vis[std::size_t(j * n + i)] = d;
    }
  };
  if (mode == ExecMode::kParallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4)
#endif
    for (std::int64_t i = 0; i < n; ++i) fill_row(i);
  } else {
    for (std::int64_t i = 0; i < n; ++i) fill_row(i);
  }
  return vis;
}

namespace {

// Connected components of the graph {pairs with vis <= threshold} within the
// index subset, returned in order of smallest member.
std::vector<std::vector<int>> link_components(const std::vector<int>& subset,
                                              const std::vector<double>& vis,
                                              std::int64_t n, double threshold) {
  std::vector<std::vector<int>> comps;
  std::vector<char> used(subset.size(), 0);
  for (std::size_t start = 0; start < subset.size(); ++start) {
    if (used[start]) continue;
    std::vector<int> comp;
    std::vector<std::size_t> stack{start};
    used[start] = 1;
    while (!stack.empty()) {
      const std::size_t c = stack.back();
      stack.pop_back();
      comp.push_back(subset[c]);
      for (std::size_t o = 0; o < subset.size(); ++o) {
        if (used[o]) continue;
        const double d = vis[std::size_t(subset[c]) * std::size_t(n) + std::size_t(subset[o])];
        if (d <= threshold) {
          used[o] = 1;
          stack.push_back(o);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

double subset_diameter(const std::vector<int>& subset, const std::vector<double>& vis,
                       std::int64_t n) {
  double diam = 0.0;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    for (std::size_t j = i + 1; j < subset.size(); ++j) {
      diam = std::max(diam, vis[std::size_t(subset[i]) * std::size_t(n) + std::size_t(subset[j])]);
    }
  }
  return diam;
}

void refine(const std::vector<int>& subset, const std::vector<double>& vis, std::int64_t n,
            double eps_mesh, double threshold, std::vector<std::vector<int>>& out) {
  // A chained component can be wider than the linking threshold; split it at
  // smaller thresholds until every cluster is below the mesh target.
  for (auto& comp : link_components(subset, vis, n, threshold)) {
    if (comp.size() <= 1 || subset_diameter(comp, vis, n) < eps_mesh) {
      out.push_back(std::move(comp));
      continue;
    }
    double next = threshold * 0.5;
    // Pick a threshold that actually separates something, so the recursion
    // always terminates on finite point sets with distinct entries.
    while (link_components(comp, vis, n, next).size() <= 1) {
      next *= 0.5;
      if (next < 1e-300) throw std::runtime_error("zero_dim_cover: coincident boundary points");
    }
    refine(comp, vis, n, eps_mesh, next, out);
  }
}

}  // namespace

BoundaryCover zero_dim_cover(const std::vector<std::int64_t>& spokes,
                             const std::vector<double>& vis, double eps_mesh) {
  if (!(eps_mesh > 0.0)) throw std::invalid_argument("eps_mesh must be > 0");
  const std::int64_t n = std::int64_t(spokes.size());
  if (vis.size() != std::size_t(n) * std::size_t(n)) {
    throw std::invalid_argument("visual matrix size mismatch");
  }

  BoundaryCover cover;
  cover.eps_mesh = eps_mesh;
  if (n == 0) {
    cover.certified = true;
    cover.min_gap = std::numeric_limits<double>::infinity();
    return cover;
  }

  std::vector<int> all;
  all.resize(std::size_t(n));
  for (std::int64_t i = 0; i < n; ++i) all[std::size_t(i)] = int(i);
  std::vector<std::vector<int>> clusters;
  refine(all, vis, n, eps_mesh, 0.5 * eps_mesh, clusters);

  // Certify from the raw matrix.
  std::vector<int> owner(std::size_t(n), -1);
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    for (int i : clusters[c]) owner[std::size_t(i)] = int(c);
  }
  double mesh = 0.0;
  double gap = std::numeric_limits<double>::infinity();
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = i + 1; j < n; ++j) {
      const double d = vis[std::size_t(i * n + j)];
      if (owner[std::size_t(i)] == owner[std::size_t(j)]) {
        mesh = std::max(mesh, d);
      } else {
        gap = std::min(gap, d);
      }
    }
  }
  cover.mesh = mesh;
  cover.min_gap = clusters.size() <= 1 ? std::numeric_limits<double>::infinity() : gap;
  cover.certified = mesh < eps_mesh && cover.min_gap > 0.0;
  cover.clusters.reserve(clusters.size());
  for (const auto& comp : clusters) {
    std::vector<std::int64_t> ids;
    ids.reserve(comp.size());
    for (int i : comp) ids.push_back(spokes[std::size_t(i)]);
    cover.clusters.push_back(std::move(ids));
  }
  return cover;
}

}  // namespace comb

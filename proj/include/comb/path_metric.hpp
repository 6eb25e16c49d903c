#ifndef COMB_PATH_METRIC_HPP
#define COMB_PATH_METRIC_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "comb/comb_spec.hpp"

// Intrinsic path metric of the comb space. Distances inside one convex
// piece (a truncated sector, or a 1-D hair) are exact; paths that cross
// pieces bend only on gluing segments, which carry portal nodes at spacing
// <= epsilon. Hair points never appear in the base graph: every path from a
// hair exits through its attachment vertex, so a hair point at parameter t
// contributes an exact 1-D offset t - attach_radius.

namespace comb {

struct PathWitness {
  std::vector<LocatedPoint> polyline;
  double length = 0.0;
};

struct PortalNode {
  PolarPoint pos;
  int ray_index = 0;  // internal ray r between sectors r and r+1; 0 = origin
  double t = 0.0;     // radius along that ray
};

class PortalGraph {
 public:
  PortalGraph(const CombSpec& spec, double epsilon);

  const CombSpec& spec() const { return *spec_; }
  double epsilon() const { return epsilon_; }
  int node_count() const { return int(nodes_.size()); }
  const PortalNode& node(int i) const { return nodes_[std::size_t(i)]; }
  const std::vector<int>& sector_nodes(int n) const;  // 1-based
  const std::vector<std::pair<int, double>>& edges(int i) const {
    return adj_[std::size_t(i)];
  }
  std::size_t edge_count() const;
  bool connected() const;
  std::string provenance() const;

 private:
  const CombSpec* spec_;
  double epsilon_;
  std::vector<PortalNode> nodes_;
  std::vector<std::vector<int>> sector_nodes_;
  std::vector<std::vector<std::pair<int, double>>> adj_;
};

// Exact distance when both points lie on one piece: the plane metric inside
// a truncated sector (convex, so the geodesic stays inside), |t_p - t_q|
// along one hair. Absent otherwise.
std::optional<double> same_piece_dist(const CombSpec& spec, const LocatedPoint& p,
                                      const LocatedPoint& q);

class PathMetric {
 public:
  PathMetric(const CombSpec& spec, double epsilon);

  const CombSpec& spec() const { return graph_.spec(); }
  const PortalGraph& graph() const { return graph_; }
  double epsilon() const { return graph_.epsilon(); }

  double dist(const LocatedPoint& p, const LocatedPoint& q) const;
  std::pair<double, PathWitness> dist_witness(const LocatedPoint& p,
                                              const LocatedPoint& q) const;

 private:
  struct Reduced;
  Reduced reduce(const LocatedPoint& p) const;
  std::pair<double, PathWitness> solve(const LocatedPoint& p, const LocatedPoint& q,
                                       bool want_witness) const;

  PortalGraph graph_;
};

// Checks that two located points share a piece, and the exact length of the
// straight segment between them inside it (used by witness validation).
bool share_piece(const CombSpec& spec, const LocatedPoint& a, const LocatedPoint& b);
double segment_length(const CombSpec& spec, const LocatedPoint& a, const LocatedPoint& b);

// Smallest (lambda, c) with dist <= d_X <= lambda * dist + c over sampled
// pairs, minimizing lambda * mean(dist) + c over the feasible polygon.
struct QiConstants {
  double lambda = 1.0;
  double c = 0.0;
  std::int64_t sample_count = 0;
  std::uint64_t seed = 0;
};

QiConstants qi_constants(const PathMetric& metric, std::int64_t sample_count,
                         std::uint64_t seed);

}  // namespace comb

#endif  // COMB_PATH_METRIC_HPP

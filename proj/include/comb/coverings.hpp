#ifndef COMB_COVERINGS_HPP
#define COMB_COVERINGS_HPP

#include <cstdint>
#include <vector>

#include "comb/hyperbolicity.hpp"
#include "comb/path_metric.hpp"

// Finite-scale asymptotic-dimension certificates.
//
// Upper evidence: a constructive covering of the comb space by radial bands
// cut into staggered angular blocks plus alternating hair intervals, with a
// probed d-multiplicity certificate (target <= 3 = n + 1 for n = 2).
//
// Lower evidence: exact backtracking over two-family decompositions of
// finite nets, refuting (d, D)-decompositions of large sector balls.

namespace comb {

struct Region {
  enum class Kind { kBallAtOrigin, kSectorBall };
  Kind kind = Kind::kBallAtOrigin;
  double radius = 0.0;
  int sector = 0;  // kSectorBall: ball around inner_ball_center(sector)

  static Region ball_at_origin(double r) { return Region{Kind::kBallAtOrigin, r, 0}; }
  static Region sector_ball(int n, double r) { return Region{Kind::kSectorBall, r, n}; }
};

// Greedy farthest-point net: pairwise distances >= scale, covering radius
// over the probe pool certified < scale.
struct Net {
  std::vector<LocatedPoint> points;
  double scale = 0.0;
  std::vector<double> dmat;  // row-major pairwise d_X
  double covering_radius = 0.0;
  double min_pairwise = 0.0;
  std::int64_t probe_count = 0;

  std::size_t size() const { return points.size(); }
  double d(std::size_t i, std::size_t j) const { return dmat[i * points.size() + j]; }
};

// Dense deterministic sample of a region (also the covering-radius probe
// set), spacing <= scale / 2.
std::vector<LocatedPoint> region_probe_pool(const CombSpec& spec, const Region& region,
                                            double spacing);

Net build_net(const PathMetric& metric, const Region& region, double scale,
              ExecMode mode = ExecMode::kParallel);

// ---- Constructive covering -------------------------------------------------

// One coordinate box of a 2-D block inside a single sector.
struct BlockPart {
  int sector = 0;
  double r_lo = 0.0, r_hi = 0.0;
  double phi_lo = 0.0, phi_hi = 0.0;
};

struct CoverBlock {
  enum class Kind { kDiskCore, kSectorBand, kHairInterval };

  Kind kind = Kind::kSectorBand;
  int id = 0;
  int family = 0;  // alternating tag for hair intervals
  int band = 0;
  // 2-D geometry; ray-adjacent blocks of neighboring sectors are merged, so
  // a block may hold parts in several sectors.
  std::vector<BlockPart> parts;
  // kHairInterval
  std::int64_t spoke = -1;
  double t_lo = 0.0, t_hi = 0.0;
  // hairs whose attachment-adjacent interval [attach, attach + merged_len]
  // this 2-D block absorbed
  std::vector<std::int64_t> merged_hairs;
  double merged_len = 0.0;

  double diameter = 0.0;  // certified from witness points
};

struct Covering {
  double d = 0.0;
  std::vector<CoverBlock> blocks;
  double mesh = 0.0;
  int multiplicity = 0;       // max blocks met by a d-ball over probes
  double probe_spacing = 0.0;
  std::int64_t probe_count = 0;
  bool covers_probes = false; // every probe lies in some block
  double mesh_over_d = 0.0;
};

Covering build_cover(const CombSpec& spec, double d, ExecMode mode = ExecMode::kParallel);

// Multiplicity certificate for an explicit probe set.
int d_multiplicity(const CombSpec& spec, const std::vector<CoverBlock>& blocks, double d,
                   const std::vector<LocatedPoint>& probes,
                   ExecMode mode = ExecMode::kParallel);

// ---- Decomposition search --------------------------------------------------

struct DecompositionVerdict {
  enum class Kind { kSat, kUnsat, kUnknown };
  Kind kind = Kind::kUnknown;
  double d = 0.0;
  double D = 0.0;
  std::vector<int> coloring;  // family (0/1) per net point when kSat
  std::int64_t nodes_explored = 0;
  std::int64_t budget = 0;
};

// Exact backtracking over two-colorings of the net. Within a family, points
// closer than d merge into one block; a state dies when a block diameter
// exceeds D. kUnsat only after exhausting the whole space.
DecompositionVerdict decomposition_search(const Net& net, double d, double D,
                                          std::int64_t budget);

// Independent witness check: per family, blocks are the components of the
// graph of pairs < d; every block diameter must be <= D and distinct blocks
// of one family must be >= d apart.
bool verify_decomposition(const Net& net, const std::vector<int>& coloring, double d,
                          double D);

}  // namespace comb

#endif  // COMB_COVERINGS_HPP

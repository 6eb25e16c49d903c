#include "comb/coverings.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

namespace comb {

namespace {

constexpr double kTol = 1e-9;

void append_ring(const CombSpec& spec, int sector, double rho, double spacing,
                 std::vector<LocatedPoint>& out) {
  const SectorSpec& s = spec.sector(sector);
  if (rho <= kTol) return;
  const int steps = std::max(1, int(std::ceil(s.alpha * std::sinh(rho) / spacing)));
  for (int k = 0; k <= steps; ++k) {
    const double phi = s.theta_lo + s.alpha * (double(k) / double(steps));
    out.push_back(LocatedPoint::in_sector(sector, PolarPoint{rho, phi}));
  }
}

}  // namespace

std::vector<LocatedPoint> region_probe_pool(const CombSpec& spec, const Region& region,
                                            double spacing) {
  if (!(spacing > 0.0)) throw std::invalid_argument("probe spacing must be > 0");
  std::vector<LocatedPoint> pool;

  if (region.kind == Region::Kind::kBallAtOrigin) {
    if (!(region.radius > 0.0)) throw std::invalid_argument("region radius must be > 0");
    // d_X to the origin equals rho on sectors and t on hairs, so the ball is
    // a radial truncation of the whole space.
    pool.push_back(LocatedPoint::in_sector(1, PolarPoint{0.0, 0.0}));
    for (int n = 1; n <= spec.n_sectors(); ++n) {
      const double reff = std::min(spec.sector(n).N_n, region.radius);
      const int rings = std::max(1, int(std::ceil(reff / spacing)));
      for (int i = 1; i <= rings; ++i) {
        append_ring(spec, n, reff * (double(i) / double(rings)), spacing, pool);
      }
    }
    const double cap = std::min(spec.r_max(), region.radius);
    const std::int64_t S = spec.spoke_count();
    for (std::int64_t sId = 0; sId < S; ++sId) {
      const double attach = spec.spoke(sId).attach_radius;
      if (cap <= attach + kTol) continue;
      const int steps = std::max(1, int(std::ceil((cap - attach) / spacing)));
      for (int k = 1; k <= steps; ++k) {
        pool.push_back(
            LocatedPoint::on_spoke(sId, attach + (cap - attach) * (double(k) / double(steps))));
      }
    }
    return pool;
  }

  // Ball around the inscribed-ball center of one sector, fully inside it.
  const SectorSpec& s = spec.sector(region.sector);
  const double r = region.radius;
  if (!(r > 0.0)) throw std::invalid_argument("region radius must be > 0");
  if (r > double(region.sector) + kTol || s.center.rho + r > s.N_n + kTol) {
    throw std::invalid_argument("sector ball is not contained in its sector");
  }
  const PolarPoint c = s.center;
  pool.push_back(LocatedPoint::in_sector(region.sector, c));
  const int rsteps = std::max(1, int(std::ceil(2.0 * r / spacing)));
  for (int i = 0; i <= rsteps; ++i) {
    const double rho = c.rho - r + 2.0 * r * (double(i) / double(rsteps));
    if (rho <= kTol) continue;
    // Angular reach: cos(dphi) >= (cosh rho cosh rho_c - cosh r) / (sinh rho sinh rho_c).
    const double num = std::cosh(rho) * std::cosh(c.rho) - std::cosh(r);
    const double den = std::sinh(rho) * std::sinh(c.rho);
    if (den <= 0.0) continue;
    const double q = num / den;
    if (q > 1.0) continue;
    const double dphi_max = std::acos(std::max(q, -1.0));
    const double astep = spacing / std::sinh(rho);
    const int asteps = std::max(0, int(std::ceil(dphi_max / astep)));
    for (int j = -asteps; j <= asteps; ++j) {
      const PolarPoint p{rho, c.phi + double(j) * astep};
      if (dist(p, c) > r + kTol) continue;
      if (p.phi < s.theta_lo - kTol || p.phi > s.theta_hi + kTol) continue;
      pool.push_back(LocatedPoint::in_sector(region.sector, p));
    }
  }
  return pool;
}

Net build_net(const PathMetric& metric, const Region& region, double scale, ExecMode mode) {
  if (!(scale > 0.0)) throw std::invalid_argument("net scale must be > 0");
  const CombSpec& spec = metric.spec();
  // The pool doubles as the covering-radius probe set; diagonal grid spacing
  // stays below scale / 2.
  const std::vector<LocatedPoint> pool =
      region_probe_pool(spec, region, 0.5 * scale / std::sqrt(2.0));
  if (pool.empty()) throw std::invalid_argument("empty region");

  const std::size_t P = pool.size();
  std::vector<double> mind(P, std::numeric_limits<double>::infinity());
  std::vector<LocatedPoint> chosen;
  std::size_t next = 0;
  double next_gap = 0.0;

  auto relax_rows = [&](const LocatedPoint& c) {
    auto body = [&](std::int64_t i) {
      const double d = metric.dist(c, pool[std::size_t(i)]);
      if (d < mind[std::size_t(i)]) mind[std::size_t(i)] = d;
    };
    if (mode == ExecMode::kParallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64)
#endif
      for (std::int64_t i = 0; i < std::int64_t(P); ++i) body(i);
    } else {
      for (std::int64_t i = 0; i < std::int64_t(P); ++i) body(i);
    }
  };

  while (true) {
    chosen.push_back(pool[next]);
    relax_rows(pool[next]);
    next = 0;
    for (std::size_t i = 1; i < P; ++i) {
      if (mind[i] > mind[next]) next = i;
    }
    next_gap = mind[next];
    if (next_gap < scale) break;
  }

  Net net;
  net.points = std::move(chosen);
  net.scale = scale;
  net.covering_radius = next_gap;
  net.probe_count = std::int64_t(P);
  const std::size_t n = net.points.size();
  net.dmat.assign(n * n, 0.0);
  auto fill_row = [&](std::int64_t i) {
    for (std::size_t j = std::size_t(i) + 1; j < n; ++j) {
      const double d = metric.dist(net.points[std::size_t(i)], net.points[j]);
      net.dmat[std::size_t(i) * n + j] = d;
      net.dmat[j * n + std::size_t(i)] = d;
    }
  };
  if (mode == ExecMode::kParallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 2)
#endif
    for (std::int64_t i = 0; i < std::int64_t(n); ++i) fill_row(i);
  } else {
    for (std::int64_t i = 0; i < std::int64_t(n); ++i) fill_row(i);
  }
  net.min_pairwise = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      net.min_pairwise = std::min(net.min_pairwise, net.d(i, j));
    }
  }
  return net;
}

// ---- Constructive covering -------------------------------------------------

namespace {

// Exact-or-portal distances used by the certificate scans.
struct CoverContext {
  const CombSpec* spec = nullptr;
  std::unique_ptr<PathMetric> fallback;

  struct Reduced {
    PolarPoint eff;
    double offset = 0.0;
    int sectors[2] = {0, 0};
    int count = 0;
    std::int64_t on_spoke = -1;  // set when the point sits on a hair tail
    double t = 0.0;
  };

  Reduced reduce(const LocatedPoint& p) const {
    Reduced r;
    const LocatedPoint c = spec->canonical(p);
    if (c.kind == LocatedPoint::Kind::kInSector) {
      r.eff = c.pos;
    } else {
      const SpokeRay s = spec->spoke(c.spoke);
      r.eff = s.attachment();
      r.offset = c.t - s.attach_radius;
      r.on_spoke = c.spoke;
      r.t = c.t;
    }
    spec->sectors_containing(r.eff, r.sectors, r.count);
    return r;
  }

  double dist_reduced(const LocatedPoint& a, const Reduced& ra, const LocatedPoint& b,
                      const Reduced& rb) const {
    if (ra.on_spoke >= 0 && ra.on_spoke == rb.on_spoke) return std::fabs(ra.t - rb.t);
    for (int i = 0; i < ra.count; ++i) {
      for (int j = 0; j < rb.count; ++j) {
        if (ra.sectors[i] == rb.sectors[j]) {
          return ra.offset + rb.offset + dist(ra.eff, rb.eff);
        }
      }
    }
    return fallback->dist(a, b);
  }

  double dist_points(const LocatedPoint& a, const LocatedPoint& b) const {
    return dist_reduced(a, reduce(a), b, reduce(b));
  }
};

double radial_gap(double rho, double lo, double hi) {
  if (rho < lo) return lo - rho;
  if (rho > hi) return rho - hi;
  return 0.0;
}

// Lower bound for the distance from a plane point to anything with angle in
// [phi_lo, phi_hi]: the plane geodesic crosses the nearer bounding ray, and
// the path metric dominates the plane metric.
double angular_gap_lb(const PolarPoint& p, double phi_lo, double phi_hi) {
  if (p.phi >= phi_lo && p.phi <= phi_hi) return 0.0;
  const double dphi = p.phi < phi_lo ? phi_lo - p.phi : p.phi - phi_hi;
  const double folded = std::min(fold_angle(dphi), 0.5 * kPi);
  return std::asinh(std::sinh(p.rho) * std::sin(folded));
}

struct BlockGeometry {
  std::vector<std::pair<int, PolarPoint>> samples;  // (sector, boundary point)
  std::vector<LocatedPoint> witnesses;              // diameter certificate points
};

void sample_part(const BlockPart& part, double step, BlockGeometry& geom) {
  auto push = [&](double rho, double phi) {
    geom.samples.push_back({part.sector, PolarPoint{rho, phi}});
  };
  const int rsteps = std::max(1, int(std::ceil((part.r_hi - part.r_lo) / step)));
  for (int i = 0; i <= rsteps; ++i) {
    const double rho = part.r_lo + (part.r_hi - part.r_lo) * (double(i) / double(rsteps));
    push(rho, part.phi_lo);
    push(rho, part.phi_hi);
  }
  for (double rho : {part.r_lo, part.r_hi}) {
    if (rho <= kTol) continue;
    const double width = part.phi_hi - part.phi_lo;
    const int asteps = std::max(1, int(std::ceil(width * std::sinh(rho) / step)));
    for (int k = 0; k <= asteps; ++k) {
      push(rho, part.phi_lo + width * (double(k) / double(asteps)));
    }
  }
  for (double rho : {part.r_lo, part.r_hi}) {
    for (double frac : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const double phi = part.phi_lo + (part.phi_hi - part.phi_lo) * frac;
      geom.witnesses.push_back(LocatedPoint::in_sector(part.sector, PolarPoint{rho, phi}));
    }
  }
}

struct BuiltCover {
  std::vector<CoverBlock> blocks;
  std::vector<BlockGeometry> geometry;
};

BuiltCover construct_blocks(const CombSpec& spec, double d) {
  const double band_w = 4.0 * d;
  const int K = spec.n_sectors();
  BuiltCover out;

  // Band 0: one global core block up to radius 4d; without it a small ball
  // at the origin would meet one block per sector.
  {
    CoverBlock core;
    core.kind = CoverBlock::Kind::kDiskCore;
    core.band = 0;
    for (int n = 1; n <= K; ++n) {
      const SectorSpec& s = spec.sector(n);
      core.parts.push_back(BlockPart{n, 0.0, std::min(band_w, s.N_n), s.theta_lo, s.theta_hi});
    }
    out.blocks.push_back(std::move(core));
  }

  int max_band = 0;
  for (int n = 1; n <= K; ++n) {
    max_band = std::max(max_band, int(std::ceil(spec.sector(n).N_n / band_w)) - 1);
  }
  std::vector<std::vector<std::vector<int>>> band_sector_blocks(
      std::size_t(max_band) + 1, std::vector<std::vector<int>>(std::size_t(K) + 1));

  // Bands j >= 1, per sector. Angular grids refine dyadically between bands
  // (cut counts multiply by powers of two) and carry a half-width stagger,
  // so cuts of consecutive bands stay >= beta/2 apart in angle. Block widths
  // come from the band's inner radius: beta * sinh(r_lo) >= 8d.
  for (int n = 1; n <= K; ++n) {
    const SectorSpec& s = spec.sector(n);
    std::int64_t prev_K = 1;
    int prev_parity = 0;
    for (int j = 1; double(j) * band_w < s.N_n - kTol; ++j) {
      const double r_lo = double(j) * band_w;
      const double r_hi = std::min(double(j + 1) * band_w, s.N_n);
      const double needed = std::floor(s.alpha * std::sinh(r_lo) / (8.0 * d));
      std::int64_t Kj = prev_K;
      if (needed >= double(2 * prev_K)) {
        Kj = prev_K << std::int64_t(std::floor(std::log2(needed / double(prev_K))));
      }
      const int parity = Kj > prev_K ? 1 : 1 - prev_parity;
      const double beta = s.alpha / double(Kj);
      std::vector<double> cuts{s.theta_lo};
      if (Kj >= 2) {
        for (std::int64_t k = 0; k < Kj; ++k) {
          const double phi = s.theta_lo + beta * (double(k) + 0.5 * double(parity));
          if (phi > s.theta_lo + kTol && phi < s.theta_hi - kTol) cuts.push_back(phi);
        }
      }
      cuts.push_back(s.theta_hi);
      std::sort(cuts.begin(), cuts.end());
      for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
        CoverBlock b;
        b.kind = CoverBlock::Kind::kSectorBand;
        b.band = j;
        b.parts.push_back(BlockPart{n, r_lo, r_hi, cuts[c], cuts[c + 1]});
        band_sector_blocks[std::size_t(j)][std::size_t(n)].push_back(int(out.blocks.size()));
        out.blocks.push_back(std::move(b));
      }
      prev_K = Kj;
      prev_parity = parity;
    }
  }

  // Merge ray-adjacent blocks of neighboring sectors within each band: the
  // shared ray must not act as an angular cut, or four blocks would meet at
  // every band corner on it.
  std::vector<int> redirect(out.blocks.size());
  for (std::size_t i = 0; i < redirect.size(); ++i) redirect[i] = int(i);
  for (int j = 1; j <= max_band; ++j) {
    for (int r = 1; r < K; ++r) {
      const auto& left = band_sector_blocks[std::size_t(j)][std::size_t(r)];
      const auto& right = band_sector_blocks[std::size_t(j)][std::size_t(r) + 1];
      if (left.empty() || right.empty()) continue;
      int a = redirect[std::size_t(left.back())];
      int b = redirect[std::size_t(right.front())];
      if (a == b) continue;
      if (b < a) std::swap(a, b);
      for (auto& part : out.blocks[std::size_t(b)].parts) {
        out.blocks[std::size_t(a)].parts.push_back(part);
      }
      out.blocks[std::size_t(b)].parts.clear();
      for (std::size_t i = 0; i < redirect.size(); ++i) {
        if (redirect[i] == b) redirect[i] = a;
      }
    }
  }

  auto host_block = [&](int sector, int band, double phi) -> int {
    if (band == 0) return 0;
    for (int raw : band_sector_blocks[std::size_t(band)][std::size_t(sector)]) {
      const int id = redirect[std::size_t(raw)];
      for (const BlockPart& part : out.blocks[std::size_t(id)].parts) {
        if (part.sector == sector && phi >= part.phi_lo - kTol && phi <= part.phi_hi + kTol) {
          return id;
        }
      }
    }
    return -1;
  };

  // Hairs: the attachment-adjacent interval joins the 2-D block holding the
  // attachment; farther intervals alternate between two families.
  const std::int64_t S = spec.spoke_count();
  for (std::int64_t sid = 0; sid < S; ++sid) {
    const SpokeRay ray = spec.spoke(sid);
    const double A = ray.attach_radius;
    const double L = spec.r_max();
    const double merged_hi = std::min(A + band_w, L);

    const int j_att = A <= band_w + kTol ? 0 : std::min(int((A - kTol) / band_w), max_band);
    const int host = host_block(ray.sector, j_att, ray.angle);
    if (host < 0) throw std::logic_error("hair attachment not covered by a 2-D block");
    if (merged_hi > A + kTol) {
      out.blocks[std::size_t(host)].merged_hairs.push_back(sid);
      out.blocks[std::size_t(host)].merged_len =
          std::max(out.blocks[std::size_t(host)].merged_len, merged_hi - A);
    }

    int k = 1;
    for (double lo = merged_hi; lo < L - kTol; lo += band_w, ++k) {
      CoverBlock b;
      b.kind = CoverBlock::Kind::kHairInterval;
      b.family = (k % 2 == 1) ? 1 : 2;
      b.spoke = sid;
      b.t_lo = lo;
      b.t_hi = std::min(lo + band_w, L);
      out.blocks.push_back(std::move(b));
    }
  }

  // Drop blocks emptied by merging and renumber.
  std::vector<CoverBlock> packed;
  packed.reserve(out.blocks.size());
  for (auto& b : out.blocks) {
    if (b.kind != CoverBlock::Kind::kHairInterval && b.parts.empty()) continue;
    b.id = int(packed.size());
    packed.push_back(std::move(b));
  }
  out.blocks = std::move(packed);

  out.geometry.resize(out.blocks.size());
  const double step = d / 8.0;
  for (std::size_t i = 0; i < out.blocks.size(); ++i) {
    CoverBlock& b = out.blocks[i];
    BlockGeometry& g = out.geometry[i];
    for (const BlockPart& part : b.parts) sample_part(part, step, g);
    for (std::int64_t h : b.merged_hairs) {
      const double A = spec.spoke(h).attach_radius;
      g.witnesses.push_back(LocatedPoint::on_spoke(h, std::min(A + b.merged_len, spec.r_max())));
    }
    if (b.kind == CoverBlock::Kind::kHairInterval) {
      g.witnesses.push_back(LocatedPoint::on_spoke(b.spoke, b.t_lo));
      g.witnesses.push_back(LocatedPoint::on_spoke(b.spoke, b.t_hi));
    }
  }
  return out;
}

bool block_contains(const CombSpec& spec, const CoverBlock& b,
                    const CoverContext::Reduced& red) {
  if (red.on_spoke >= 0) {
    if (b.kind == CoverBlock::Kind::kHairInterval) {
      return b.spoke == red.on_spoke && red.t >= b.t_lo - kTol && red.t <= b.t_hi + kTol;
    }
    for (std::int64_t h : b.merged_hairs) {
      if (h == red.on_spoke) {
        return red.t <= spec.spoke(h).attach_radius + b.merged_len + kTol;
      }
    }
    return false;
  }
  if (b.kind == CoverBlock::Kind::kHairInterval) return false;
  for (const BlockPart& part : b.parts) {
    if (red.eff.rho >= part.r_lo - kTol && red.eff.rho <= part.r_hi + kTol &&
        red.eff.phi >= part.phi_lo - kTol && red.eff.phi <= part.phi_hi + kTol) {
      return true;
    }
  }
  return false;
}

double block_lower_bound(const CombSpec& spec, const CoverBlock& b, const PolarPoint& img) {
  if (b.kind == CoverBlock::Kind::kHairInterval) {
    const SpokeRay ray = spec.spoke(b.spoke);
    return std::max(radial_gap(img.rho, b.t_lo, b.t_hi),
                    angular_gap_lb(img, ray.angle, ray.angle));
  }
  double lb = std::numeric_limits<double>::infinity();
  for (const BlockPart& part : b.parts) {
    lb = std::min(lb, std::max(radial_gap(img.rho, part.r_lo, part.r_hi),
                               angular_gap_lb(img, part.phi_lo, part.phi_hi)));
  }
  for (std::int64_t h : b.merged_hairs) {
    const SpokeRay ray = spec.spoke(h);
    const double A = ray.attach_radius;
    lb = std::min(lb, std::max(radial_gap(img.rho, A, A + b.merged_len),
                               angular_gap_lb(img, ray.angle, ray.angle)));
  }
  return lb;
}

// Distance from a probe to a block via boundary samples and exact hair
// formulas; may exit early once <= threshold.
double block_distance(const CombSpec& spec, const CoverContext& ctx, const CoverBlock& b,
                      const BlockGeometry& geom, const LocatedPoint& probe,
                      const CoverContext::Reduced& red, double threshold) {
  double best = std::numeric_limits<double>::infinity();
  if (b.kind == CoverBlock::Kind::kHairInterval) {
    if (red.on_spoke == b.spoke) {
      return std::fabs(red.t - std::clamp(red.t, b.t_lo, b.t_hi));
    }
    const SpokeRay ray = spec.spoke(b.spoke);
    const LocatedPoint att = LocatedPoint::in_sector(ray.sector, ray.attachment());
    return ctx.dist_reduced(probe, red, att, ctx.reduce(att)) + (b.t_lo - ray.attach_radius);
  }

  for (std::int64_t h : b.merged_hairs) {
    double v;
    if (red.on_spoke == h) {
      const SpokeRay ray = spec.spoke(h);
      v = std::max(0.0, red.t - (ray.attach_radius + b.merged_len));
    } else {
      const SpokeRay ray = spec.spoke(h);
      const LocatedPoint att = LocatedPoint::in_sector(ray.sector, ray.attachment());
      v = ctx.dist_reduced(probe, red, att, ctx.reduce(att));
    }
    best = std::min(best, v);
    if (best <= threshold) return best;
  }
  for (const auto& [sector, sample] : geom.samples) {
    const LocatedPoint q = LocatedPoint::in_sector(sector, sample);
    best = std::min(best, ctx.dist_reduced(probe, red, q, ctx.reduce(q)));
    if (best <= threshold) return best;
  }
  return best;
}

struct MultiplicityResult {
  int multiplicity = 0;
  bool covers = true;
};

MultiplicityResult multiplicity_scan(const CombSpec& spec, const CoverContext& ctx,
                                     const BuiltCover& built, double d, double margin,
                                     const std::vector<LocatedPoint>& probes, ExecMode mode) {
  MultiplicityResult total;
  auto probe_count = [&](std::int64_t pi, MultiplicityResult& acc) {
    const LocatedPoint& probe = probes[std::size_t(pi)];
    const CoverContext::Reduced red = ctx.reduce(probe);
    const PolarPoint img = spec.plane_point(probe);
    int met = 0;
    bool inside = false;
    for (std::size_t bi = 0; bi < built.blocks.size(); ++bi) {
      const CoverBlock& b = built.blocks[bi];
      if (block_contains(spec, b, red)) {
        ++met;
        inside = true;
        continue;
      }
      if (block_lower_bound(spec, b, img) > d + margin) continue;
      const double v = block_distance(spec, ctx, b, built.geometry[bi], probe, red, d + margin);
      if (v <= d + margin) ++met;
    }
    acc.multiplicity = std::max(acc.multiplicity, met);
    if (!inside) acc.covers = false;
  };

  if (mode == ExecMode::kParallel) {
#ifdef _OPENMP
#pragma omp parallel
    {
      MultiplicityResult local;
#pragma omp for schedule(dynamic, 128) nowait
      for (std::int64_t pi = 0; pi < std::int64_t(probes.size()); ++pi) {
        probe_count(pi, local);
      }
#pragma omp critical(comb_multiplicity_merge)
      {
        total.multiplicity = std::max(total.multiplicity, local.multiplicity);
        total.covers = total.covers && local.covers;
      }
    }
#else
    for (std::int64_t pi = 0; pi < std::int64_t(probes.size()); ++pi) probe_count(pi, total);
#endif
  } else {
    for (std::int64_t pi = 0; pi < std::int64_t(probes.size()); ++pi) probe_count(pi, total);
  }
  return total;
}

BuiltCover rebuild_geometry(const CombSpec& spec, const std::vector<CoverBlock>& blocks,
                            double d) {
  BuiltCover built;
  built.blocks = blocks;
  built.geometry.resize(blocks.size());
  const double step = d / 8.0;
  for (std::size_t i = 0; i < built.blocks.size(); ++i) {
    CoverBlock& b = built.blocks[i];
    BlockGeometry& g = built.geometry[i];
    for (const BlockPart& part : b.parts) sample_part(part, step, g);
    for (std::int64_t h : b.merged_hairs) {
      const double A = spec.spoke(h).attach_radius;
      g.witnesses.push_back(LocatedPoint::on_spoke(h, std::min(A + b.merged_len, spec.r_max())));
    }
  }
  return built;
}

}  // namespace

int d_multiplicity(const CombSpec& spec, const std::vector<CoverBlock>& blocks, double d,
                   const std::vector<LocatedPoint>& probes, ExecMode mode) {
  if (!(d > 0.0)) throw std::invalid_argument("scale d must be > 0");
  BuiltCover built = rebuild_geometry(spec, blocks, d);
  CoverContext ctx;
  ctx.spec = &spec;
  const double fallback_eps = std::min(0.05, d / 8.0);
  ctx.fallback = std::make_unique<PathMetric>(spec, fallback_eps);
  const double margin = d / 16.0 + fallback_eps;
  return multiplicity_scan(spec, ctx, built, d, margin, probes, mode).multiplicity;
}

Covering build_cover(const CombSpec& spec, double d, ExecMode mode) {
  if (!(d > 0.0)) throw std::invalid_argument("scale d must be > 0");
  BuiltCover built = construct_blocks(spec, d);

  CoverContext ctx;
  ctx.spec = &spec;
  const double fallback_eps = std::min(0.05, d / 8.0);
  ctx.fallback = std::make_unique<PathMetric>(spec, fallback_eps);

  Covering cover;
  cover.d = d;
  cover.probe_spacing = 0.5 * d;

  for (std::size_t i = 0; i < built.blocks.size(); ++i) {
    CoverBlock& b = built.blocks[i];
    const auto& wit = built.geometry[i].witnesses;
    double diam = b.kind == CoverBlock::Kind::kHairInterval ? b.t_hi - b.t_lo : 0.0;
    for (std::size_t a = 0; a < wit.size(); ++a) {
      for (std::size_t c = a + 1; c < wit.size(); ++c) {
        diam = std::max(diam, ctx.dist_points(wit[a], wit[c]));
      }
    }
    b.diameter = diam;
    cover.mesh = std::max(cover.mesh, diam);
  }
  cover.mesh_over_d = cover.mesh / d;

  // Multiplicity over probes at spacing d/2. Sampled distances carry block
  // sampling and portal slack, so anything within d + margin counts as met;
  // overcounting keeps the certificate on the safe side.
  const std::vector<LocatedPoint> probes =
      region_probe_pool(spec, Region::ball_at_origin(spec.r_max()), 0.5 * d);
  cover.probe_count = std::int64_t(probes.size());
  const double margin = d / 16.0 + fallback_eps;
  const MultiplicityResult res = multiplicity_scan(spec, ctx, built, d, margin, probes, mode);
  cover.multiplicity = res.multiplicity;
  cover.covers_probes = res.covers;
  cover.blocks = std::move(built.blocks);
  return cover;
}

// ---- Decomposition search --------------------------------------------------

namespace {

// Proximity ordering: grow from point 0 toward the nearest unvisited point,
// so diameter violations surface early in the search.
std::vector<int> proximity_order(const Net& net) {
  const std::size_t n = net.size();
  std::vector<int> order;
  std::vector<char> used(n, 0);
  std::vector<double> near(n, std::numeric_limits<double>::infinity());
  order.reserve(n);
  int cur = 0;
  used[0] = 1;
  order.push_back(0);
  for (std::size_t step = 1; step < n; ++step) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!used[i]) near[i] = std::min(near[i], net.d(std::size_t(cur), i));
    }
    int best = -1;
    for (std::size_t i = 0; i < n; ++i) {
      if (!used[i] && (best < 0 || near[i] < near[std::size_t(best)])) best = int(i);
    }
    used[std::size_t(best)] = 1;
    order.push_back(best);
    cur = best;
  }
  return order;
}

struct SearchCtx {
  const Net* net = nullptr;
  double d = 0.0, D = 0.0;
  std::vector<int> order;
  std::vector<int> family;  // by original index, -1 unassigned
  std::int64_t nodes = 0;
  std::int64_t budget = 0;
  bool out_of_budget = false;
  std::vector<int> comp;  // scratch
  std::vector<char> seen; // scratch

  // The only candidate block that can newly violate the diameter cap is the
  // component containing the just-assigned point.
  bool component_ok(int pt) {
    const std::size_t n = net->size();
    comp.clear();
    std::fill(seen.begin(), seen.end(), 0);
    comp.push_back(pt);
    seen[std::size_t(pt)] = 1;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      const int u = comp[head];
      for (std::size_t v = 0; v < n; ++v) {
        if (seen[v] || family[v] != family[std::size_t(pt)]) continue;
        if (net->d(std::size_t(u), v) < d) {
          seen[v] = 1;
          comp.push_back(int(v));
        }
      }
    }
    for (std::size_t a = 0; a < comp.size(); ++a) {
      for (std::size_t b = a + 1; b < comp.size(); ++b) {
        if (net->d(std::size_t(comp[a]), std::size_t(comp[b])) > D) return false;
      }
    }
    return true;
  }

  bool rec(std::size_t depth) {
    if (out_of_budget) return false;
    if (depth == order.size()) return true;
    const int pt = order[depth];
    const int fams = depth == 0 ? 1 : 2;  // family-swap symmetry: pin the first point
    for (int f = 0; f < fams; ++f) {
      if (++nodes > budget) {
        out_of_budget = true;
        return false;
      }
      family[std::size_t(pt)] = f;
      if (component_ok(pt) && rec(depth + 1)) return true;
      family[std::size_t(pt)] = -1;
      if (out_of_budget) return false;
    }
    return false;
  }
};

}  // namespace

DecompositionVerdict decomposition_search(const Net& net, double d, double D,
                                          std::int64_t budget) {
  if (net.size() == 0) throw std::invalid_argument("empty net");
  if (!(budget > 0)) throw std::invalid_argument("budget must be > 0");
  SearchCtx ctx;
  ctx.net = &net;
  ctx.d = d;
  ctx.D = D;
  ctx.budget = budget;
  ctx.order = proximity_order(net);
  ctx.family.assign(net.size(), -1);
  ctx.seen.assign(net.size(), 0);
  ctx.comp.reserve(net.size());

  DecompositionVerdict v;
  v.d = d;
  v.D = D;
  v.budget = budget;
  const bool sat = ctx.rec(0);
  v.nodes_explored = ctx.nodes;
  if (sat) {
    v.kind = DecompositionVerdict::Kind::kSat;
    v.coloring = ctx.family;
    if (!verify_decomposition(net, v.coloring, d, D)) {
      throw std::logic_error("search produced a witness that fails verification");
    }
  } else if (ctx.out_of_budget) {
    v.kind = DecompositionVerdict::Kind::kUnknown;
  } else {
    v.kind = DecompositionVerdict::Kind::kUnsat;
  }
  return v;
}

bool verify_decomposition(const Net& net, const std::vector<int>& coloring, double d,
                          double D) {
  const std::size_t n = net.size();
  if (coloring.size() != n) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (coloring[i] != 0 && coloring[i] != 1) return false;
  }
  for (int f = 0; f < 2; ++f) {
    std::vector<int> pts;
    for (std::size_t i = 0; i < n; ++i) {
      if (coloring[i] == f) pts.push_back(int(i));
    }
    // Blocks = components of the < d graph.
    std::vector<int> block(pts.size(), -1);
    int nblocks = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (block[i] >= 0) continue;
      std::vector<std::size_t> stack{i};
      block[i] = nblocks;
      while (!stack.empty()) {
        const std::size_t u = stack.back();
        stack.pop_back();
        for (std::size_t w = 0; w < pts.size(); ++w) {
          if (block[w] >= 0) continue;
          if (net.d(std::size_t(pts[u]), std::size_t(pts[w])) < d) {
            block[w] = nblocks;
            stack.push_back(w);
          }
        }
      }
      ++nblocks;
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        const double dij = net.d(std::size_t(pts[i]), std::size_t(pts[j]));
        if (block[i] == block[j]) {
          if (dij > D) return false;  // block too wide
        } else {
          if (dij < d) return false;  // blocks of one family not d-separated
        }
      }
    }
  }
  return true;
}

}  // namespace comb

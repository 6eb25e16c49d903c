// Acceptance suite: one criterion per invocation (argv[1] in 1..8) or all
// when no argument is given. Each criterion prints a single PASS/FAIL line;
// the process exits nonzero if any requested criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "comb/boundary.hpp"
#include "comb/coverings.hpp"
#include "comb/hyperbolicity.hpp"
#include "comb/json_io.hpp"
#include "comb/path_metric.hpp"
#include "comb/svg_render.hpp"

#ifndef COMB_CLI_PATH
#define COMB_CLI_PATH "./comb"
#endif

namespace fs = std::filesystem;
using namespace comb;

namespace {

double secs() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void note(const std::string& what) {
    detail += (detail.empty() ? "" : "; ") + what;
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// ---- 1: construction invariants ------------------------------------------

Outcome criterion1() {
  Outcome out;
  const CombSpec spec = build(8, 0.0);
  for (int n = 1; n <= 8; ++n) {
    const SectorSpec& s = spec.sector(n);
    const double dlo = dist_to_radial_ray(s.center, s.theta_lo);
    const double dhi = dist_to_radial_ray(s.center, s.theta_hi);
    out.require(dlo >= double(n) - 1e-9, "center ray clearance lo, n=" + std::to_string(n));
    out.require(dhi >= double(n) - 1e-9, "center ray clearance hi, n=" + std::to_string(n));
    out.require(s.N_n == s.rho_n + double(n), "N = rho + n, n=" + std::to_string(n));
    const double piece = s.piece_arc_length();
    out.require(piece >= 0.5 && piece <= 1.0, "piece length, n=" + std::to_string(n));
    // uniform subdivision: sampled consecutive marks all give the same piece
    // (subtracting nearby angles and scaling by sinh(N) amplifies ulps, so
    // the sampled check carries cancellation slack; the formula above is the
    // strict certificate)
    const double slack = 8.0 * std::numeric_limits<double>::epsilon() * s.theta_hi *
                         std::sinh(s.N_n);
    const std::int64_t stride = std::max<std::int64_t>(1, s.pieces / 1000);
    for (std::int64_t k = 0; k + 1 <= s.pieces; k += stride) {
      const double w = (s.vertex_angle(k + 1) - s.vertex_angle(k)) * std::sinh(s.N_n);
      out.require(w >= 0.5 - slack && w <= 1.0 + slack,
                  "sampled piece, n=" + std::to_string(n));
      if (!out.pass) break;
    }
    out.require(std::fabs(s.theta_lo - kPi * (1.0 - std::ldexp(1.0, 1 - n))) <= 1e-12,
                "theta_lo closed form, n=" + std::to_string(n));
  }
  out.note("n=1..8, " + std::to_string(spec.spoke_count()) + " spokes at depth 8");
  return out;
}

// ---- 2: metric correctness -------------------------------------------------

Outcome criterion2() {
  Outcome out;
  const CombSpec spec = build(5, 10.0);
  const PathMetric metric(spec, 0.05);
  SpaceSampler sampler(spec, spec.r_max());

  // 10^3 same-piece pairs: exact convex-piece distances
  double worst_same = 0.0;
  for (int i = 0; i < 1000; ++i) {
    Rng rng = rng_for(201, std::uint64_t(i));
    const LocatedPoint p = sampler.sample(rng);
    LocatedPoint q;
    if (p.kind == LocatedPoint::Kind::kInSector) {
      const SectorSpec& s = spec.sector(p.sector);
      q = LocatedPoint::in_sector(
          p.sector, PolarPoint{rng.uniform(0.0, s.N_n), rng.uniform(s.theta_lo, s.theta_hi)});
    } else {
      const double attach = spec.spoke(p.spoke).attach_radius;
      q = LocatedPoint::on_spoke(p.spoke, rng.uniform(attach, spec.r_max()));
    }
    const auto exact = same_piece_dist(spec, p, q);
    if (!exact) continue;
    worst_same = std::max(worst_same, std::fabs(metric.dist(p, q) - *exact));
  }
  out.require(worst_same <= 1e-9, "same-piece exactness (worst " + fmt(worst_same) + ")");

  // 10^3 arbitrary pairs: never below the plane metric
  double worst_below = 0.0;
  for (int i = 0; i < 1000; ++i) {
    Rng rng = rng_for(202, std::uint64_t(i));
    const LocatedPoint p = sampler.sample(rng);
    const LocatedPoint q = sampler.sample(rng);
    const double dp = dist(spec.plane_point(p), spec.plane_point(q));
    worst_below = std::max(worst_below, dp - metric.dist(p, q));
  }
  out.require(worst_below <= 1e-9, "plane lower bound (excess " + fmt(worst_below) + ")");

  // refinement 0.05 -> 0.025 on 100 pairs: non-increasing, change <= 0.1
  const PathMetric fine(spec, 0.025);
  double worst_inc = 0.0, worst_change = 0.0;
  for (int i = 0; i < 100; ++i) {
    Rng rng = rng_for(203, std::uint64_t(i));
    const LocatedPoint p = sampler.sample(rng);
    const LocatedPoint q = sampler.sample(rng);
    const double c = metric.dist(p, q);
    const double f = fine.dist(p, q);
    worst_inc = std::max(worst_inc, f - c);
    worst_change = std::max(worst_change, std::fabs(c - f));
  }
  out.require(worst_inc <= 0.0, "refinement monotone (inc " + fmt(worst_inc) + ")");
  out.require(worst_change <= 0.1, "refinement change (" + fmt(worst_change) + ")");
  out.note("worst same-piece err " + fmt(worst_same) + ", refinement change " +
           fmt(worst_change));
  return out;
}

// ---- 3: visuality ----------------------------------------------------------

Outcome criterion3() {
  Outcome out;
  const CombSpec spec = build(5, 10.0);
  SpaceSampler sampler(spec, spec.r_max());
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    Rng rng = rng_for(301, std::uint64_t(i));
    const LocatedPoint p = sampler.sample(rng);
    worst = std::max(worst, spec.nearest_spoke(p).second);
  }
  out.require(worst <= 1.0 + 1e-6, "nearest-spoke distance");
  out.note("max over 10^4 points: " + fmt(worst));
  return out;
}

// ---- 4: hyperbolicity ------------------------------------------------------

Outcome criterion4() {
  Outcome out;
  const CombSpec spec = build(5, 10.0);
  const PathMetric metric(spec, 0.1);
  const DeltaEstimate cap20 = estimate_delta(metric, 100000, 20.0, 401);
  out.require(std::isfinite(cap20.delta_max), "finite delta at cap 20");
  const DeltaEstimate cap10 = estimate_delta(metric, 100000, 10.0, 401);
  out.require(cap20.delta_max <= cap10.delta_max + 1.0,
              "plateau: cap20 " + fmt(cap20.delta_max) + " vs cap10 " + fmt(cap10.delta_max));
  const DeltaEstimate plane = estimate_delta_plane(10.0, 10000, 401);
  out.require(plane.delta_max <= 1.0, "plane control " + fmt(plane.delta_max));
  out.note("delta_max cap20 " + fmt(cap20.delta_max) + ", cap10 " + fmt(cap10.delta_max) +
           ", plane " + fmt(plane.delta_max));
  return out;
}

// ---- 5: boundary dimension 0 ----------------------------------------------

Outcome criterion5() {
  Outcome out;
  const CombSpec spec = build(5, 10.0);
  const PathMetric metric(spec, 0.1);
  std::vector<std::int64_t> spokes;
  for (std::int64_t i = 0; i < 200; ++i) spokes.push_back(i);
  const std::vector<double> vis = visual_matrix(metric, VisualMetricParams{}, spokes);
  std::size_t clusters_at_finest = 0;
  for (int k = 1; k <= 6; ++k) {
    const double eps = std::ldexp(1.0, -k);
    const BoundaryCover cover = zero_dim_cover(spokes, vis, eps);
    out.require(cover.certified, "cover certified at 2^-" + std::to_string(k));
    out.require(cover.mesh < eps, "mesh at 2^-" + std::to_string(k));
    out.require(cover.min_gap > 0.0, "gap at 2^-" + std::to_string(k));
    clusters_at_finest = cover.cluster_count();
  }

  // hair-exit products match finite-ray Gromov products to 2 epsilon
  const LocatedPoint origin = LocatedPoint::in_sector(1, PolarPoint{0.0, 0.0});
  double worst = 0.0;
  for (int i = 0; i < 25; ++i) {
    Rng rng = rng_for(501, std::uint64_t(i));
    const std::int64_t a = std::int64_t(rng.next_u64() % 200);
    const std::int64_t b = std::int64_t(rng.next_u64() % 200);
    if (a == b) continue;
    const double limit = product_at_infinity(metric, a, b);
    const LocatedPoint pa = LocatedPoint::on_spoke(a, spec.spoke(a).attach_radius + 5.0);
    const LocatedPoint pb = LocatedPoint::on_spoke(b, spec.spoke(b).attach_radius + 6.0);
    const double finite = 0.5 * (metric.dist(pa, origin) + metric.dist(pb, origin) -
                                 metric.dist(pa, pb));
    worst = std::max(worst, std::fabs(finite - limit));
  }
  out.require(worst <= 2.0 * metric.epsilon(),
              "hair-exit stabilization (" + fmt(worst) + ")");
  out.note("6 scales certified on 200 boundary points; finest has " +
           std::to_string(clusters_at_finest) + " clusters; stabilization err " + fmt(worst));
  return out;
}

// ---- 6: asdim upper evidence ----------------------------------------------

Outcome criterion6() {
  Outcome out;
  const CombSpec spec = build(3, 10.0);
  std::string meshes;
  for (double d : {0.5, 1.0, 2.0}) {
    const Covering cover = build_cover(spec, d);
    out.require(cover.multiplicity <= 3,
                "multiplicity at d=" + fmt(d) + " is " + std::to_string(cover.multiplicity));
    out.require(cover.covers_probes, "coverage at d=" + fmt(d));
    out.require(std::isfinite(cover.mesh) && cover.mesh > 0.0, "mesh finite at d=" + fmt(d));
    meshes += (meshes.empty() ? "" : ", ") + ("d=" + fmt(d) + " mesh=" + fmt(cover.mesh) +
                                              " mult=" + std::to_string(cover.multiplicity));
  }
  out.note(meshes);
  return out;
}

// ---- 7: asdim lower evidence ----------------------------------------------

// Random finite metric instance: points of a plane ball of radius 3 under
// the hyperbolic metric.
Net planar_instance(Rng& rng, const CombSpec& spec, std::size_t n) {
  std::vector<PolarPoint> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back(sample_plane_ball(rng, 3.0));
  Net net;
  net.scale = 1.0;
  net.dmat.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    net.points.push_back(LocatedPoint::in_sector(4, spec.sector(4).center));
    for (std::size_t j = 0; j < n; ++j) {
      net.dmat[i * n + j] = dist(pts[i], pts[j]);
    }
  }
  return net;
}

bool oracle_decomposable(const Net& net, double d, double D) {
  const std::size_t n = net.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << (n - 1)); ++mask) {
    std::vector<int> coloring(n, 0);
    for (std::size_t i = 1; i < n; ++i) coloring[i] = int((mask >> (i - 1)) & 1);
    if (verify_decomposition(net, coloring, d, D)) return true;
  }
  return false;
}

Outcome criterion7() {
  Outcome out;
  const CombSpec spec = build(4, 10.0);

  // oracle equivalence on 50 random instances of <= 18 points
  int discrepancies = 0;
  for (int inst = 0; inst < 50; ++inst) {
    Rng rng = rng_for(701, std::uint64_t(inst));
    const std::size_t n = 4 + std::size_t(rng.next_u64() % 15);  // 4..18
    Net net = planar_instance(rng, spec, n);
    const double d = rng.uniform(0.5, 2.5);
    const double D = rng.uniform(0.5, 3.0);
    const DecompositionVerdict v = decomposition_search(net, d, D, 50000000);
    if (v.kind == DecompositionVerdict::Kind::kUnknown) {
      ++discrepancies;
      continue;
    }
    const bool sat = v.kind == DecompositionVerdict::Kind::kSat;
    if (sat != oracle_decomposable(net, d, D)) ++discrepancies;
    if (sat && !verify_decomposition(net, v.coloring, d, D)) ++discrepancies;
  }
  out.require(discrepancies == 0,
              "oracle equivalence (" + std::to_string(discrepancies) + " discrepancies)");

  // the headline instance: unit net of B(center_4, 3), d = 2, D = 2
  const PathMetric metric(spec, 0.05);
  const Net net = build_net(metric, Region::sector_ball(4, 3.0), 1.0);
  const DecompositionVerdict v = decomposition_search(net, 2.0, 2.0, 10000000);
  const char* verdict = v.kind == DecompositionVerdict::Kind::kSat     ? "SAT"
                        : v.kind == DecompositionVerdict::Kind::kUnsat ? "UNSAT"
                                                                       : "UNKNOWN";
  if (v.kind == DecompositionVerdict::Kind::kSat) {
    out.require(verify_decomposition(net, v.coloring, 2.0, 2.0), "SAT witness verification");
  }
  out.note(std::string("B(center_4,3) unit net (") + std::to_string(net.size()) +
           " pts): verdict " + verdict + " after " + std::to_string(v.nodes_explored) +
           " nodes");
  return out;
}

// ---- 8: reproducibility and rendering --------------------------------------

Outcome criterion8() {
  Outcome out;
  const std::string cli = COMB_CLI_PATH;
  const fs::path base = fs::temp_directory_path() / "comb_acceptance8";
  fs::remove_all(base);
  fs::create_directories(base);

  auto run = [&](const std::string& args) {
    const std::string cmd = cli + " " + args;
    return std::system(cmd.c_str());
  };

  const std::string common =
      " --sectors 3 --hair 10 --samples 2000 --seed 5 --epsilon 0.1 --budget 200000 --out ";
  const fs::path run1 = base / "run1";
  const fs::path run2 = base / "run2";
  out.require(run("certify-all" + common + run1.string() + " > /dev/null") == 0,
              "certify-all run 1 exit code");
  out.require(run("certify-all" + common + run2.string() + " > /dev/null") == 0,
              "certify-all run 2 exit code");

  int compared = 0;
  if (fs::exists(run1) && fs::exists(run2)) {
    for (const auto& entry : fs::directory_iterator(run1)) {
      const fs::path other = run2 / entry.path().filename();
      out.require(fs::exists(other), "missing " + other.string());
      if (!fs::exists(other)) continue;
      const std::string a = read_file(entry.path().string());
      const std::string b = read_file(other.string());
      out.require(a == b, "bundle file differs: " + entry.path().filename().string());
      ++compared;
    }
  }
  out.require(compared >= 9, "bundle has >= 9 files (saw " + std::to_string(compared) + ")");

  // render on build(4): element counts match the construction
  const CombSpec spec4 = build(4, 10.0);
  const fs::path svg_path = base / "comb4.svg";
  out.require(run("render --sectors 4 --hair 10 --out " + svg_path.string()) == 0,
              "render exit code");
  const std::string svg = read_file(svg_path.string());
  auto count = [&](const std::string& needle) {
    std::size_t c = 0;
    for (std::size_t at = svg.find(needle); at != std::string::npos;
         at = svg.find(needle, at + needle.size())) {
      ++c;
    }
    return c;
  };
  out.require(count("class=\"spoke\"") == std::size_t(spec4.spoke_count()),
              "svg spoke count");
  out.require(count("class=\"sector\"") == 4, "svg sector count");
  out.require(count("class=\"arc\"") == 4, "svg arc count");
  const std::string svg_again = render_svg(spec4);
  out.require(svg == svg_again, "render determinism");
  out.note(std::to_string(compared) + " bundle files byte-identical; svg elements: " +
           std::to_string(spec4.spoke_count()) + " spokes");
  return out;
}

struct Criterion {
  int id;
  const char* name;
  Outcome (*fn)();
};

const Criterion kCriteria[] = {
    {1, "construction invariants (depth 1..8)", criterion1},
    {2, "path-metric correctness", criterion2},
    {3, "visuality with D = 1", criterion3},
    {4, "four-point hyperbolicity", criterion4},
    {5, "boundary dimension 0", criterion5},
    {6, "covering multiplicity <= 3", criterion6},
    {7, "decomposition lower bound", criterion7},
    {8, "reproducibility and rendering", criterion8},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);
  bool all_pass = true;
  for (const Criterion& c : kCriteria) {
    if (only != 0 && c.id != only) continue;
    const double t0 = secs();
    Outcome out;
    try {
      out = c.fn();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    const double dt = secs() - t0;
    std::printf("[%s] criterion %d: %s (%.1fs)%s%s\n", out.pass ? "PASS" : "FAIL", c.id,
                c.name, dt, out.detail.empty() ? "" : " -- ", out.detail.c_str());
    std::fflush(stdout);
    all_pass = all_pass && out.pass;
  }
  return all_pass ? 0 : 1;
}

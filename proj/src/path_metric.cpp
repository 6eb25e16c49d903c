#include "comb/path_metric.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include "comb/sampling.hpp"

namespace comb {

namespace {

// Power-of-two subdivision keeps node sets nested when epsilon halves, which
// makes dist_X non-increasing under refinement.
std::int64_t portal_interval_count(double length, double epsilon) {
  if (length <= epsilon) return 1;
  return std::int64_t(1) << int(std::ceil(std::log2(length / epsilon)));
}

// Ordering key for query endpoints; running Dijkstra from the smaller
// endpoint makes dist(p, q) and dist(q, p) bit-identical.
std::array<double, 4> endpoint_key(const LocatedPoint& p) {
  if (p.kind == LocatedPoint::Kind::kInSector) {
    return {0.0, double(p.sector), p.pos.rho, p.pos.phi};
  }
  return {1.0, double(p.spoke), p.t, 0.0};
}

}  // namespace

PortalGraph::PortalGraph(const CombSpec& spec, double epsilon) : spec_(&spec), epsilon_(epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("portal spacing epsilon must lie in (0, 1]");
  }
  const int K = spec.n_sectors();

  nodes_.push_back(PortalNode{PolarPoint{0.0, 0.0}, 0, 0.0});  // origin
  std::vector<std::vector<int>> ray_nodes;  // ray r -> node ids
  ray_nodes.resize(std::size_t(K));
  for (int r = 1; r <= K - 1; ++r) {
    const double angle = spec.sector(r).theta_hi;
    const double length = spec.sector(r).N_n;  // shared segment [0, N_r]
    const std::int64_t m = portal_interval_count(length, epsilon);
    for (std::int64_t k = 1; k <= m; ++k) {
      const double t = length * (double(k) / double(m));
      ray_nodes[std::size_t(r)].push_back(int(nodes_.size()));
      nodes_.push_back(PortalNode{PolarPoint{t, angle}, r, t});
    }
  }

  sector_nodes_.assign(std::size_t(K) + 1, {});
  for (int n = 1; n <= K; ++n) {
    auto& list = sector_nodes_[std::size_t(n)];
    list.push_back(0);
    if (n >= 2) {
      const auto& left = ray_nodes[std::size_t(n) - 1];
      list.insert(list.end(), left.begin(), left.end());
    }
    if (n <= K - 1) {
      const auto& right = ray_nodes[std::size_t(n)];
      list.insert(list.end(), right.begin(), right.end());
    }
  }

  // Complete connection inside each sector; pieces are convex, so each edge
  // weight is the exact plane distance.
  adj_.assign(nodes_.size(), {});
  for (int n = 1; n <= K; ++n) {
    const auto& list = sector_nodes_[std::size_t(n)];
    for (std::size_t i = 0; i < list.size(); ++i) {
      for (std::size_t j = i + 1; j < list.size(); ++j) {
        const int u = list[i];
        const int v = list[j];
        const double w = dist(nodes_[std::size_t(u)].pos, nodes_[std::size_t(v)].pos);
        adj_[std::size_t(u)].push_back({v, w});
        adj_[std::size_t(v)].push_back({u, w});
      }
    }
  }
  // Node pairs on a shared ray were added once per adjacent sector.
  for (auto& list : adj_) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
}

const std::vector<int>& PortalGraph::sector_nodes(int n) const {
  if (n < 1 || n >= int(sector_nodes_.size())) {
    throw std::out_of_range("sector index out of range");
  }
  return sector_nodes_[std::size_t(n)];
}

std::size_t PortalGraph::edge_count() const {
  std::size_t total = 0;
  for (const auto& list : adj_) total += list.size();
  return total / 2;
}

bool PortalGraph::connected() const {
  std::vector<char> seen(nodes_.size(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (const auto& [v, w] : adj_[std::size_t(u)]) {
      if (!seen[std::size_t(v)]) {
        seen[std::size_t(v)] = 1;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  return reached == nodes_.size();
}

std::string PortalGraph::provenance() const {
  return spec_->content_key() + "#eps=" + std::to_string(epsilon_);
}

std::optional<double> same_piece_dist(const CombSpec& spec, const LocatedPoint& p,
                                      const LocatedPoint& q) {
  if (!spec.contains(p) || !spec.contains(q)) {
    throw std::invalid_argument("same_piece_dist: point not in the comb space");
  }
  if (p.kind == LocatedPoint::Kind::kOnSpoke && q.kind == LocatedPoint::Kind::kOnSpoke &&
      p.spoke == q.spoke) {
    return std::fabs(p.t - q.t);
  }
  const LocatedPoint cp = spec.canonical(p);
  const LocatedPoint cq = spec.canonical(q);
  if (cp.kind != LocatedPoint::Kind::kInSector || cq.kind != LocatedPoint::Kind::kInSector) {
    return std::nullopt;
  }
  int sp[2], sq[2];
  int np = 0, nq = 0;
  spec.sectors_containing(cp.pos, sp, np);
  spec.sectors_containing(cq.pos, sq, nq);
  for (int i = 0; i < np; ++i) {
    for (int j = 0; j < nq; ++j) {
      if (sp[i] == sq[j]) return dist(cp.pos, cq.pos);
    }
  }
  return std::nullopt;
}

bool share_piece(const CombSpec& spec, const LocatedPoint& a, const LocatedPoint& b) {
  if (a.kind == LocatedPoint::Kind::kOnSpoke && b.kind == LocatedPoint::Kind::kOnSpoke &&
      a.spoke == b.spoke) {
    return true;
  }
  return same_piece_dist(spec, a, b).has_value();
}

double segment_length(const CombSpec& spec, const LocatedPoint& a, const LocatedPoint& b) {
  if (a.kind == LocatedPoint::Kind::kOnSpoke && b.kind == LocatedPoint::Kind::kOnSpoke &&
      a.spoke == b.spoke) {
    return std::fabs(a.t - b.t);
  }
  const auto d = same_piece_dist(spec, a, b);
  if (!d) throw std::invalid_argument("segment endpoints do not share a piece");
  return *d;
}

struct PathMetric::Reduced {
  LocatedPoint original;
  LocatedPoint eff;     // canonical point on the 2-D part
  double offset = 0.0;  // 1-D hair tail length
  bool has_tail = false;
};

PathMetric::PathMetric(const CombSpec& spec, double epsilon) : graph_(spec, epsilon) {
  if (!graph_.connected()) {
    throw std::runtime_error("portal graph is disconnected (construction bug)");
  }
}

PathMetric::Reduced PathMetric::reduce(const LocatedPoint& p) const {
  const CombSpec& spec = graph_.spec();
  Reduced r;
  r.original = p;
  const LocatedPoint c = spec.canonical(p);
  if (c.kind == LocatedPoint::Kind::kInSector) {
    r.eff = c;
    return r;
  }
  // Point on a hair: any path leaves through the attachment vertex.
  const SpokeRay s = spec.spoke(c.spoke);
  r.eff = spec.canonical(LocatedPoint::in_sector(s.sector, s.attachment()));
  r.offset = c.t - s.attach_radius;
  r.has_tail = true;
  return r;
}

double PathMetric::dist(const LocatedPoint& p, const LocatedPoint& q) const {
  return solve(p, q, /*want_witness=*/false).first;
}

std::pair<double, PathWitness> PathMetric::dist_witness(const LocatedPoint& p,
                                                        const LocatedPoint& q) const {
  return solve(p, q, /*want_witness=*/true);
}

std::pair<double, PathWitness> PathMetric::solve(const LocatedPoint& p,
                                                 const LocatedPoint& q,
                                                 bool want_witness) const {
  const CombSpec& spec = graph_.spec();
  if (endpoint_key(q) < endpoint_key(p)) {
    auto [d, w] = solve(q, p, want_witness);
    std::reverse(w.polyline.begin(), w.polyline.end());
    return {d, std::move(w)};
  }

  PathWitness witness;
  auto emit = [&](const LocatedPoint& lp) {
    if (want_witness) {
      if (!witness.polyline.empty()) {
        const LocatedPoint& last = witness.polyline.back();
        const PolarPoint a = spec.plane_point(last);
        const PolarPoint b = spec.plane_point(lp);
        if (last.kind == lp.kind && a.rho == b.rho && a.phi == b.phi) return;
      }
      witness.polyline.push_back(lp);
    }
  };

  // Exact 1-D branch: both points on one hair.
  if (p.kind == LocatedPoint::Kind::kOnSpoke && q.kind == LocatedPoint::Kind::kOnSpoke &&
      p.spoke == q.spoke) {
    if (!spec.contains(p) || !spec.contains(q)) {
      throw std::invalid_argument("dist_X: point not in the comb space");
    }
    emit(p);
    emit(q);
    witness.length = std::fabs(p.t - q.t);
    return {witness.length, std::move(witness)};
  }

  const Reduced rp = reduce(p);
  const Reduced rq = reduce(q);

  // Exact branch: effective points share a convex sector.
  int sp[2], sq[2];
  int np = 0, nq = 0;
  spec.sectors_containing(rp.eff.pos, sp, np);
  spec.sectors_containing(rq.eff.pos, sq, nq);
  bool shared = false;
  for (int i = 0; i < np && !shared; ++i) {
    for (int j = 0; j < nq; ++j) {
      if (sp[i] == sq[j]) {
        shared = true;
        break;
      }
    }
  }
  if (shared) {
    const double mid = comb::dist(rp.eff.pos, rq.eff.pos);
    emit(rp.original);
    if (rp.has_tail) emit(LocatedPoint::on_spoke(rp.original.spoke, rp.eff.pos.rho));
    if (rq.has_tail) emit(LocatedPoint::on_spoke(rq.original.spoke, rq.eff.pos.rho));
    emit(rq.original);
    witness.length = rp.offset + mid + rq.offset;
    return {witness.length, std::move(witness)};
  }

  // Portal relaxation between sectors.
  const int V = graph_.node_count();
  const int src = V;
  const int dst = V + 1;
  thread_local std::vector<std::vector<std::pair<int, double>>> temp(2);
  temp[0].clear();
  temp[1].clear();
  auto connect = [&](const LocatedPoint& eff, const int* secs, int count, int self) {
    for (int i = 0; i < count; ++i) {
      for (int u : graph_.sector_nodes(secs[i])) {
        const double w = comb::dist(eff.pos, graph_.node(u).pos);
        temp[std::size_t(self - V)].push_back({u, w});
      }
    }
    auto& list = temp[std::size_t(self - V)];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  };
  connect(rp.eff, sp, np, src);
  connect(rq.eff, sq, nq, dst);

  // Per-thread scratch keeps concurrent queries allocation-free.
  thread_local std::vector<double> to_dst;
  thread_local std::vector<double> d;
  thread_local std::vector<int> pred;
  thread_local std::vector<char> done;
  using Item = std::pair<double, int>;
  thread_local std::vector<Item> heap;

  const double inf = std::numeric_limits<double>::infinity();
  to_dst.assign(std::size_t(V), inf);
  for (const auto& [v, w] : temp[1]) {
    to_dst[std::size_t(v)] = std::min(to_dst[std::size_t(v)], w);
  }
  d.assign(std::size_t(V) + 2, inf);
  pred.assign(std::size_t(V) + 2, -1);
  done.assign(std::size_t(V) + 2, 0);
  heap.clear();
  d[std::size_t(src)] = 0.0;
  heap.push_back({0.0, src});
  while (!heap.empty()) {
    std::pop_heap(heap.begin(), heap.end(), std::greater<Item>{});
    const auto [du, u] = heap.back();
    heap.pop_back();
    if (done[std::size_t(u)]) continue;
    done[std::size_t(u)] = 1;
    if (u == dst) break;
    auto relax = [&](int v, double w) {
      const double nd = du + w;
      if (nd < d[std::size_t(v)] ||
          (nd == d[std::size_t(v)] && u < pred[std::size_t(v)])) {
        d[std::size_t(v)] = nd;
        pred[std::size_t(v)] = u;
        heap.push_back({nd, v});
        std::push_heap(heap.begin(), heap.end(), std::greater<Item>{});
      }
    };
    if (u == src) {
      for (const auto& [v, w] : temp[0]) relax(v, w);
    } else {
      for (const auto& [v, w] : graph_.edges(u)) relax(v, w);
      // Temporary target edges are symmetric.
      if (to_dst[std::size_t(u)] < inf) relax(dst, to_dst[std::size_t(u)]);
    }
  }
  if (d[std::size_t(dst)] == inf) {
    throw std::runtime_error("dist_X: no path found (portal graph disconnected)");
  }

  const double total = rp.offset + d[std::size_t(dst)] + rq.offset;
  if (want_witness) {
    std::vector<int> chain;
    for (int at = dst; at != -1; at = pred[std::size_t(at)]) chain.push_back(at);
    std::reverse(chain.begin(), chain.end());
    emit(rp.original);
    if (rp.has_tail) emit(LocatedPoint::on_spoke(rp.original.spoke, rp.eff.pos.rho));
    for (int id : chain) {
      if (id == src) {
        emit(rp.eff);
      } else if (id == dst) {
        emit(rq.eff);
      } else {
        const PortalNode& node = graph_.node(id);
        emit(spec.canonical(LocatedPoint::in_sector(
            node.ray_index == 0 ? 1 : node.ray_index, node.pos)));
      }
    }
    if (rq.has_tail) emit(LocatedPoint::on_spoke(rq.original.spoke, rq.eff.pos.rho));
    emit(rq.original);
    witness.length = total;
  }
  return {total, std::move(witness)};
}

QiConstants qi_constants(const PathMetric& metric, std::int64_t sample_count,
                         std::uint64_t seed) {
  if (sample_count < 2) throw std::invalid_argument("qi_constants: sample_count must be >= 2");
  const CombSpec& spec = metric.spec();
  SpaceSampler sampler(spec, spec.r_max());

  // Constraints d_x <= lambda * d + c as lines c(lambda) = d_x - d * lambda.
  std::vector<std::pair<double, double>> lines;  // (d, d_x)
  lines.reserve(std::size_t(sample_count));
  double mean_d = 0.0;
  for (std::int64_t i = 0; i < sample_count; ++i) {
    Rng rng = rng_for(seed, std::uint64_t(i));
    const LocatedPoint a = sampler.sample(rng);
    const LocatedPoint b = sampler.sample(rng);
    const double dp = dist(spec.plane_point(a), spec.plane_point(b));
    const double dx = metric.dist(a, b);
    if (dx < dp - 1e-9) {
      throw std::runtime_error("qi_constants: path metric below plane metric");
    }
    if (dp < 1e-9) continue;  // degenerate pair constrains nothing
    lines.push_back({dp, dx});
    mean_d += dp;
  }
  if (lines.empty()) throw std::runtime_error("qi_constants: all sampled pairs degenerate");
  mean_d /= double(lines.size());

  auto c_needed = [&](double lambda) {
    double c = 0.0;
    for (const auto& [a, b] : lines) c = std::max(c, b - lambda * a);
    return c;
  };
  // Objective lambda * mean_d + c_needed(lambda) is convex piecewise linear.
  double lo = 1.0;
  double hi = 1.0;
  for (const auto& [a, b] : lines) hi = std::max(hi, b / a);
  for (int iter = 0; iter < 200; ++iter) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    const double f1 = m1 * mean_d + c_needed(m1);
    const double f2 = m2 * mean_d + c_needed(m2);
    if (f1 <= f2) {
      hi = m2;
    } else {
      lo = m1;
    }
  }
  QiConstants out;
  out.lambda = 0.5 * (lo + hi);
  out.c = c_needed(out.lambda);
  out.sample_count = sample_count;
  out.seed = seed;
  return out;
}

}  // namespace comb

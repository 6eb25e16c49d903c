#include "comb/hyperbolicity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace comb {

namespace {

constexpr double kBucketWidth = 0.05;
constexpr int kBucketCount = 80;  // defects above 4 land in the last bucket

struct ScanAccum {
  double delta_max = 0.0;
  std::vector<std::int64_t> histogram = std::vector<std::int64_t>(kBucketCount, 0);

  void add(double defect) {
    delta_max = std::max(delta_max, defect);
    int b = int(defect / kBucketWidth);
    b = std::clamp(b, 0, kBucketCount - 1);
    ++histogram[std::size_t(b)];
  }
  void merge(const ScanAccum& other) {
    delta_max = std::max(delta_max, other.delta_max);
    for (std::size_t i = 0; i < histogram.size(); ++i) histogram[i] += other.histogram[i];
  }
};

// One defect evaluation per index; `sample` draws a point from the index's
// own stream, `metric` is any symmetric distance on the sampled points.
template <typename Sample, typename Metric>
ScanAccum defect_scan_serial(std::int64_t count, std::uint64_t seed, Sample&& sample,
                             Metric&& metric) {
  ScanAccum acc;
  for (std::int64_t i = 0; i < count; ++i) {
    Rng rng = rng_for(seed, std::uint64_t(i));
    const auto x = sample(rng);
    const auto y = sample(rng);
    const auto z = sample(rng);
    const auto w = sample(rng);
    acc.add(four_point_defect(x, y, z, w, metric));
  }
  return acc;
}

template <typename Sample, typename Metric>
ScanAccum defect_scan_parallel(std::int64_t count, std::uint64_t seed, Sample&& sample,
                               Metric&& metric) {
#ifdef _OPENMP
  ScanAccum total;
#pragma omp parallel
  {
    ScanAccum local;
#pragma omp for schedule(dynamic, 64) nowait
    for (std::int64_t i = 0; i < count; ++i) {
      Rng rng = rng_for(seed, std::uint64_t(i));
      const auto x = sample(rng);
      const auto y = sample(rng);
      const auto z = sample(rng);
      const auto w = sample(rng);
      local.add(four_point_defect(x, y, z, w, metric));
    }
#pragma omp critical(comb_defect_scan_merge)
    total.merge(local);
  }
  return total;
#else
  return defect_scan_serial(count, seed, sample, metric);
#endif
}

DeltaEstimate finish(ScanAccum acc, std::int64_t count, double cap, double eps,
                     std::uint64_t seed) {
  DeltaEstimate est;
  est.delta_max = acc.delta_max;
  est.sample_count = count;
  est.radius_cap = cap;
  est.epsilon = eps;
  est.seed = seed;
  est.bucket_width = kBucketWidth;
  est.histogram = std::move(acc.histogram);
  return est;
}

}  // namespace

DeltaEstimate estimate_delta(const PathMetric& metric, std::int64_t sample_count,
                             double radius_cap, std::uint64_t seed, ExecMode mode) {
  if (sample_count < 1) throw std::invalid_argument("estimate_delta: sample_count must be >= 1");
  const SpaceSampler sampler(metric.spec(), radius_cap);
  auto sample = [&](Rng& rng) { return sampler.sample(rng); };
  auto d = [&](const LocatedPoint& a, const LocatedPoint& b) { return metric.dist(a, b); };
  ScanAccum acc = mode == ExecMode::kParallel
                      ? defect_scan_parallel(sample_count, seed, sample, d)
                      : defect_scan_serial(sample_count, seed, sample, d);
  return finish(std::move(acc), sample_count, radius_cap, metric.epsilon(), seed);
}

DeltaEstimate estimate_delta_plane(double radius, std::int64_t sample_count,
                                   std::uint64_t seed, ExecMode mode) {
  if (sample_count < 1) throw std::invalid_argument("estimate_delta_plane: sample_count must be >= 1");
  auto sample = [&](Rng& rng) { return sample_plane_ball(rng, radius); };
  auto d = [](const PolarPoint& a, const PolarPoint& b) { return dist(a, b); };
  ScanAccum acc = mode == ExecMode::kParallel
                      ? defect_scan_parallel(sample_count, seed, sample, d)
                      : defect_scan_serial(sample_count, seed, sample, d);
  return finish(std::move(acc), sample_count, radius, 0.0, seed);
}

}  // namespace comb

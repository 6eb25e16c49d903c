#ifndef COMB_SAMPLING_HPP
#define COMB_SAMPLING_HPP

#include <cstdint>
#include <vector>

#include "comb/comb_spec.hpp"

// Seeded sampling over the comb space. All randomness in the project flows
// through Rng; parallel kernels draw one independent stream per sample index
// (rng_for), so results do not depend on the thread count.

namespace comb {

struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next_u64() {
    // splitmix64
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1).
  double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

// Independent stream for sample `index` of a run seeded with `seed`.
Rng rng_for(std::uint64_t seed, std::uint64_t index);

// Uniform point in the plane ball B(origin, R): angle uniform, radius with
// density proportional to sinh(rho).
PolarPoint sample_plane_ball(Rng& rng, double radius);

// Uniform point of the comb space truncated at radius_cap. Pieces are
// weighted by hyperbolic area (sectors) and length (hairs), then local
// coordinates are drawn uniformly for that measure.
class SpaceSampler {
 public:
  SpaceSampler(const CombSpec& spec, double radius_cap);

  const CombSpec& spec() const { return *spec_; }
  double radius_cap() const { return radius_cap_; }
  double total_weight() const { return cumulative_.empty() ? 0.0 : cumulative_.back(); }

  LocatedPoint sample(Rng& rng) const;

 private:
  const CombSpec* spec_;
  double radius_cap_;
  // Piece i < K: sector i+1; piece K + j: hair of spoke j (only hairs with
  // positive truncated length are listed).
  std::vector<double> cumulative_;
  std::vector<std::int64_t> hair_spokes_;
  int sector_pieces_ = 0;
};

}  // namespace comb

#endif  // COMB_SAMPLING_HPP

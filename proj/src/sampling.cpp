#include "comb/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace comb {

Rng rng_for(std::uint64_t seed, std::uint64_t index) {
  Rng mix(seed ^ (0x9e3779b97f4a7c15ULL + index * 0xd1342543de82ef95ULL));
  // One warm-up step decorrelates consecutive indices.
  mix.next_u64();
  return mix;
}

PolarPoint sample_plane_ball(Rng& rng, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("sample_plane_ball: radius must be > 0");
  const double phi = rng.uniform(0.0, 2.0 * kPi);
  const double rho = std::acosh(1.0 + rng.uniform() * (std::cosh(radius) - 1.0));
  return PolarPoint{rho, phi};
}

SpaceSampler::SpaceSampler(const CombSpec& spec, double radius_cap)
    : spec_(&spec), radius_cap_(radius_cap) {
  if (!(radius_cap > 0.0)) throw std::invalid_argument("radius_cap must be > 0");
  radius_cap_ = std::min(radius_cap_, spec.r_max());

  double acc = 0.0;
  sector_pieces_ = spec.n_sectors();
  for (int n = 1; n <= spec.n_sectors(); ++n) {
    const SectorSpec& s = spec.sector(n);
    const double reff = std::min(s.N_n, radius_cap_);
    acc += s.alpha * (std::cosh(reff) - 1.0);
    cumulative_.push_back(acc);
  }
  const std::int64_t S = spec.spoke_count();
  for (std::int64_t j = 0; j < S; ++j) {
    const double attach = spec.spoke(j).attach_radius;
    const double len = std::min(spec.r_max(), radius_cap_) - attach;
    if (len > 0.0) {
      acc += len;
      cumulative_.push_back(acc);
      hair_spokes_.push_back(j);
    }
  }
  if (!(acc > 0.0)) throw std::invalid_argument("radius_cap leaves no sampleable mass");
}

LocatedPoint SpaceSampler::sample(Rng& rng) const {
  const double pick = rng.uniform() * cumulative_.back();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), pick);
  std::size_t idx = std::size_t(it - cumulative_.begin());
  if (idx >= cumulative_.size()) idx = cumulative_.size() - 1;

  if (idx < std::size_t(sector_pieces_)) {
    const SectorSpec& s = spec_->sector(int(idx) + 1);
    const double reff = std::min(s.N_n, radius_cap_);
    const double phi = rng.uniform(s.theta_lo, s.theta_hi);
    const double rho = std::acosh(1.0 + rng.uniform() * (std::cosh(reff) - 1.0));
    return LocatedPoint::in_sector(s.index, PolarPoint{rho, phi});
  }
  const std::int64_t spoke = hair_spokes_[idx - std::size_t(sector_pieces_)];
  const double attach = spec_->spoke(spoke).attach_radius;
  const double hi = std::min(spec_->r_max(), radius_cap_);
  return LocatedPoint::on_spoke(spoke, rng.uniform(attach, hi));
}

}  // namespace comb

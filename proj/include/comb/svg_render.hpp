#ifndef COMB_SVG_RENDER_HPP
#define COMB_SVG_RENDER_HPP

#include <string>

#include "comb/comb_spec.hpp"

namespace comb {

// Deterministic SVG of the construction in Euclidean disk coordinates:
// the disk outline, one filled wedge and one outer arc per sector, one
// line per original ray, and one hair line per spoke (zero-length when
// hair_extension is 0). Element counts match the spec exactly.
std::string render_svg(const CombSpec& spec);

}  // namespace comb

#endif  // COMB_SVG_RENDER_HPP

#include "comb/svg_render.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace comb {

namespace {

constexpr double kScale = 400.0;
constexpr double kCenter = 420.0;

struct Xy {
  double x, y;
};

Xy to_screen(double rho, double phi) {
  const double r = std::tanh(0.5 * rho) * kScale;
  // SVG y axis points down; flip so angles grow counterclockwise.
  return {kCenter + r * std::cos(phi), kCenter - r * std::sin(phi)};
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

std::string render_svg(const CombSpec& spec) {
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 840 840\">\n";
  svg << "<circle class=\"disk\" cx=\"" << num(kCenter) << "\" cy=\"" << num(kCenter)
      << "\" r=\"" << num(kScale) << "\" fill=\"none\" stroke=\"#999\" stroke-width=\"1\"/>\n";

  // Sector wedges: radial edges are Euclidean diameters of the disk model,
  // the outer edge is the circle of radius tanh(N/2).
  for (const SectorSpec& s : spec.sectors()) {
    const double er = std::tanh(0.5 * s.N_n) * kScale;
    const Xy a = to_screen(s.N_n, s.theta_lo);
    const Xy b = to_screen(s.N_n, s.theta_hi);
    svg << "<path class=\"sector\" d=\"M " << num(kCenter) << ' ' << num(kCenter) << " L "
        << num(a.x) << ' ' << num(a.y) << " A " << num(er) << ' ' << num(er) << " 0 0 0 "
        << num(b.x) << ' ' << num(b.y) << " Z\" fill=\"#dce9f5\" stroke=\"none\"/>\n";
  }
  for (const SectorSpec& s : spec.sectors()) {
    const double er = std::tanh(0.5 * s.N_n) * kScale;
    const Xy a = to_screen(s.N_n, s.theta_lo);
    const Xy b = to_screen(s.N_n, s.theta_hi);
    svg << "<path class=\"arc\" d=\"M " << num(a.x) << ' ' << num(a.y) << " A " << num(er)
        << ' ' << num(er) << " 0 0 0 " << num(b.x) << ' ' << num(b.y)
        << "\" fill=\"none\" stroke=\"#1f4e79\" stroke-width=\"1.5\"/>\n";
  }

  // Original rays from the basepoint to their attachment radius.
  for (std::int64_t id = 0; id < spec.spoke_count(); ++id) {
    const SpokeRay r = spec.spoke(id);
    if (r.kind != SpokeRay::Kind::kOriginalRay) continue;
    const Xy a = to_screen(r.attach_radius, r.angle);
    svg << "<line class=\"ray\" x1=\"" << num(kCenter) << "\" y1=\"" << num(kCenter)
        << "\" x2=\"" << num(a.x) << "\" y2=\"" << num(a.y)
        << "\" stroke=\"#444\" stroke-width=\"1\"/>\n";
  }

  // One hair per spoke beyond its attachment.
  for (std::int64_t id = 0; id < spec.spoke_count(); ++id) {
    const SpokeRay r = spec.spoke(id);
    const Xy a = to_screen(r.attach_radius, r.angle);
    const Xy b = to_screen(spec.r_max(), r.angle);
    svg << "<line class=\"spoke\" x1=\"" << num(a.x) << "\" y1=\"" << num(a.y) << "\" x2=\""
        << num(b.x) << "\" y2=\"" << num(b.y)
        << "\" stroke=\"#b22\" stroke-width=\"0.6\"/>\n";
  }

  svg << "</svg>\n";
  return svg.str();
}

}  // namespace comb

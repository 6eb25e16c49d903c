#ifndef COMB_HYPERBOLIC_HPP
#define COMB_HYPERBOLIC_HPP

#include <cmath>
#include <numbers>

// Primitives for the disk model of the hyperbolic plane: distances in
// Euclidean and polar coordinates, distance to radial rays, circle arc
// lengths, Gromov products and geodesic interpolation.

namespace comb {

inline constexpr double kPi = std::numbers::pi;

// Euclidean radius above which a disk point is rejected as too close to the
// ideal boundary for double precision to carry meaningful distances.
// 1 - 1e-13 corresponds to a hyperbolic radius of about 30.6.
inline constexpr double kBoundaryMargin = 1e-13;

// A point of the open unit disk, Euclidean coordinates.
struct DiskPoint {
  double u = 0.0;
  double v = 0.0;
};

// A point in (hyperbolic radius, angle) coordinates about the origin.
// phi is kept in [0, 2*pi).
struct PolarPoint {
  double rho = 0.0;
  double phi = 0.0;
};

// Gromov product (x|y)_w = (d(x,w) + d(y,w) - d(x,y)) / 2.
struct GromovProduct {
  double value = 0.0;
  PolarPoint basepoint;
};

// Normalizes an angle into [0, 2*pi).
double normalize_angle(double phi);

// Folds an angular difference into [0, pi].
double fold_angle(double dphi);

// Throws std::invalid_argument when p is on or outside the reliable disk.
void validate(const DiskPoint& p);

PolarPoint make_polar(double rho, double phi);

// Euclidean radius tanh(rho/2) at angle phi.
DiskPoint polar_to_disk(const PolarPoint& p);
PolarPoint disk_to_polar(const DiskPoint& p);

// Hyperbolic distance, d = arcosh(1 + 2|p-q|^2 / ((1-|p|^2)(1-|q|^2))).
double dist(const DiskPoint& p, const DiskPoint& q);

// Distance via the hyperbolic law of cosines. This form never converts to
// disk coordinates and stays accurate at radii where they saturate.
double dist(const PolarPoint& p, const PolarPoint& q);

// Distance to the geodesic ray from the origin at ray_angle. For angular
// separation <= pi/2 the foot of the perpendicular lies on the ray and the
// distance is arsinh(sinh(rho) sin(dphi)); beyond that the nearest ray
// point is the origin itself.
double dist_to_radial_ray(const PolarPoint& p, double ray_angle);

// Length of an arc of angular width alpha on the circle of hyperbolic
// radius N about the origin: alpha * sinh(N).
double arc_length(double N, double alpha);

[[noreturn]] void throw_broken_metric(double value);

// Gromov product of x and y with basepoint w under an arbitrary metric.
// A result below -1e-9 indicates the supplied metric violates the triangle
// inequality and is reported as an error; tiny negatives are clamped to 0.
template <typename Point, typename Metric>
double gromov_product_value(const Point& x, const Point& y, const Point& w,
                            Metric&& d) {
  const double value = 0.5 * (d(x, w) + d(y, w) - d(x, y));
  if (value < -1e-9) {
    throw_broken_metric(value);
  }
  return value < 0.0 ? 0.0 : value;
}

template <typename Metric>
GromovProduct gromov_product(const DiskPoint& x, const DiskPoint& y,
                             const DiskPoint& w, Metric&& d) {
  return GromovProduct{gromov_product_value(x, y, w, d), disk_to_polar(w)};
}

GromovProduct gromov_product(const DiskPoint& x, const DiskPoint& y,
                             const DiskPoint& w);

// Point r on the geodesic segment [p, q] with dist(p, r) = s.
// Requires 0 <= s <= dist(p, q).
DiskPoint geodesic_point(const DiskPoint& p, const DiskPoint& q, double s);

}  // namespace comb

#endif  // COMB_HYPERBOLIC_HPP

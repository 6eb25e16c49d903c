#include "comb/hyperbolic.hpp"

#include <complex>
#include <stdexcept>
#include <string>

namespace comb {

namespace {

// arcosh(1 + x) for x >= 0, stable for small x.
double acosh1p(double x) {
  if (x < 0.0) x = 0.0;
  return std::log1p(x + std::sqrt(x * (x + 2.0)));
}

}  // namespace

double normalize_angle(double phi) {
  double r = std::fmod(phi, 2.0 * kPi);
  if (r < 0.0) r += 2.0 * kPi;
  if (r >= 2.0 * kPi) r = 0.0;
  return r;
}

double fold_angle(double dphi) {
  double r = std::fabs(std::fmod(dphi, 2.0 * kPi));
  if (r > kPi) r = 2.0 * kPi - r;
  return r;
}

void validate(const DiskPoint& p) {
  const double r2 = p.u * p.u + p.v * p.v;
  const double lim = 1.0 - kBoundaryMargin;
  if (!(r2 < lim * lim)) {
    throw std::invalid_argument("DiskPoint outside the reliable open disk (|p| = " +
                                std::to_string(std::sqrt(r2)) + ")");
  }
}

PolarPoint make_polar(double rho, double phi) {
  if (!(rho >= 0.0)) {
    throw std::invalid_argument("PolarPoint requires rho >= 0");
  }
  return PolarPoint{rho, normalize_angle(phi)};
}

DiskPoint polar_to_disk(const PolarPoint& p) {
  const double r = std::tanh(0.5 * p.rho);
  return DiskPoint{r * std::cos(p.phi), r * std::sin(p.phi)};
}

PolarPoint disk_to_polar(const DiskPoint& p) {
  validate(p);
  const double r = std::hypot(p.u, p.v);
  const double rho = 2.0 * std::atanh(r);
  const double phi = r == 0.0 ? 0.0 : normalize_angle(std::atan2(p.v, p.u));
  return PolarPoint{rho, phi};
}

double dist(const DiskPoint& p, const DiskPoint& q) {
  validate(p);
  validate(q);
  const double du = p.u - q.u;
  const double dv = p.v - q.v;
  const double a = 1.0 - (p.u * p.u + p.v * p.v);
  const double b = 1.0 - (q.u * q.u + q.v * q.v);
  return acosh1p(2.0 * (du * du + dv * dv) / (a * b));
}

double dist(const PolarPoint& p, const PolarPoint& q) {
  // cosh d = cosh(rho_p - rho_q) + (1 - cos dphi) sinh(rho_p) sinh(rho_q);
  // both contributions are nonnegative, so there is no cancellation. The
  // grouping keeps evaluation symmetric in (p, q) to the last bit.
  const double sr = std::sinh(0.5 * (p.rho - q.rho));
  const double sp = std::sin(0.5 * (p.phi - q.phi));
  const double cross = std::sinh(p.rho) * std::sinh(q.rho);
  const double x = 2.0 * sr * sr + 2.0 * sp * sp * cross;
  return acosh1p(x);
}

double dist_to_radial_ray(const PolarPoint& p, double ray_angle) {
  const double dphi = fold_angle(p.phi - ray_angle);
  if (dphi <= 0.5 * kPi) {
    return std::asinh(std::sinh(p.rho) * std::sin(dphi));
  }
  return p.rho;
}

double arc_length(double N, double alpha) {
  if (!(N >= 0.0)) throw std::invalid_argument("arc_length: N must be >= 0");
  if (!(alpha > 0.0 && alpha <= 2.0 * kPi)) {
    throw std::invalid_argument("arc_length: alpha must lie in (0, 2*pi]");
  }
  return alpha * std::sinh(N);
}

void throw_broken_metric(double value) {
  throw std::runtime_error("Gromov product " + std::to_string(value) +
                           " below -1e-9: metric violates the triangle inequality");
}

GromovProduct gromov_product(const DiskPoint& x, const DiskPoint& y,
                             const DiskPoint& w) {
  return gromov_product(x, y, w,
                        [](const DiskPoint& a, const DiskPoint& b) { return dist(a, b); });
}

DiskPoint geodesic_point(const DiskPoint& p, const DiskPoint& q, double s) {
  validate(p);
  validate(q);
  const double total = dist(p, q);
  if (!(s >= 0.0 && s <= total + 1e-12)) {
    throw std::invalid_argument("geodesic_point: s outside [0, dist(p, q)]");
  }
  if (total == 0.0) return p;
  if (s > total) s = total;

  // Translate p to the origin; the geodesic becomes a Euclidean radius.
  const std::complex<double> zp(p.u, p.v);
  const std::complex<double> zq(q.u, q.v);
  const std::complex<double> w = (zq - zp) / (1.0 - std::conj(zp) * zq);
  const std::complex<double> dir = w / std::abs(w);
  const std::complex<double> ws = std::tanh(0.5 * s) * dir;
  const std::complex<double> z = (ws + zp) / (1.0 + std::conj(zp) * ws);
  return DiskPoint{z.real(), z.imag()};
}

}  // namespace comb

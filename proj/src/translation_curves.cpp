#include "solgeo/translation_curves.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "solgeo/detail/series.hpp"
#include "solgeo/error.hpp"

namespace solgeo {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_phi(double phi) {
  while (phi <= -kPi) phi += 2.0 * kPi;
  while (phi > kPi) phi -= 2.0 * kPi;
  return phi;
}

double forward_mismatch(const DirectionParams& d, const SolPoint& p) {
  return euclidean_delta(translation_point(d), p).norm();
}

// phi from cot(phi) = X / Y with the quadrant fixed by the side of the base
// plane (cot(theta) has the sign of z); this is the arccot of the general case.
DirectionParams invert_general(const SolPoint& p) {
  const double xt = p.x * detail::z_over_one_minus_exp_neg(p.z);  // t cos(th) cos(ph)
  const double yt = p.y * detail::z_over_expm1(p.z);              // t cos(th) sin(ph)
  DirectionParams d;
  d.phi = wrap_phi(std::atan2(yt, xt));
  const double cot_theta = (p.y / std::expm1(p.z)) / std::sin(d.phi);
  d.theta = std::atan(1.0 / cot_theta);
  d.t = std::hypot(xt, yt, p.z);
  return d;
}

DirectionParams invert_y_zero(const SolPoint& p) {
  const double xt = p.x * detail::z_over_one_minus_exp_neg(p.z);
  DirectionParams d;
  d.phi = xt >= 0.0 ? 0.0 : kPi;
  d.theta = std::atan2(p.z, std::abs(xt));
  d.t = std::hypot(xt, p.z);
  return d;
}

DirectionParams invert_base_plane(const SolPoint& p) {
  const double r = std::hypot(p.x, p.y);
  DirectionParams d;
  d.phi = std::acos(p.x / r);
  if (p.y < 0.0) d.phi = -d.phi;
  d.theta = 0.0;
  d.t = r;
  return d;
}

}  // namespace

Eigen::Vector3d DirectionParams::unit_direction() const {
  return {std::cos(theta) * std::cos(phi), std::cos(theta) * std::sin(phi), std::sin(theta)};
}

SolPoint translation_point(const DirectionParams& d) {
  if (d.theta == 0.0) {
    return {d.t * std::cos(d.phi), d.t * std::sin(d.phi), 0.0};
  }
  const double z = d.t * std::sin(d.theta);
  const double ct = std::cos(d.theta) * d.t;
  // cot(th) (1 - e^{-z}) = t cos(th) (1 - e^{-z}) / z, regular as th -> 0.
  return {ct * std::cos(d.phi) * detail::one_minus_exp_neg_over_z(z),
          ct * std::sin(d.phi) * detail::expm1_over_z(z), z};
}

InversionCase inversion_case(const SolPoint& p) {
  if (p.z == 0.0) return InversionCase::BasePlane;
  if (p.x == 0.0 && p.y == 0.0) return InversionCase::FiberAxis;
  if (p.y == 0.0) return InversionCase::YZero;
  return InversionCase::General;
}

DirectionParams invert_translation_point(const SolPoint& p) {
  if (p == kOrigin) throw SolError(ErrorCode::ZeroLengthCurve, "zero-length curve");

  DirectionParams d;
  switch (inversion_case(p)) {
    case InversionCase::FiberAxis:
      return {0.0, std::copysign(kPi / 2.0, p.z), std::abs(p.z)};
    case InversionCase::BasePlane:
      d = invert_base_plane(p);
      break;
    case InversionCase::YZero:
      d = invert_y_zero(p);
      break;
    case InversionCase::General:
      d = invert_general(p);
      break;
  }

  // The arccot branches are not pinned down by the closed forms; validate by
  // evaluating the curve and fall back to the neighbouring branches.
  const double scale = std::max({1.0, std::abs(p.x), std::abs(p.y), std::abs(p.z)});
  if (forward_mismatch(d, p) <= 1e-10 * scale) return d;
  DirectionParams best = d;
  double best_err = forward_mismatch(d, p);
  for (const double dphi : {0.0, kPi}) {
    for (const double sgn : {1.0, -1.0}) {
      DirectionParams c{wrap_phi(d.phi + dphi), sgn * d.theta, d.t};
      const double err = forward_mismatch(c, p);
      if (err < best_err) {
        best = c;
        best_err = err;
      }
    }
  }
  return best;
}

double translation_distance(const SolPoint& p1, const SolPoint& p2) {
  if (p1 == p2) return 0.0;
  return translation_tangent_at_origin(translate_to_origin(p1, p2)).components().norm();
}

SolPoint antipodal_point(const SolPoint& a) {
  return {-a.x * std::exp(a.z), -a.y * std::exp(-a.z), -a.z};
}

SolTangent translation_tangent_at_origin(const SolPoint& p) {
  if (p == kOrigin) throw SolError(ErrorCode::ZeroLengthCurve, "zero-length curve");
  return {kOrigin, p.x * detail::z_over_one_minus_exp_neg(p.z),
          p.y * detail::z_over_expm1(p.z), p.z};
}

double translation_sphere_value(const SolPoint& p, double radius) {
  const double u = p.x * detail::z_over_one_minus_exp_neg(p.z);
  const double v = p.y * detail::z_over_expm1(p.z);
  return u * u + v * v + p.z * p.z - radius * radius;
}

}  // namespace solgeo

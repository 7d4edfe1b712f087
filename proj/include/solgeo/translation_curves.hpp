#pragma once

// Translation curves: integral curves of left-translated constant tangents.
// From the origin with unit direction (cos th cos ph, cos th sin ph, sin th):
//   x = -cot th cos ph (e^{-t sin th} - 1), y = cot th sin ph (e^{t sin th} - 1),
//   z = t sin th,  and (t cos ph, t sin ph, 0) when th = 0.

#include "solgeo/sol_core.hpp"

namespace solgeo {

/// Longitude phi in (-pi, pi], altitude theta in [-pi/2, pi/2], arc length t >= 0.
struct DirectionParams {
  double phi = 0.0;
  double theta = 0.0;
  double t = 0.0;

  Eigen::Vector3d unit_direction() const;
};

SolPoint translation_point(const DirectionParams& d);

/// Which closed-form inversion applies to a nonzero point.
enum class InversionCase {
  General,     // y != 0, z != 0
  YZero,       // y == 0, z != 0 (phi is 0 or pi)
  BasePlane,   // z == 0
  FiberAxis,   // x == y == 0, z != 0
};

InversionCase inversion_case(const SolPoint& p);

/// Parameters of the translation curve from the origin to p.
/// Throws SolError(ZeroLengthCurve) for the origin.
DirectionParams invert_translation_point(const SolPoint& p);

/// Arc length of the translation curve from p1 to p2 (directed).
double translation_distance(const SolPoint& p1, const SolPoint& p2);

/// The point at parameter -t on the translation curve through the origin and a.
SolPoint antipodal_point(const SolPoint& a);

/// Tangent at the origin of the translation curve to p, with length equal to
/// the translation distance: (x z/(1-e^{-z}), y z/(e^z-1), z).
SolTangent translation_tangent_at_origin(const SolPoint& p);

/// Implicit function of the translation sphere of radius R about the origin.
double translation_sphere_value(const SolPoint& p, double radius);

}  // namespace solgeo

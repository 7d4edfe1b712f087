#pragma once

// Translation-like isoptic surfaces of the segment A1 = (a,b,c),
// A2 = (-a e^c, -b e^{-c}, -c): the closed-form angle quotient, the Thaloid
// (alpha = pi/2) and its comparison with translation spheres, the limits of
// the quotient along the fiber, and the closed/infinite classifier.

#include <optional>
#include <utility>
#include <vector>

#include "solgeo/sol_core.hpp"

namespace solgeo {

struct IsopticSpec {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double alpha = 0.0;

  /// Throws SolError(InvalidArgument) unless (a,b,c) != 0 and 0 < alpha < pi.
  void validate() const;

  SolPoint first_endpoint() const { return {a, b, c}; }
  SolPoint second_endpoint() const;
};

/// Translation tangents at P towards A1 and A2, written in the frame of the
/// origin after translating P there.
std::pair<SolTangent, SolTangent> isoptic_tangents(const IsopticSpec& spec, const SolPoint& p);

/// Numerator, the two squared-norm factors of the denominator, and their
/// quotient (cosine of the angle at P).
struct IsopticQuotient {
  double numerator = 0.0;
  double first_norm_sq = 0.0;
  double second_norm_sq = 0.0;
  double cosine = 0.0;
};

IsopticQuotient isoptic_quotient(const IsopticSpec& spec, const SolPoint& p);

/// cos(alpha) - cosine of the angle at P. Zero exactly on the isoptic surface.
double isoptic_value(const IsopticSpec& spec, const SolPoint& p);

/// Field whose zero set is the union of the alpha and (pi - alpha) isoptics.
double isoptic_union_value(const IsopticSpec& spec, const SolPoint& p);

/// Field for grid meshing: isoptic_value (or the union field) with the two
/// endpoint singularities replaced by a large positive value within
/// `mask_radius` (Euclidean, model coordinates).
struct IsopticFieldOptions {
  bool union_with_supplement = false;
  double mask_radius = 1e-3;
};

double isoptic_field_value(const IsopticSpec& spec, const SolPoint& p,
                           const IsopticFieldOptions& opts = {});

/// Numerator of the quotient: its zero set is the Thaloid. Finite at the
/// endpoints (which lie on the closure of the surface).
double thaloid_value(const IsopticSpec& spec, const SolPoint& p);
Eigen::Vector3d thaloid_gradient(const IsopticSpec& spec, const SolPoint& p);

struct ThaloidSphereComparison {
  double radius = 0.0;         // translation distance from the origin to A1
  double max_deviation = 0.0;  // max |N| / |grad N| over the sampled sphere
};

/// Samples the translation sphere through A1 and A2 on a phi x theta grid and
/// measures how far it is from the Thaloid.
ThaloidSphereComparison thaloid_sphere_deviation(const IsopticSpec& spec, int n_phi = 64,
                                                 int n_theta = 32);

enum class FiberDirection { Positive, Negative };

/// Limit of the angle cosine as z -> +inf (coordinate x) or z -> -inf
/// (coordinate y).
double fiber_limit(const IsopticSpec& spec, FiberDirection dir, double coord);

struct LimitExtrema {
  std::vector<double> minima;     // one entry when c = 0, otherwise two
  std::optional<double> maximum;  // interior maximum (value 1), absent when c = 0
};

LimitExtrema limit_extrema(const IsopticSpec& spec, FiberDirection dir);

enum class SurfaceKind { ClosedCandidate, InfinitePositiveFiber, InfiniteNegativeFiber, InfiniteBoth };

const char* to_string(SurfaceKind k);

struct SurfaceClassification {
  SurfaceKind kind = SurfaceKind::ClosedCandidate;
  double threshold_pos = 0.0;
  double threshold_neg = 0.0;
  double argmin_pos = 0.0;
  double argmin_neg = 0.0;
  /// The one-line closed-form threshold (single minimum picked by the sign of
  /// a, resp. b); empty where it is undefined.
  std::optional<double> printed_threshold_pos;
  std::optional<double> printed_threshold_neg;
};

SurfaceClassification classify_surface(const IsopticSpec& spec);

}  // namespace solgeo

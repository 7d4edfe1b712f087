#pragma once

// Geodesics of Sol from the origin: closed-form families, numerical
// integration of the general case, the two-point boundary-value solver and
// geodesic distance.

#include <memory>
#include <optional>

#include "solgeo/geodesic_flow.hpp"
#include "solgeo/sol_core.hpp"

namespace solgeo {

/// Unit initial velocity (cos th cos a, cos th sin a, sin th) at the origin.
struct GeodesicInitial {
  double alpha = 0.0;
  double theta = 0.0;

  Eigen::Vector3d direction() const;
  static GeodesicInitial from_direction(const Eigen::Vector3d& dir);
};

enum class GeodesicFamily {
  Plane,       // u v = 0: the geodesic stays in the [y,z] or [x,z] coordinate plane
  Horizontal,  // w = 0, |u| = |v|: a straight diagonal line in the base plane
  Fiber,       // u = v = 0: the z axis
  General,     // no elementary solution, integrated numerically
};

const char* to_string(GeodesicFamily f);

/// Family of a unit direction (tolerance 1e-12 on the defining conditions).
GeodesicFamily classify_direction(const Eigen::Vector3d& dir);

class GeodesicArc {
 public:
  enum class Evaluation { ClosedFormWhereAvailable, ForceIntegration };

  GeodesicArc(const GeodesicInitial& initial, double length,
              Evaluation eval = Evaluation::ClosedFormWhereAvailable);

  /// Arc with the given unit direction (normalized here) and length.
  static GeodesicArc from_direction(const Eigen::Vector3d& dir, double length,
                                    Evaluation eval = Evaluation::ClosedFormWhereAvailable);

  GeodesicFamily family() const { return family_; }
  const GeodesicInitial& initial() const { return initial_; }
  const Eigen::Vector3d& direction() const { return dir_; }
  double length() const { return length_; }
  bool integrated() const { return trajectory_ != nullptr; }

  SolPoint point(double s) const;
  Eigen::Vector3d velocity(double s) const;
  SolPoint endpoint() const { return point(length_); }

 private:
  GeodesicArc(const GeodesicInitial& initial, const Eigen::Vector3d& dir, double length,
              Evaluation eval);
  void check_parameter(double s) const;

  GeodesicInitial initial_;
  Eigen::Vector3d dir_;
  double length_ = 0.0;
  GeodesicFamily family_ = GeodesicFamily::General;
  std::shared_ptr<const GeodesicTrajectory> trajectory_;
};

/// Point at arc length s in [0, length]; SolError(OutOfRange) otherwise.
SolPoint geodesic_point(const GeodesicArc& g, double s);
SolTangent geodesic_tangent(const GeodesicArc& g, double s);

struct BvpOptions {
  double residual_tolerance = 1e-11;  // max-norm endpoint mismatch for convergence
  double accept_tolerance = 1e-8;     // required mismatch of the returned arc
  double fd_step = 1e-6;
  int max_newton_iterations = 40;
  int grid_alpha = 24;
  int grid_theta = 12;
  bool use_closed_forms = true;
  /// Also run the full multi-start grid when the first seed converges.
  bool exhaustive = false;
};

/// Geodesic arc from the origin to `target` of minimal length among the
/// solutions found. Throws BvpDivergence if no start converges.
GeodesicArc solve_geodesic_bvp(const SolPoint& target, const BvpOptions& opts = {});

/// Closed-form arc when the target lies on a coordinate plane through the
/// origin, the z axis, or a diagonal of the base plane.
std::optional<GeodesicArc> closed_form_bvp(const SolPoint& target);

double geodesic_distance(const SolPoint& p1, const SolPoint& p2, const BvpOptions& opts = {});

// Upper half-plane charts of the totally geodesic planes. For a plane
// y = const, (x, z) -> (x, e^{-z}); for a plane x = const, (y, z) -> (y, e^{z}).
// Both pull the hyperbolic metric back to the induced Sol metric.
enum class HalfPlaneChart { XZ, YZ };

struct HalfPlanePoint {
  double x1 = 0.0;
  double x2 = 1.0;
};

HalfPlanePoint halfplane_map(const SolPoint& p, HalfPlaneChart chart = HalfPlaneChart::XZ);
double hyperbolic_distance(const HalfPlanePoint& a, const HalfPlanePoint& b);

}  // namespace solgeo

#pragma once

// Numerical geodesic flow of the Sol metric. The geodesic equations
//   x'' + 2 x' z' = 0,  y'' - 2 y' z' = 0,  z'' - e^{2z} x'^2 + e^{-2z} y'^2 = 0
// are integrated as a first-order system in (x, y, z, x', y', z') with an
// embedded Runge-Kutta-Fehlberg 7(8) pair under step-size control.

#include <array>
#include <cstddef>
#include <vector>

#include <Eigen/Core>

namespace solgeo {

using GeodesicState = std::array<double, 6>;

struct IntegratorTolerances {
  double absolute = 1e-12;
  double relative = 1e-12;
};

void geodesic_rhs(const GeodesicState& q, GeodesicState& dq, double s);

/// e^{2z} x'^2 + e^{-2z} y'^2 + z'^2; conserved along the flow.
double speed_squared(const GeodesicState& q);

GeodesicState initial_state(const Eigen::Vector3d& velocity);

/// End state after flowing from the origin with the given initial velocity for
/// parameter length `length` (no intermediate storage).
GeodesicState integrate_geodesic_endpoint(const Eigen::Vector3d& velocity, double length,
                                          const IntegratorTolerances& tol = {});

/// Accepted steps of one integration. Evaluation between nodes re-steps from
/// the preceding node with the same 8th-order formula, so interior values carry
/// the accuracy of the accepted steps.
class GeodesicTrajectory {
 public:
  static GeodesicTrajectory integrate(const Eigen::Vector3d& velocity, double length,
                                      const IntegratorTolerances& tol = {});

  double length() const { return nodes_.back(); }
  std::size_t accepted_steps() const { return nodes_.size() - 1; }
  const GeodesicState& final_state() const { return states_.back(); }

  GeodesicState state_at(double s) const;

 private:
  std::vector<double> nodes_;
  std::vector<GeodesicState> states_;
};

}  // namespace solgeo

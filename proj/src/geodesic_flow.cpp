#include "solgeo/geodesic_flow.hpp"

#include <algorithm>
#include <cmath>

#include <boost/numeric/odeint.hpp>

#include "solgeo/error.hpp"

namespace solgeo {

namespace odeint = boost::numeric::odeint;

namespace {

using Stepper = odeint::runge_kutta_fehlberg78<GeodesicState>;

constexpr double kInitialStep = 0.05;
constexpr int kMaxRejections = 10000;

// Drives the controlled stepper from the origin to `length`, invoking
// `on_accept(s, state)` after every accepted step.
template <typename OnAccept>
GeodesicState run(const Eigen::Vector3d& velocity, double length, const IntegratorTolerances& tol,
                  OnAccept&& on_accept) {
  if (!(length >= 0.0) || !std::isfinite(length)) {
    throw SolError(ErrorCode::InvalidArgument, "integration length must be finite and >= 0");
  }
  GeodesicState q = initial_state(velocity);
  if (length == 0.0) return q;

  auto controlled = odeint::make_controlled<Stepper>(tol.absolute, tol.relative);
  double s = 0.0;
  double ds = std::min(kInitialStep, length);
  int rejections = 0;
  while (s < length) {
    const double remaining = length - s;
    const bool last = ds >= remaining;
    double step = last ? remaining : ds;
    // On success try_step advances s and proposes the next size in `step`; on
    // failure it leaves s alone and shrinks `step`.
    if (controlled.try_step(geodesic_rhs, q, s, step) == odeint::success) {
      if (last) s = length;
      on_accept(s, q);
      ds = step;
    } else {
      ds = step;
      if (++rejections > kMaxRejections || !(ds > 0.0)) {
        throw SolError(ErrorCode::InvalidArgument, "geodesic integration step size collapsed");
      }
    }
  }
  return q;
}

}  // namespace

void geodesic_rhs(const GeodesicState& q, GeodesicState& dq, double /*s*/) {
  const double dx = q[3];
  const double dy = q[4];
  const double dz = q[5];
  const double e2z = std::exp(2.0 * q[2]);
  dq[0] = dx;
  dq[1] = dy;
  dq[2] = dz;
  dq[3] = -2.0 * dx * dz;
  dq[4] = 2.0 * dy * dz;
  dq[5] = e2z * dx * dx - dy * dy / e2z;
}

double speed_squared(const GeodesicState& q) {
  const double e2z = std::exp(2.0 * q[2]);
  return e2z * q[3] * q[3] + q[4] * q[4] / e2z + q[5] * q[5];
}

GeodesicState initial_state(const Eigen::Vector3d& velocity) {
  return {0.0, 0.0, 0.0, velocity.x(), velocity.y(), velocity.z()};
}

GeodesicState integrate_geodesic_endpoint(const Eigen::Vector3d& velocity, double length,
                                          const IntegratorTolerances& tol) {
  return run(velocity, length, tol, [](double, const GeodesicState&) {});
}

GeodesicTrajectory GeodesicTrajectory::integrate(const Eigen::Vector3d& velocity, double length,
                                                 const IntegratorTolerances& tol) {
  GeodesicTrajectory traj;
  traj.nodes_.push_back(0.0);
  traj.states_.push_back(initial_state(velocity));
  run(velocity, length, tol, [&](double s, const GeodesicState& q) {
    traj.nodes_.push_back(s);
    traj.states_.push_back(q);
  });
  return traj;
}

GeodesicState GeodesicTrajectory::state_at(double s) const {
  if (s <= 0.0) return states_.front();
  if (s >= length()) return states_.back();
  const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), s);
  const auto k = static_cast<std::size_t>(std::distance(nodes_.begin(), it)) - 1;
  GeodesicState q = states_[k];
  const double h = s - nodes_[k];
  if (h == 0.0) return q;
  Stepper().do_step(geodesic_rhs, q, nodes_[k], h);
  return q;
}

}  // namespace solgeo

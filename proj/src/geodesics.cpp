#include "solgeo/geodesics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "solgeo/error.hpp"
#include "solgeo/translation_curves.hpp"

namespace solgeo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFamilyTol = 1e-12;
constexpr double kParamSlack = 1e-12;
constexpr double kMaxShootLength = 60.0;

// Stable pieces of the [y,z]-plane family:
//   y = v sinh s / D,  z = -log D,  D = cosh s - w sinh s.
double plane_denominator(double s, double w) {
  return 0.5 * ((1.0 - w) * std::exp(s) + (1.0 + w) * std::exp(-s));
}

SolPoint to_point(const GeodesicState& q) { return {q[0], q[1], q[2]}; }

double max_abs(const Eigen::Vector3d& v) { return v.cwiseAbs().maxCoeff(); }

Eigen::Vector3d shoot(const Eigen::Vector3d& velocity) {
  if (velocity.squaredNorm() == 0.0) return Eigen::Vector3d::Zero();
  const GeodesicState q = integrate_geodesic_endpoint(velocity, 1.0);
  return {q[0], q[1], q[2]};
}

struct ShootingOutcome {
  Eigen::Vector3d velocity = Eigen::Vector3d::Zero();
  double residual = std::numeric_limits<double>::infinity();
  bool converged = false;
};

// Damped Newton on the exponential map V -> exp(V); V = s (u, v, w) carries
// the same three unknowns as (alpha, theta, s) without the polar singularity.
ShootingOutcome newton_shoot(const Eigen::Vector3d& target, Eigen::Vector3d v,
                             const BvpOptions& opts) {
  ShootingOutcome out;
  Eigen::Vector3d f = shoot(v) - target;
  double r = f.norm();
  out.velocity = v;
  out.residual = max_abs(f);
  for (int iter = 0; iter < opts.max_newton_iterations; ++iter) {
    if (max_abs(f) < opts.residual_tolerance) {
      out.converged = true;
      return out;
    }
    const double h = opts.fd_step * std::max(1.0, v.norm());
    Eigen::Matrix3d jac;
    for (int i = 0; i < 3; ++i) {
      Eigen::Vector3d e = Eigen::Vector3d::Zero();
      e[i] = h;
      jac.col(i) = (shoot(v + e) - shoot(v - e)) / (2.0 * h);
    }
    const Eigen::FullPivLU<Eigen::Matrix3d> lu(jac);
    if (!lu.isInvertible()) return out;
    Eigen::Vector3d delta = lu.solve(-f);
    if (!delta.allFinite()) return out;
    const double max_step = 1.0 + 0.5 * v.norm();
    if (delta.norm() > max_step) delta *= max_step / delta.norm();

    bool accepted = false;
    for (double lambda = 1.0; lambda > 1.0 / 1024.0; lambda *= 0.5) {
      const Eigen::Vector3d vn = v + lambda * delta;
      if (vn.norm() > kMaxShootLength) continue;
      const Eigen::Vector3d fn = shoot(vn) - target;
      if (fn.allFinite() && fn.norm() < (1.0 - 1e-4 * lambda) * r) {
        v = vn;
        f = fn;
        r = fn.norm();
        accepted = true;
        break;
      }
    }
    if (!accepted) return out;
    out.velocity = v;
    out.residual = max_abs(f);
  }
  out.converged = max_abs(f) < opts.residual_tolerance;
  return out;
}

// Geodesic of the [y,z] plane from the origin to (0, y, z): in the chart
// (y, e^z) it is a circle orthogonal to the boundary, whose tangent at (0, 1)
// is proportional to (2y, y^2 + e^{2z} - 1).
GeodesicArc plane_yz_arc(double y, double z) {
  const Eigen::Vector3d dir = Eigen::Vector3d(0.0, 2.0 * y, y * y + std::expm1(2.0 * z)).normalized();
  const double chord = std::hypot(y, std::expm1(z)) / (2.0 * std::exp(z / 2.0));
  return GeodesicArc::from_direction(dir, 2.0 * std::asinh(chord));
}

}  // namespace

Eigen::Vector3d GeodesicInitial::direction() const {
  return {std::cos(theta) * std::cos(alpha), std::cos(theta) * std::sin(alpha), std::sin(theta)};
}

GeodesicInitial GeodesicInitial::from_direction(const Eigen::Vector3d& dir) {
  return {std::atan2(dir.y(), dir.x()), std::atan2(dir.z(), std::hypot(dir.x(), dir.y()))};
}

const char* to_string(GeodesicFamily f) {
  switch (f) {
    case GeodesicFamily::Plane: return "plane";
    case GeodesicFamily::Horizontal: return "horizontal";
    case GeodesicFamily::Fiber: return "fiber";
    case GeodesicFamily::General: return "general";
  }
  return "unknown";
}

GeodesicFamily classify_direction(const Eigen::Vector3d& dir) {
  const double u = std::abs(dir.x());
  const double v = std::abs(dir.y());
  const double w = std::abs(dir.z());
  if (u <= kFamilyTol && v <= kFamilyTol) return GeodesicFamily::Fiber;
  if (u <= kFamilyTol || v <= kFamilyTol) return GeodesicFamily::Plane;
  // Only the diagonal straight lines stay in the base plane through the origin.
  if (w <= kFamilyTol && std::abs(u - v) <= kFamilyTol) return GeodesicFamily::Horizontal;
  return GeodesicFamily::General;
}

GeodesicArc::GeodesicArc(const GeodesicInitial& initial, double length, Evaluation eval)
    : GeodesicArc(initial, initial.direction(), length, eval) {}

GeodesicArc::GeodesicArc(const GeodesicInitial& initial, const Eigen::Vector3d& dir,
                         double length, Evaluation eval)
    : initial_(initial), dir_(dir), length_(length), family_(classify_direction(dir)) {
  if (!(length >= 0.0) || !std::isfinite(length)) {
    throw SolError(ErrorCode::InvalidArgument, "geodesic length must be finite and >= 0");
  }
  if (family_ == GeodesicFamily::General || eval == Evaluation::ForceIntegration) {
    trajectory_ = std::make_shared<const GeodesicTrajectory>(
        GeodesicTrajectory::integrate(dir_, length_));
  }
}

GeodesicArc GeodesicArc::from_direction(const Eigen::Vector3d& dir, double length,
                                        Evaluation eval) {
  const double n = dir.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw SolError(ErrorCode::DegenerateTangent, "degenerate tangent");
  }
  // The caller's components are kept (not rebuilt from angles) so exact zeros
  // survive and select the closed forms.
  return GeodesicArc(GeodesicInitial::from_direction(dir), dir / n, length, eval);
}

void GeodesicArc::check_parameter(double s) const {
  if (!(s >= -kParamSlack && s <= length_ + kParamSlack)) {
    throw SolError(ErrorCode::OutOfRange, "geodesic parameter out of range");
  }
}

SolPoint GeodesicArc::point(double s) const {
  check_parameter(s);
  s = std::clamp(s, 0.0, length_);
  if (trajectory_) return to_point(trajectory_->state_at(s));
  const double u = dir_.x();
  const double v = dir_.y();
  const double w = dir_.z();
  switch (family_) {
    case GeodesicFamily::Fiber:
      return {0.0, 0.0, w * s};
    case GeodesicFamily::Horizontal:
      return {u * s, v * s, 0.0};
    case GeodesicFamily::Plane:
      if (std::abs(u) <= kFamilyTol) {
        const double d = plane_denominator(s, w);
        return {0.0, v * std::sinh(s) / d, -std::log(d)};
      } else {
        // Image of the [y,z] family under x <-> y, z <-> -z.
        const double d = plane_denominator(s, -w);
        return {u * std::sinh(s) / d, 0.0, std::log(d)};
      }
    case GeodesicFamily::General:
      break;
  }
  throw SolError(ErrorCode::InvalidArgument, "general geodesic without a trajectory");
}

Eigen::Vector3d GeodesicArc::velocity(double s) const {
  check_parameter(s);
  s = std::clamp(s, 0.0, length_);
  if (trajectory_) {
    const GeodesicState q = trajectory_->state_at(s);
    return {q[3], q[4], q[5]};
  }
  const double u = dir_.x();
  const double v = dir_.y();
  const double w = dir_.z();
  switch (family_) {
    case GeodesicFamily::Fiber:
      return {0.0, 0.0, w};
    case GeodesicFamily::Horizontal:
      return {u, v, 0.0};
    case GeodesicFamily::Plane:
      if (std::abs(u) <= kFamilyTol) {
        const double d = plane_denominator(s, w);
        return {0.0, v / (d * d), -(std::sinh(s) - w * std::cosh(s)) / d};
      } else {
        const double d = plane_denominator(s, -w);
        return {u / (d * d), 0.0, (std::sinh(s) + w * std::cosh(s)) / d};
      }
    case GeodesicFamily::General:
      break;
  }
  return Eigen::Vector3d::Zero();
}

SolPoint geodesic_point(const GeodesicArc& g, double s) { return g.point(s); }

SolTangent geodesic_tangent(const GeodesicArc& g, double s) {
  return SolTangent::at(g.point(s), g.velocity(s));
}

std::optional<GeodesicArc> closed_form_bvp(const SolPoint& t) {
  const bool x0 = std::abs(t.x) <= kFamilyTol;
  const bool y0 = std::abs(t.y) <= kFamilyTol;
  const bool z0 = std::abs(t.z) <= kFamilyTol;
  std::optional<GeodesicArc> arc;
  if (x0 && y0) {
    if (z0) return std::nullopt;
    arc = GeodesicArc::from_direction({0.0, 0.0, std::copysign(1.0, t.z)}, std::abs(t.z));
  } else if (x0) {
    arc = plane_yz_arc(t.y, t.z);
  } else if (y0) {
    // Solve in the [y,z] plane for the mirror image (0, x, -z), then map back.
    const GeodesicArc m = plane_yz_arc(t.x, -t.z);
    arc = GeodesicArc::from_direction({m.direction().y(), 0.0, -m.direction().z()}, m.length());
  } else if (z0 && std::abs(std::abs(t.x) - std::abs(t.y)) <= kFamilyTol) {
    arc = GeodesicArc::from_direction({t.x, t.y, 0.0}, std::hypot(t.x, t.y));
  } else {
    return std::nullopt;
  }
  const SolPoint end = arc->endpoint();
  const double scale = std::max({1.0, std::abs(t.x), std::abs(t.y), std::abs(t.z)});
  if (euclidean_delta(end, t).norm() > 1e-9 * scale) return std::nullopt;
  return arc;
}

GeodesicArc solve_geodesic_bvp(const SolPoint& target, const BvpOptions& opts) {
  if (target == kOrigin) throw SolError(ErrorCode::ZeroLengthCurve, "zero-length curve");
  if (!is_finite(target)) throw SolError(ErrorCode::InvalidArgument, "non-finite target");

  if (opts.use_closed_forms) {
    if (auto arc = closed_form_bvp(target)) return *arc;
  }

  const Eigen::Vector3d tgt(target.x, target.y, target.z);
  const Eigen::Vector3d seed = translation_tangent_at_origin(target).components();

  std::vector<ShootingOutcome> found;
  double best_residual = std::numeric_limits<double>::infinity();
  auto attempt = [&](const Eigen::Vector3d& v0) {
    ShootingOutcome o = newton_shoot(tgt, v0, opts);
    best_residual = std::min(best_residual, o.residual);
    if (o.converged) found.push_back(o);
  };

  attempt(seed);
  if (found.empty() || opts.exhaustive) {
    const double len = seed.norm();
    for (int i = 0; i < opts.grid_alpha; ++i) {
      const double alpha = -kPi + (i + 0.5) * 2.0 * kPi / opts.grid_alpha;
      for (int j = 0; j < opts.grid_theta; ++j) {
        const double theta = -kPi / 2.0 + (j + 0.5) * kPi / opts.grid_theta;
        attempt(len * GeodesicInitial{alpha, theta}.direction());
      }
    }
  }
  if (found.empty()) {
    throw BvpDivergence("bvp-divergence: no shooting start converged", best_residual);
  }

  const auto best = std::min_element(found.begin(), found.end(), [](const auto& a, const auto& b) {
    return a.velocity.norm() < b.velocity.norm();
  });
  GeodesicArc arc = GeodesicArc::from_direction(best->velocity, best->velocity.norm());
  const double mismatch = max_abs(euclidean_delta(arc.endpoint(), target));
  if (mismatch > opts.accept_tolerance) {
    throw BvpDivergence("bvp-divergence: converged arc misses the target", mismatch);
  }
  return arc;
}

double geodesic_distance(const SolPoint& p1, const SolPoint& p2, const BvpOptions& opts) {
  if (p1 == p2) return 0.0;
  const SolPoint target = translate_to_origin(p1, p2);
  if (target == kOrigin) return 0.0;
  return solve_geodesic_bvp(target, opts).length();
}

HalfPlanePoint halfplane_map(const SolPoint& p, HalfPlaneChart chart) {
  if (chart == HalfPlaneChart::XZ) return {p.x, std::exp(-p.z)};
  return {p.y, std::exp(p.z)};
}

double hyperbolic_distance(const HalfPlanePoint& a, const HalfPlanePoint& b) {
  const double chord = std::hypot(a.x1 - b.x1, a.x2 - b.x2);
  return 2.0 * std::asinh(chord / (2.0 * std::sqrt(a.x2 * b.x2)));
}

}  // namespace solgeo

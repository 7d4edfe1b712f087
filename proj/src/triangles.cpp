#include "solgeo/triangles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "solgeo/error.hpp"
#include "solgeo/translation_curves.hpp"

namespace solgeo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kParallelTol = 1e-9;

void require_positive(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw SolError(ErrorCode::InvalidArgument, "triangle parameter must be finite and > 0");
  }
}

Eigen::Vector3d initial_direction(const SolPoint& from, const SolPoint& to,
                                  const BvpOptions& opts) {
  const SolPoint target = translate_to_origin(from, to);
  if (target == kOrigin) throw SolError(ErrorCode::DegenerateTriangle, "degenerate triangle");
  return solve_geodesic_bvp(target, opts).direction();
}

// Both directions live at the origin, where the metric is Euclidean.
double vertex_angle(const SolPoint& v, const SolPoint& p, const SolPoint& q,
                    const BvpOptions& opts) {
  const double w = angle_between(SolTangent::at(kOrigin, initial_direction(v, p, opts)),
                                 SolTangent::at(kOrigin, initial_direction(v, q, opts)));
  if (w < kParallelTol || w > kPi - kParallelTol) {
    throw SolError(ErrorCode::DegenerateTriangle, "degenerate triangle");
  }
  return w;
}

std::array<SolPoint, 3> pi_path_vertices(double a, double t) {
  return {kOrigin, SolPoint{0.0, a, 0.0}, SolPoint{(1.0 - t) * a, 0.0, t * a}};
}

TriangleAngles angles_of(const std::array<SolPoint, 3>& v, const BvpOptions& opts) {
  return geodesic_triangle_angles(v[0], v[1], v[2], opts);
}

}  // namespace

TriangleAngles make_angles(double omega1, double omega2, double omega3) {
  return {omega1, omega2, omega3, omega1 + omega2 + omega3};
}

TriangleAngles geodesic_triangle_angles(const SolPoint& a1, const SolPoint& a2, const SolPoint& a3,
                                        const BvpOptions& opts) {
  if (a1 == a2 || a2 == a3 || a1 == a3) {
    throw SolError(ErrorCode::DegenerateTriangle, "degenerate triangle");
  }
  return make_angles(vertex_angle(a1, a2, a3, opts), vertex_angle(a2, a3, a1, opts),
                     vertex_angle(a3, a1, a2, opts));
}

TriangleAngles horizontal_isosceles_angles(double a) {
  require_positive(a);
  const double q = a * a + 4.0;
  const double w1 = kPi - std::acos(4.0 * a / std::pow(q, 1.5));
  const double w2 = std::acos(2.0 * std::numbers::sqrt2 / q);
  return make_angles(w1, w2, w2);
}

TriangleAngles hyperbolic_like_angles(double a) {
  require_positive(a);
  // The three vertex formulas divided through by e^{2a} so that large a
  // neither overflows nor cancels:
  //   w1 = pi/2 - atan(a/2)
  //   w2 = atan((e^{2a} + a^2 - 1) / (2a)) - atan(a/2)
  //   w3 = pi/2 - atan((e^{2a} - a^2 - 1) / (2a e^a))
  const double e = std::exp(-2.0 * a);
  const double one_minus_e = -std::expm1(-2.0 * a);
  const double half_slope = std::atan(a / 2.0);
  const double w1 = kPi / 2.0 - half_slope;
  const double w2 = std::atan2(one_minus_e + a * a * e, 2.0 * a * e) - half_slope;
  const double w3 = std::atan2(2.0 * a * std::exp(-a), one_minus_e - a * a * e);
  return make_angles(w1, w2, w3);
}

PiSumTriangle find_pi_sum_triangle(double a, const BvpOptions& opts) {
  require_positive(a);
  auto excess = [&](double t) { return angles_of(pi_path_vertices(a, t), opts).sum - kPi; };

  double lo = 0.0;
  double hi = 1.0;
  const double f_lo = excess(lo);
  const double f_hi = excess(hi);
  if (!(f_lo > 0.0 && f_hi < 0.0)) {
    throw SolError(ErrorCode::NoSignChange, "no sign change");
  }

  PiSumTriangle out;
  for (int iter = 0; iter < 64; ++iter) {
    const double mid = 0.5 * (lo + hi);
    out.t = mid;
    out.vertices = pi_path_vertices(a, mid);
    out.angles = angles_of(out.vertices, opts);
    const double f = out.angles.sum - kPi;
    if (std::abs(f) < 1e-6 || hi - lo < 1e-8) break;
    if (f > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return out;
}

double translation_angle_at(const SolPoint& p, const SolPoint& a1, const SolPoint& a2) {
  if (p == a1 || p == a2) throw SolError(ErrorCode::EndpointExcluded, "endpoint excluded");
  const SolTangent t1 = translation_tangent_at_origin(translate_to_origin(p, a1));
  const SolTangent t2 = translation_tangent_at_origin(translate_to_origin(p, a2));
  return angle_between(t1, t2);
}

HorizontalScanReport scan_horizontal_like(int n, std::uint64_t seed, const BvpOptions& opts) {
  if (n < 0) throw SolError(ErrorCode::InvalidArgument, "sample count must be >= 0");
  HorizontalScanReport report;
  report.requested = n;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  bool first = true;
  for (int i = 0; i < n; ++i) {
    ScannedTriangle tri;
    for (auto& v : tri.vertices) {
      const double x = coord(rng);
      const double y = coord(rng);
      v = {x, y, 0.0};
    }
    try {
      tri.angles = angles_of(tri.vertices, opts);
    } catch (const SolError&) {
      ++report.skipped;
      continue;
    }
    ++report.evaluated;
    report.min_sum = first ? tri.angles.sum : std::min(report.min_sum, tri.angles.sum);
    report.max_sum = first ? tri.angles.sum : std::max(report.max_sum, tri.angles.sum);
    first = false;
    if (tri.angles.sum <= kPi) report.counterexamples.push_back(tri);
  }
  if (n > 0) {
    for (double a : {0.5, 1.0, 2.0}) {
      const SolPoint a2{a, 0.0, 0.0};
      const SolPoint a3{0.0, a, 0.0};
      report.isosceles.push_back(
          {a, horizontal_isosceles_angles(a), geodesic_triangle_angles(kOrigin, a2, a3, opts)});
    }
  }
  return report;
}

}  // namespace solgeo

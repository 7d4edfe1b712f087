#pragma once

// Interior angles of geodesic triangles, the closed-form isosceles families,
// the angle-sum-pi construction and the translation-triangle angle used as the
// isoptic oracle.

#include <array>
#include <cstdint>
#include <vector>

#include "solgeo/geodesics.hpp"
#include "solgeo/sol_core.hpp"

namespace solgeo {

struct TriangleAngles {
  double omega1 = 0.0;
  double omega2 = 0.0;
  double omega3 = 0.0;
  double sum = 0.0;
};

TriangleAngles make_angles(double omega1, double omega2, double omega3);

/// Angle at each vertex between the geodesics to the other two, measured after
/// translating that vertex to the origin. Throws SolError(DegenerateTriangle)
/// for coincident vertices or when the two tangents at some vertex are
/// parallel within 1e-9 rad.
TriangleAngles geodesic_triangle_angles(const SolPoint& a1, const SolPoint& a2, const SolPoint& a3,
                                        const BvpOptions& opts = {});

/// Closed form for A1 = 0, A2 = (a,0,0), A3 = (0,a,0):
///   w1 = pi - acos(4a / (a^2+4)^{3/2}),  w2 = w3 = acos(2 sqrt2 / (a^2+4)).
TriangleAngles horizontal_isosceles_angles(double a);

/// Closed form for A1 = 0, A2 = (0,a,0), A3 = (0,0,a).
TriangleAngles hyperbolic_like_angles(double a);

/// Parameters of the reference angle tables.
inline constexpr std::array<double, 4> kTableParameters{1.0, 5.0, 50.0, 1000.0};

struct PiSumTriangle {
  double t = 0.0;
  std::array<SolPoint, 3> vertices;
  TriangleAngles angles;
};

/// A1 = 0, A2 = (0,a,0), A3(t) = (1-t)(a,0,0) + t(0,0,a); bisection on the
/// angle sum minus pi. Throws SolError(NoSignChange) unless the sum exceeds pi
/// at t = 0 and falls short of it at t = 1.
PiSumTriangle find_pi_sum_triangle(double a, const BvpOptions& opts = {});

/// Angle at P of the translation-like triangle P A1 A2.
double translation_angle_at(const SolPoint& p, const SolPoint& a1, const SolPoint& a2);

struct ScannedTriangle {
  std::array<SolPoint, 3> vertices;
  TriangleAngles angles;
};

struct IsoscelesCheck {
  double a = 0.0;
  TriangleAngles closed_form;
  TriangleAngles general;
};

struct HorizontalScanReport {
  int requested = 0;
  int evaluated = 0;
  int skipped = 0;  // degenerate or unsolved samples
  double min_sum = 0.0;
  double max_sum = 0.0;
  std::vector<ScannedTriangle> counterexamples;  // sum <= pi
  std::vector<IsoscelesCheck> isosceles;
};

/// Random triangles with vertices in the plane z = 0, coordinates uniform in
/// [-2, 2]. Exploratory only.
HorizontalScanReport scan_horizontal_like(int n, std::uint64_t seed, const BvpOptions& opts = {});

}  // namespace solgeo

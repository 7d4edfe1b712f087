// Acceptance run: one line per criterion, nonzero exit if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>
#include <json.hpp>

#include "solgeo/cli.hpp"
#include "solgeo/error.hpp"
#include "solgeo/geodesics.hpp"
#include "solgeo/isoptic.hpp"
#include "solgeo/mesher.hpp"
#include "solgeo/translation_curves.hpp"
#include "solgeo/triangles.hpp"
#include "test_support.hpp"

using namespace solgeo;
using Json = nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Json cli_json(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  if (run_cli(args, out, err) != 0) throw std::runtime_error("cli failed: " + err.str());
  return Json::parse(out.str());
}

double metric_speed(const SolPoint& p, const Eigen::Vector3d& v) {
  return std::sqrt(std::exp(2 * p.z) * v.x() * v.x() + std::exp(-2 * p.z) * v.y() * v.y() + v.z() * v.z());
}

Outcome table_check(const char* key, const std::vector<std::array<double, 4>>& expected) {
  const auto t0 = Clock::now();
  const Json rows = cli_json({"triangle", std::string("--") + key})[key];
  const double elapsed = seconds_since(t0);
  double worst = 0.0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const auto& r = rows.at(i);
    worst = std::max({worst, std::abs(r["omega1"].get<double>() - expected[i][0]),
                      std::abs(r["omega2"].get<double>() - expected[i][1]),
                      std::abs(r["omega3"].get<double>() - expected[i][2]),
                      std::abs(r["sum"].get<double>() - expected[i][3])});
  }
  return {rows.size() == expected.size() && worst <= 1e-4 && elapsed < 1.0,
          fmt::format("max deviation {:.2e} over {} rows, {:.3f} s", worst, rows.size(), elapsed)};
}

Outcome c1_table1() {
  return table_check("table1", {{1.93668, 0.96953, 0.96953, 3.87574},
                                {1.69922, 1.47311, 1.47311, 4.64543},
                                {1.57239, 1.56967, 1.56967, 4.71173},
                                {1.57080, 1.57079, 1.57079, 4.71239}});
}

Outcome c2_table2() {
  return table_check("table2", {{1.10715, 0.84281, 0.78979, 2.73975},
                                {0.38051, 0.38005, 0.06736, 0.82792},
                                {0.03998, 0.03998, 0.00000, 0.07996},
                                {0.00200, 0.00200, 0.00000, 0.00400}});
}

double angle_error(const TriangleAngles& a, const TriangleAngles& b) {
  return std::max({std::abs(a.omega1 - b.omega1), std::abs(a.omega2 - b.omega2),
                   std::abs(a.omega3 - b.omega3)});
}

Outcome c3_general_vs_closed() {
  const auto t0 = Clock::now();
  double horizontal_err = 0.0;
  double hyperbolic_err = 0.0;
  std::string horizontal_rows;
  for (double a : {1.0, 5.0}) {
    const TriangleAngles hg = geodesic_triangle_angles(kOrigin, {a, 0, 0}, {0, a, 0});
    const TriangleAngles hc = horizontal_isosceles_angles(a);
    horizontal_err = std::max(horizontal_err, angle_error(hg, hc));
    // Independent oracle: the tangents of this triangle come from the plane
    // and diagonal closed forms, giving cos w1 = -a^2/(a^2+4) and
    // cos w2 = sqrt2 / sqrt(a^2+4).
    const double w1 = std::acos(-a * a / (a * a + 4.0));
    const double w2 = std::acos(std::sqrt(2.0) / std::sqrt(a * a + 4.0));
    horizontal_rows += fmt::format(" a={}: solver ({:.5f}, {:.5f}, sum {:.5f}), exact-tangent ({:.5f}, {:.5f}),"
                                   " tabulated ({:.5f}, {:.5f});",
                                   a, hg.omega1, hg.omega2, hg.sum, w1, w2, hc.omega1, hc.omega2);
    const TriangleAngles yg = geodesic_triangle_angles(kOrigin, {0, a, 0}, {0, 0, a});
    hyperbolic_err = std::max(hyperbolic_err, angle_error(yg, hyperbolic_like_angles(a)));
  }
  const double elapsed = seconds_since(t0);
  return {horizontal_err <= 1e-6 && hyperbolic_err <= 1e-6 && elapsed < 30.0,
          fmt::format("hyperbolic-like config max err {:.2e}; horizontal config max err {:.2e};{} {:.1f} s",
                      hyperbolic_err, horizontal_err, horizontal_rows, elapsed)};
}

Outcome c4_integrator() {
  testkit::Sampler rng(4);
  double worst_point = 0.0;
  double worst_speed = 0.0;
  int counts[3] = {0, 0, 0};
  for (int i = 0; i < 100; ++i) {
    Eigen::Vector3d dir;
    const int kind = i % 4;
    const double sgn = rng.uniform(0, 1) < 0.5 ? -1.0 : 1.0;
    if (kind == 0) {
      const double t = rng.uniform(-kPi, kPi);
      dir = {0.0, std::cos(t), std::sin(t)};
    } else if (kind == 1) {
      const double t = rng.uniform(-kPi, kPi);
      dir = {std::cos(t), 0.0, std::sin(t)};
    } else if (kind == 2) {
      dir = Eigen::Vector3d(sgn, rng.uniform(0, 1) < 0.5 ? -1.0 : 1.0, 0.0).normalized();
    } else {
      dir = {0.0, 0.0, sgn};
    }
    const GeodesicArc closed = GeodesicArc::from_direction(dir, 5.0);
    const GeodesicArc integrated =
        GeodesicArc::from_direction(dir, 5.0, GeodesicArc::Evaluation::ForceIntegration);
    ++counts[closed.family() == GeodesicFamily::Plane ? 0 : closed.family() == GeodesicFamily::Horizontal ? 1 : 2];
    for (int k = 0; k <= 100; ++k) {
      const double s = 0.05 * k;
      const SolPoint p = integrated.point(s);
      worst_point = std::max(worst_point, testkit::max_abs_diff(p, closed.point(s)));
      worst_speed = std::max(worst_speed, std::abs(metric_speed(p, integrated.velocity(s)) - 1.0));
    }
  }
  return {worst_point <= 1e-8 && worst_speed <= 1e-8,
          fmt::format("{} plane / {} horizontal / {} fiber cases; max pointwise err {:.2e}, max |speed-1| {:.2e}",
                      counts[0], counts[1], counts[2], worst_point, worst_speed)};
}

Outcome c5_bvp() {
  const auto t0 = Clock::now();
  testkit::Sampler rng(5);
  double worst_residual = 0.0;
  double worst_excess = -1e300;
  int failures = 0;
  for (int i = 0; i < 200; ++i) {
    const GeodesicArc original = GeodesicArc::from_direction(rng.unit_vector(), rng.uniform(0.05, 4.0));
    const SolPoint target = original.endpoint();
    try {
      const GeodesicArc solved = solve_geodesic_bvp(target);
      worst_residual = std::max(worst_residual, testkit::max_abs_diff(solved.endpoint(), target));
      worst_excess = std::max(worst_excess, solved.length() - original.length());
    } catch (const SolError&) {
      ++failures;
    }
  }
  double worst_asym = 0.0;
  for (int i = 0; i < 50; ++i) {
    const SolPoint p = rng.point(1.0);
    const SolPoint q = rng.point(1.0);
    worst_asym = std::max(worst_asym, std::abs(geodesic_distance(p, q) - geodesic_distance(q, p)));
  }
  return {failures == 0 && worst_residual <= 1e-8 && worst_excess <= 1e-8 && worst_asym <= 1e-7,
          fmt::format("{} unsolved; max endpoint residual {:.2e}; max length excess {:.2e}; max asymmetry {:.2e}; "
                      "{:.1f} s",
                      failures, worst_residual, worst_excess, worst_asym, seconds_since(t0))};
}

Outcome c6_hyperbolic() {
  testkit::Sampler rng(6);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const SolPoint p{0.0, rng.uniform(-2, 2), rng.uniform(-2, 2)};
    const SolPoint q{0.0, rng.uniform(-2, 2), rng.uniform(-2, 2)};
    const double hyp = hyperbolic_distance(halfplane_map(p, HalfPlaneChart::YZ),
                                           halfplane_map(q, HalfPlaneChart::YZ));
    worst = std::max(worst, std::abs(geodesic_distance(p, q) - hyp));
  }
  return {worst <= 1e-8, fmt::format("50 pairs in x = 0, chart (y, e^z); max |d - d_H| {:.2e}", worst)};
}

Outcome c7_pi_sum() {
  const PiSumTriangle r = find_pi_sum_triangle(1.0);
  const double at0 = geodesic_triangle_angles(kOrigin, {0, 1, 0}, {1, 0, 0}).sum;
  const double at1 = geodesic_triangle_angles(kOrigin, {0, 1, 0}, {0, 0, 1}).sum;
  const double err = std::abs(r.angles.sum - kPi);
  return {err < 1e-6 && r.t > 0.0 && r.t < 1.0 && at0 > kPi && at1 < kPi,
          fmt::format("t_E = {:.8f}, |sum - pi| = {:.2e}, sum(0) = {:.6f}, sum(1) = {:.6f}", r.t, err, at0, at1)};
}

IsopticSpec random_spec(testkit::Sampler& rng) {
  return {rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5), rng.uniform(0.2, kPi - 0.2)};
}

Outcome c8_isoptic_oracle() {
  testkit::Sampler rng(8);
  double worst_quotient = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const IsopticSpec spec = random_spec(rng);
    const SolPoint p = rng.point(2.0);
    const SolTangent t1 = translation_tangent_at_origin(translate_to_origin(p, spec.first_endpoint()));
    const SolTangent t2 = translation_tangent_at_origin(translate_to_origin(p, spec.second_endpoint()));
    worst_quotient =
        std::max(worst_quotient, std::abs(isoptic_quotient(spec, p).cosine - std::cos(angle_between(t1, t2))));
  }
  // The angle at the origin is pi (it lies on the segment) and tends to 0 far
  // away, so rays from the origin cross every isoptic.
  double worst_angle = 0.0;
  int found = 0;
  int attempts = 0;
  while (found < 100 && attempts < 1000) {
    ++attempts;
    const IsopticSpec spec = random_spec(rng);
    const Eigen::Vector3d d = rng.unit_vector();
    auto at = [&](double r) { return SolPoint{r * d.x(), r * d.y(), r * d.z()}; };
    auto f = [&](double r) { return isoptic_value(spec, at(r)); };
    double lo = 1e-3;
    double hi = 0.0;
    try {
      for (double r = 0.02; r <= 10.0; r += 0.02) {
        if (f(lo) * f(r) < 0.0) {
          hi = r;
          break;
        }
        lo = r;
      }
      if (hi == 0.0) continue;
      for (int k = 0; k < 200 && hi - lo > 1e-15 * hi; ++k) {
        const double mid = 0.5 * (lo + hi);
        (f(lo) * f(mid) <= 0.0 ? hi : lo) = mid;
      }
    } catch (const SolError&) {
      continue;
    }
    const double angle = translation_angle_at(at(0.5 * (lo + hi)), spec.first_endpoint(), spec.second_endpoint());
    worst_angle = std::max(worst_angle, std::abs(angle - spec.alpha));
    ++found;
  }
  return {worst_quotient <= 1e-9 && found == 100 && worst_angle <= 1e-6,
          fmt::format("1000 quotient checks, max err {:.2e}; {} bracketed surface points ({} rays), max |angle - alpha| "
                      "{:.2e}",
                      worst_quotient, found, attempts, worst_angle)};
}

Outcome c9_thaloid() {
  const double levels[5] = {-1.0, -0.5, 0.0, 0.5, 1.0};
  double min_dev = 1e300;
  int specs = 0;
  double worst_sym = 0.0;
  int sym_cases = 0;
  testkit::Sampler rng(9);
  const SolIsometry flip = reflect_y();
  const SolIsometry swap = swap_xy_flip_z();
  for (double a : levels) {
    for (double b : levels) {
      for (double c : levels) {
        if (a == 0.0 && b == 0.0 && c == 0.0) continue;
        const IsopticSpec spec{a, b, c, kPi / 2.0};
        min_dev = std::min(min_dev, thaloid_sphere_deviation(spec).max_deviation);
        ++specs;
        const bool mirror = b == 0.0 || c == 0.0;
        const bool swapped = c == 0.0 && std::abs(a) == std::abs(b);
        if (!mirror && !swapped) continue;
        ++sym_cases;
        for (int i = 0; i < 200; ++i) {
          const SolPoint p = rng.point(2.0);
          const double v = thaloid_value(spec, p);
          if (mirror) worst_sym = std::max(worst_sym, std::abs(v - thaloid_value(spec, flip.apply(p))));
          if (swapped) worst_sym = std::max(worst_sym, std::abs(v - thaloid_value(spec, swap.apply(p))));
        }
      }
    }
  }
  return {min_dev > 1e-6 && worst_sym <= 1e-12,
          fmt::format("{} specs, min deviation {:.3e}; {} symmetric specs, max invariance err {:.2e}", specs, min_dev,
                      sym_cases, worst_sym)};
}

Outcome c10_classifier() {
  const auto t0 = Clock::now();
  const IsopticSpec closed{0.0, 0.0, 1.6, kPi / 2.0};
  const SurfaceClassification cc = classify_surface(closed);
  const TriMesh mesh = march([&](const SolPoint& p) { return isoptic_field_value(closed, p); },
                             GridSpec::uniform(Box::cube(5.0), 96));
  const long chi = euler_characteristic(mesh);
  const bool closed_ok = cc.kind == SurfaceKind::ClosedCandidate && is_closed(mesh) && chi == 2;

  const IsopticSpec open{0.6, 0.4, 1.0, kPi / 3.0};
  const SurfaceClassification oc = classify_surface(open);
  bool open_ok = oc.kind != SurfaceKind::ClosedCandidate;
  std::string hits;
  for (double L : {3.0, 5.0, 8.0}) {
    const TriMesh m = march([&](const SolPoint& p) { return isoptic_field_value(open, p); },
                            GridSpec::uniform(Box::cube(L), 96));
    const auto top = std::count_if(m.vertices.begin(), m.vertices.end(),
                                   [&](const SolPoint& v) { return v.z == L; });
    open_ok = open_ok && top > 0;
    hits += fmt::format(" L={}: {} top-face vertices;", L, top);
  }
  return {closed_ok && open_ok,
          fmt::format("(0,0,1.6,pi/2): {}, {} vertices, chi {}, closed {}; (0.6,0.4,1,pi/3): {};{} {:.1f} s",
                      to_string(cc.kind), mesh.vertices.size(), chi, is_closed(mesh), to_string(oc.kind), hits,
                      seconds_since(t0))};
}

Outcome c11_limit_anchors() {
  double worst = 0.0;
  bool roles = true;
  const double h = 1e-4;
  for (double a : {0.3, 1.0, 2.0}) {
    const IsopticSpec flat{a, 0.5, 0.0, 1.0};
    auto f = [&](double x) { return fiber_limit(flat, FiberDirection::Positive, x); };
    worst = std::max(worst, std::abs(f(0.0) - (1 - a * a) / (1 + a * a)));
    roles = roles && f(-h) > f(0.0) && f(h) > f(0.0);
    for (double x = -20.0; x <= 20.0; x += 0.01) roles = roles && f(x) >= f(0.0) - 1e-15;
  }
  int checked = 0;
  for (const IsopticSpec& spec : {IsopticSpec{0.7, 0.0, 1.3, 1.0}, IsopticSpec{-0.4, 0.9, -0.8, 1.0},
                                  IsopticSpec{0.0, 0.0, 1.0, 1.0}, IsopticSpec{0.6, 0.4, 1.0, 1.0}}) {
    for (FiberDirection dir : {FiberDirection::Positive, FiberDirection::Negative}) {
      auto f = [&](double x) { return fiber_limit(spec, dir, x); };
      const LimitExtrema e = limit_extrema(spec, dir);
      if (!e.maximum || e.minima.size() != 2) {
        roles = false;
        continue;
      }
      const double k = dir == FiberDirection::Positive ? spec.a : spec.b;
      const double g = dir == FiberDirection::Positive ? spec.c : -spec.c;
      const double x2 = k * std::exp(g) / std::expm1(g);
      worst = std::max({worst, std::abs(*e.maximum - x2), std::abs(f(x2) - 1.0)});
      roles = roles && f(x2 - h) < f(x2) && f(x2 + h) < f(x2);
      for (double x : e.minima) roles = roles && f(x - h) > f(x) && f(x + h) > f(x);
      ++checked;
    }
  }
  return {worst <= 1e-12 && roles,
          fmt::format("c = 0 anchors and {} (spec, direction) extrema sets; max anchor err {:.2e}; roles {}", checked,
                      worst, roles ? "confirmed" : "violated")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"C1 horizontal isosceles table", c1_table1},
      {"C2 hyperbolic-like table", c2_table2},
      {"C3 general vs closed-form triangles", c3_general_vs_closed},
      {"C4 geodesic integrator fidelity", c4_integrator},
      {"C5 BVP round trip and symmetry", c5_bvp},
      {"C6 hyperbolic embedding", c6_hyperbolic},
      {"C7 pi-sum triangle", c7_pi_sum},
      {"C8 isoptic oracle equivalence", c8_isoptic_oracle},
      {"C9 Thaloid is not a sphere", c9_thaloid},
      {"C10 classifier vs geometry", c10_classifier},
      {"C11 limit-function anchors", c11_limit_anchors},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, fmt::format("exception: {}", e.what())};
    }
    if (!o.pass) ++failed;
    fmt::print("[{}] {}: {}\n", o.pass ? "PASS" : "FAIL", name, o.detail);
    std::fflush(stdout);
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

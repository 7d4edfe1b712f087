#include "solgeo/isoptic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/tools/minima.hpp>

#include "solgeo/detail/series.hpp"
#include "solgeo/error.hpp"
#include "solgeo/translation_curves.hpp"

namespace solgeo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDenominatorFloor = 1e-300;

// The negative-fiber formulas are the positive ones with (a, c) -> (b, -c).
struct FiberParams {
  double k;
  double gamma;
};

FiberParams fiber_params(const IsopticSpec& s, FiberDirection dir) {
  return dir == FiberDirection::Positive ? FiberParams{s.a, s.c} : FiberParams{s.b, -s.c};
}

double limit_function(const FiberParams& p, double x) {
  const double eg = std::exp(p.gamma);
  const double num = x * x + p.k * std::expm1(p.gamma) * x + 1.0 - p.k * p.k * eg;
  const double dk = p.k - x;
  const double sk = p.k * eg + x;
  const double den = std::sqrt(eg * eg * dk * dk + dk * dk * sk * sk + sk * sk / (eg * eg) + 1.0);
  return num / den;
}

std::optional<double> printed_threshold(const FiberParams& p) {
  const double k = p.k;
  const double e1 = std::exp(p.gamma);
  const double e2 = e1 * e1;
  const double e3 = e2 * e1;
  const double e4 = e2 * e2;
  const double e5 = e4 * e1;
  const double e6 = e3 * e3;
  const double root = std::sqrt((k * k + 1.0) * e2 - 2.0 * e1 + 1.0);
  const double sgn = k > 0.0 ? -1.0 : 1.0;
  const double ar = sgn * k * root;
  const double num = 2.0 - 4.0 * e1 + ar + e2 * (2.0 * k * k + 2.0 + ar);
  const double den = std::sqrt((k * k + 1.0) * e6 + e2 * (k * k + 3.0 + 4.0 * ar) +
                               e4 * (6.0 * k * k + 3.0 + 4.0 * ar) - 2.0 * e1 - 4.0 * e3 -
                               2.0 * e5 + 1.0);
  const double value = e1 / root * num / den;
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

LimitExtrema extrema_of(const FiberParams& p) {
  const double m = std::expm1(p.gamma);
  if (std::abs(m) < 1e-12) return {{0.0}, std::nullopt};
  const double ke = p.k * std::exp(p.gamma);
  const double r = std::sqrt(ke * ke + m * m);
  return {{(ke + r) / m, (ke - r) / m}, ke / m};
}

struct Minimum {
  double location;
  double value;
};

Minimum refined_minimum(const FiberParams& p) {
  const LimitExtrema ext = extrema_of(p);
  Minimum best{0.0, std::numeric_limits<double>::infinity()};
  auto consider = [&](double x) {
    const double v = limit_function(p, x);
    if (v < best.value) best = {x, v};
  };
  for (double x : ext.minima) {
    consider(x);
    // Between the interior maximum and +-infinity the function has exactly one
    // critical point, so this bracket is unimodal.
    const double half = ext.maximum ? 0.5 * std::abs(x - *ext.maximum) : 1.0;
    const auto r = boost::math::tools::brent_find_minima(
        [&](double t) { return limit_function(p, t); }, x - half, x + half,
        std::numeric_limits<double>::digits / 2);
    consider(r.first);
  }
  return best;
}

}  // namespace

void IsopticSpec::validate() const {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(alpha)) {
    throw SolError(ErrorCode::InvalidArgument, "isoptic parameters must be finite");
  }
  if (a == 0.0 && b == 0.0 && c == 0.0) {
    throw SolError(ErrorCode::InvalidArgument, "segment endpoint must differ from the origin");
  }
  if (!(alpha > 0.0 && alpha < kPi)) {
    throw SolError(ErrorCode::InvalidArgument, "alpha must lie in (0, pi)");
  }
}

SolPoint IsopticSpec::second_endpoint() const { return antipodal_point(first_endpoint()); }

std::pair<SolTangent, SolTangent> isoptic_tangents(const IsopticSpec& spec, const SolPoint& p) {
  if (p == spec.first_endpoint() || p == spec.second_endpoint()) {
    throw SolError(ErrorCode::EndpointExcluded, "endpoint excluded");
  }
  const double d1 = p.z - spec.c;
  const double d2 = p.z + spec.c;
  const double h1 = -detail::half_sinh_ratio(d1);
  const double h2 = -detail::half_sinh_ratio(d2);
  const double e1 = std::exp(d2 / 2.0);  // e^{(z+c)/2}
  const double e2 = std::exp(d1 / 2.0);  // e^{(z-c)/2}
  const double xa = p.x + spec.a * std::exp(spec.c);
  const double yb = p.y + spec.b * std::exp(-spec.c);
  const SolTangent t1{kOrigin, h1 * (p.x - spec.a) * e1, h1 * (p.y - spec.b) / e1,
                      h1 * 2.0 * std::sinh(d1 / 2.0)};
  const SolTangent t2{kOrigin, h2 * xa * e2, h2 * yb / e2, h2 * 2.0 * std::sinh(d2 / 2.0)};
  return {t1, t2};
}

IsopticQuotient isoptic_quotient(const IsopticSpec& spec, const SolPoint& p) {
  const double ez = std::exp(p.z);
  const double ec = std::exp(spec.c);
  const double xa = p.x + spec.a * ec;
  const double yb = p.y + spec.b / ec;
  const double sm = std::sinh((p.z - spec.c) / 2.0);
  const double sp = std::sinh((p.z + spec.c) / 2.0);

  IsopticQuotient q;
  q.numerator = ez * xa * (p.x - spec.a) + yb * (p.y - spec.b) / ez + 4.0 * sp * sm;
  q.first_norm_sq = ez * ec * (p.x - spec.a) * (p.x - spec.a) +
                    (p.y - spec.b) * (p.y - spec.b) / (ez * ec) + 4.0 * sm * sm;
  q.second_norm_sq = ez / ec * xa * xa + ec / ez * yb * yb + 4.0 * sp * sp;
  if (q.first_norm_sq == 0.0 || q.second_norm_sq == 0.0) {
    throw SolError(ErrorCode::EndpointExcluded, "endpoint excluded");
  }
  const double den = std::sqrt(q.first_norm_sq) * std::sqrt(q.second_norm_sq);
  if (!(den >= kDenominatorFloor)) {
    throw SolError(ErrorCode::DegenerateConfiguration, "degenerate configuration");
  }
  q.cosine = q.numerator / den;
  return q;
}

double isoptic_value(const IsopticSpec& spec, const SolPoint& p) {
  return std::cos(spec.alpha) - isoptic_quotient(spec, p).cosine;
}

double isoptic_union_value(const IsopticSpec& spec, const SolPoint& p) {
  const double q = isoptic_quotient(spec, p).cosine;
  const double ca = std::cos(spec.alpha);
  return q * q - ca * ca;
}

double isoptic_field_value(const IsopticSpec& spec, const SolPoint& p,
                           const IsopticFieldOptions& opts) {
  constexpr double kMasked = 1e3;
  if (euclidean_delta(p, spec.first_endpoint()).norm() < opts.mask_radius ||
      euclidean_delta(p, spec.second_endpoint()).norm() < opts.mask_radius) {
    return kMasked;
  }
  try {
    return opts.union_with_supplement ? isoptic_union_value(spec, p) : isoptic_value(spec, p);
  } catch (const SolError&) {
    return kMasked;
  }
}

double thaloid_value(const IsopticSpec& spec, const SolPoint& p) {
  const double ez = std::exp(p.z);
  const double ec = std::exp(spec.c);
  return ez * (p.x + spec.a * ec) * (p.x - spec.a) + (p.y + spec.b / ec) * (p.y - spec.b) / ez +
         4.0 * std::sinh((p.z + spec.c) / 2.0) * std::sinh((p.z - spec.c) / 2.0);
}

Eigen::Vector3d thaloid_gradient(const IsopticSpec& spec, const SolPoint& p) {
  const double ez = std::exp(p.z);
  const double ec = std::exp(spec.c);
  const double xterm = ez * (p.x + spec.a * ec) * (p.x - spec.a);
  const double yterm = (p.y + spec.b / ec) * (p.y - spec.b) / ez;
  return {ez * (2.0 * p.x + spec.a * ec - spec.a), (2.0 * p.y + spec.b / ec - spec.b) / ez,
          xterm - yterm + 2.0 * std::sinh(p.z)};
}

ThaloidSphereComparison thaloid_sphere_deviation(const IsopticSpec& spec, int n_phi, int n_theta) {
  spec.validate();
  if (n_phi < 1 || n_theta < 1) {
    throw SolError(ErrorCode::InvalidArgument, "sphere sampling grid must be nonempty");
  }
  ThaloidSphereComparison out;
  out.radius = translation_distance(kOrigin, spec.first_endpoint());
  for (int i = 0; i < n_phi; ++i) {
    const double phi = -kPi + (i + 0.5) * 2.0 * kPi / n_phi;
    for (int j = 0; j < n_theta; ++j) {
      const double theta = -kPi / 2.0 + (j + 0.5) * kPi / n_theta;
      const SolPoint p = translation_point({phi, theta, out.radius});
      const double n = std::abs(thaloid_value(spec, p));
      if (n == 0.0) continue;
      const double g = thaloid_gradient(spec, p).norm();
      out.max_deviation = std::max(out.max_deviation, g > 0.0 ? n / g : n);
    }
  }
  return out;
}

double fiber_limit(const IsopticSpec& spec, FiberDirection dir, double coord) {
  return limit_function(fiber_params(spec, dir), coord);
}

LimitExtrema limit_extrema(const IsopticSpec& spec, FiberDirection dir) {
  return extrema_of(fiber_params(spec, dir));
}

const char* to_string(SurfaceKind k) {
  switch (k) {
    case SurfaceKind::ClosedCandidate: return "closed-candidate";
    case SurfaceKind::InfinitePositiveFiber: return "infinite-positive-fiber";
    case SurfaceKind::InfiniteNegativeFiber: return "infinite-negative-fiber";
    case SurfaceKind::InfiniteBoth: return "infinite-both";
  }
  return "unknown";
}

SurfaceClassification classify_surface(const IsopticSpec& spec) {
  spec.validate();
  const FiberParams pos = fiber_params(spec, FiberDirection::Positive);
  const FiberParams neg = fiber_params(spec, FiberDirection::Negative);
  const Minimum mp = refined_minimum(pos);
  const Minimum mn = refined_minimum(neg);

  SurfaceClassification out;
  out.threshold_pos = mp.value;
  out.argmin_pos = mp.location;
  out.threshold_neg = mn.value;
  out.argmin_neg = mn.location;
  out.printed_threshold_pos = printed_threshold(pos);
  out.printed_threshold_neg = printed_threshold(neg);

  const double ca = std::cos(spec.alpha);
  const bool up = ca > out.threshold_pos;
  const bool down = ca > out.threshold_neg;
  if (up && down) {
    out.kind = SurfaceKind::InfiniteBoth;
  } else if (up) {
    out.kind = SurfaceKind::InfinitePositiveFiber;
  } else if (down) {
    out.kind = SurfaceKind::InfiniteNegativeFiber;
  }
  return out;
}

}  // namespace solgeo

#include "solgeo/sol_core.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "solgeo/error.hpp"

namespace solgeo {

bool is_finite(const SolPoint& p) {
  return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z);
}

Eigen::Vector3d euclidean_delta(const SolPoint& a, const SolPoint& b) {
  return {a.x - b.x, a.y - b.y, a.z - b.z};
}

MetricTensor metric_at(const SolPoint& p) {
  const double e = std::exp(2.0 * p.z);
  return {e, 1.0 / e, 1.0};
}

double metric_inner(const SolTangent& t1, const SolTangent& t2) {
  const MetricTensor g = metric_at(t1.base);
  return t1.u * g.gxx * t2.u + t1.v * g.gyy * t2.v + t1.w * g.gzz * t2.w;
}

double riemannian_norm(const SolTangent& t) { return std::sqrt(metric_inner(t, t)); }

double angle_between(const SolTangent& t1, const SolTangent& t2) {
  const double n1 = riemannian_norm(t1);
  const double n2 = riemannian_norm(t2);
  if (!(n1 > 0.0) || !(n2 > 0.0)) {
    throw SolError(ErrorCode::DegenerateTangent, "degenerate tangent");
  }
  const double c = metric_inner(t1, t2) / (n1 * n2);
  return std::acos(std::clamp(c, -1.0, 1.0));
}

SolIsometry::SolIsometry() : m_(Matrix::Identity()) {}

SolIsometry::SolIsometry(const Matrix& m, bool is_translation)
    : m_(m), is_translation_(is_translation) {}

SolPoint SolIsometry::apply(const SolPoint& p) const {
  const Eigen::RowVector4d h = Eigen::RowVector4d(1.0, p.x, p.y, p.z) * m_;
  return {h(1) / h(0), h(2) / h(0), h(3) / h(0)};
}

SolTangent SolIsometry::push_forward(const SolTangent& t) const {
  const Eigen::RowVector3d v = Eigen::RowVector3d(t.u, t.v, t.w) * linear_part();
  return {apply(t.base), v(0), v(1), v(2)};
}

SolIsometry SolIsometry::then(const SolIsometry& next) const {
  return {m_ * next.m_, is_translation_ && next.is_translation_};
}

SolIsometry translation_to(const SolPoint& p) {
  SolIsometry::Matrix m;
  // clang-format off
  m << 1.0, p.x,              p.y,             p.z,
       0.0, std::exp(-p.z),   0.0,             0.0,
       0.0, 0.0,              std::exp(p.z),   0.0,
       0.0, 0.0,              0.0,             1.0;
  // clang-format on
  return {m, true};
}

SolIsometry inverse_translation(const SolPoint& p) {
  const double ez = std::exp(p.z);
  const double emz = std::exp(-p.z);
  SolIsometry::Matrix m;
  // clang-format off
  m << 1.0, -p.x * ez, -p.y * emz, -p.z,
       0.0, ez,        0.0,        0.0,
       0.0, 0.0,       emz,        0.0,
       0.0, 0.0,       0.0,        1.0;
  // clang-format on
  return {m, true};
}

SolPoint translate_to_origin(const SolPoint& base, const SolPoint& q) {
  return {std::exp(base.z) * (q.x - base.x), std::exp(-base.z) * (q.y - base.y), q.z - base.z};
}

SolIsometry reflect_y() {
  SolIsometry::Matrix m = SolIsometry::Matrix::Identity();
  m(2, 2) = -1.0;
  return {m, false};
}

SolIsometry swap_xy_flip_z() {
  SolIsometry::Matrix m = SolIsometry::Matrix::Zero();
  m(0, 0) = 1.0;
  m(1, 2) = 1.0;
  m(2, 1) = 1.0;
  m(3, 3) = -1.0;
  return {m, false};
}

std::array<SolIsometry, 8> stabilizer_elements() {
  // Closure of the two generators; entries are exact 0/+-1, so equality is exact.
  const std::array<SolIsometry, 2> gens{reflect_y(), swap_xy_flip_z()};
  std::vector<SolIsometry> group{SolIsometry()};
  for (std::size_t i = 0; i < group.size(); ++i) {
    for (const auto& g : gens) {
      const SolIsometry h = group[i].then(g);
      const bool seen = std::any_of(group.begin(), group.end(), [&](const SolIsometry& e) {
        return e.matrix() == h.matrix();
      });
      if (!seen) group.push_back(SolIsometry(h.matrix(), false));
    }
  }
  std::array<SolIsometry, 8> out;
  std::copy_n(group.begin(), 8, out.begin());
  out[0] = SolIsometry(out[0].matrix(), false);
  return out;
}

}  // namespace solgeo

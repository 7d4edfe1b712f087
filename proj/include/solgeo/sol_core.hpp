#pragma once

// Coordinate model of Sol: points in affine coordinates, tangents, the
// left-invariant metric ds^2 = e^{2z}dx^2 + e^{-2z}dy^2 + dz^2, the translation
// group and the D4 stabilizer of the origin.
//
// Isometries are 4x4 collineations acting on homogeneous *row* vectors
// (1, x, y, z) by right multiplication, so "apply A, then B" is the matrix
// product A * B.

#include <array>

#include <Eigen/Core>

namespace solgeo {

struct SolPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const SolPoint&, const SolPoint&) = default;
};

inline constexpr SolPoint kOrigin{};

bool is_finite(const SolPoint& p);

/// Model-coordinate difference a - b, as a Euclidean 3-vector.
Eigen::Vector3d euclidean_delta(const SolPoint& a, const SolPoint& b);

/// Tangent vector (u, v, w) in model coordinates attached to `base`.
struct SolTangent {
  SolPoint base;
  double u = 0.0;
  double v = 0.0;
  double w = 0.0;

  Eigen::Vector3d components() const { return {u, v, w}; }
  static SolTangent at(const SolPoint& base, const Eigen::Vector3d& c) {
    return {base, c.x(), c.y(), c.z()};
  }
};

/// Diagonal metric components at a point. gzz is always 1 and gxx * gyy == 1.
struct MetricTensor {
  double gxx = 1.0;
  double gyy = 1.0;
  double gzz = 1.0;
};

MetricTensor metric_at(const SolPoint& p);

/// g(t1, t2) at the common base point (bases are not compared).
double metric_inner(const SolTangent& t1, const SolTangent& t2);
double riemannian_norm(const SolTangent& t);

/// Angle in [0, pi] between two tangents sharing a base point, measured with
/// the metric at that point. Throws SolError(DegenerateTangent) on a zero vector.
double angle_between(const SolTangent& t1, const SolTangent& t2);

class SolIsometry {
 public:
  using Matrix = Eigen::Matrix4d;

  SolIsometry();
  SolIsometry(const Matrix& m, bool is_translation);

  const Matrix& matrix() const { return m_; }
  bool is_translation() const { return is_translation_; }

  /// Lower-right 3x3 block; pushes tangents forward as row vectors.
  Eigen::Matrix3d linear_part() const { return m_.block<3, 3>(1, 1); }

  SolPoint apply(const SolPoint& p) const;
  SolTangent push_forward(const SolTangent& t) const;

  /// Composition: first *this, then `next`.
  SolIsometry then(const SolIsometry& next) const;

 private:
  Matrix m_;
  bool is_translation_ = true;
};

/// The translation q -> q * p of the group law; takes the origin to p.
SolIsometry translation_to(const SolPoint& p);

/// Explicit inverse of translation_to(p); maps p to the origin.
SolIsometry inverse_translation(const SolPoint& p);

/// inverse_translation(base).apply(q) written out componentwise:
/// (e^{z}(q.x - x), e^{-z}(q.y - y), q.z - z) with (x, y, z) = base.
/// Equal coordinates map to exact zeros.
SolPoint translate_to_origin(const SolPoint& base, const SolPoint& q);

/// y <-> -y
SolIsometry reflect_y();
/// x <-> y, z <-> -z
SolIsometry swap_xy_flip_z();

/// The eight elements of the stabilizer of the origin, identity first.
std::array<SolIsometry, 8> stabilizer_elements();

}  // namespace solgeo

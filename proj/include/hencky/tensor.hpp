#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "hencky/errors.hpp"
#include "hencky/tolerances.hpp"

// Fixed-size 3D tensor types with value semantics. All operations are pure.

namespace hencky {

struct Vec3 {
  double v[3]{};

  constexpr double& operator[](int i) { return v[i]; }
  constexpr double operator[](int i) const { return v[i]; }
};

constexpr Vec3 operator+(Vec3 a, Vec3 b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

constexpr Vec3 operator-(Vec3 a, Vec3 b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

constexpr Vec3 operator*(double s, Vec3 a) { return {s * a[0], s * a[1], s * a[2]}; }

constexpr double dot(Vec3 a, Vec3 b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }

inline Vec3 normalized(Vec3 a) {
  const double n = norm(a);
  if (!(n > 0.0)) throw InvalidInputError("normalized: zero vector");
  return (1.0 / n) * a;
}

inline bool is_finite(Vec3 a) {
  return std::isfinite(a[0]) && std::isfinite(a[1]) && std::isfinite(a[2]);
}

// General 3x3 tensor, row-major.
struct Mat3 {
  double m[3][3]{};

  static constexpr Mat3 identity() {
    Mat3 r;
    r.m[0][0] = r.m[1][1] = r.m[2][2] = 1.0;
    return r;
  }
  static constexpr Mat3 zero() { return {}; }

  constexpr double& operator()(int i, int j) { return m[i][j]; }
  constexpr double operator()(int i, int j) const { return m[i][j]; }
};

constexpr Mat3 operator+(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m[i][j] = a.m[i][j] + b.m[i][j];
  return r;
}

constexpr Mat3 operator-(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m[i][j] = a.m[i][j] - b.m[i][j];
  return r;
}

constexpr Mat3 operator*(double s, const Mat3& a) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m[i][j] = s * a.m[i][j];
  return r;
}

constexpr Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      r.m[i][j] = a.m[i][0] * b.m[0][j] + a.m[i][1] * b.m[1][j] + a.m[i][2] * b.m[2][j];
  return r;
}

constexpr Vec3 operator*(const Mat3& a, Vec3 x) {
  return {a.m[0][0] * x[0] + a.m[0][1] * x[1] + a.m[0][2] * x[2],
          a.m[1][0] * x[0] + a.m[1][1] * x[1] + a.m[1][2] * x[2],
          a.m[2][0] * x[0] + a.m[2][1] * x[1] + a.m[2][2] * x[2]};
}

constexpr Mat3 transpose(const Mat3& a) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m[i][j] = a.m[j][i];
  return r;
}

constexpr double trace(const Mat3& a) { return a.m[0][0] + a.m[1][1] + a.m[2][2]; }

constexpr double det(const Mat3& a) {
  return a.m[0][0] * (a.m[1][1] * a.m[2][2] - a.m[1][2] * a.m[2][1]) -
         a.m[0][1] * (a.m[1][0] * a.m[2][2] - a.m[1][2] * a.m[2][0]) +
         a.m[0][2] * (a.m[1][0] * a.m[2][1] - a.m[1][1] * a.m[2][0]);
}

inline double frobenius_norm(const Mat3& a) {
  double s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += a.m[i][j] * a.m[i][j];
  return std::sqrt(s);
}

inline bool is_finite(const Mat3& a) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (!std::isfinite(a.m[i][j])) return false;
  return true;
}

constexpr Mat3 outer(Vec3 a, Vec3 b) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m[i][j] = a[i] * b[j];
  return r;
}

// Symmetric 3x3 tensor. The six independent components are stored once, as
// plain tensor components: no factor 2 on the shears (not a Voigt vector).
// Full-index access (i,j) returns the mirrored component for i != j, so the
// reconstructed matrix is exactly symmetric by construction.
struct Sym3 {
  double xx{}, yy{}, zz{}, xy{}, xz{}, yz{};

  static constexpr Sym3 identity() { return {1.0, 1.0, 1.0, 0.0, 0.0, 0.0}; }
  static constexpr Sym3 diagonal(double a, double b, double c) {
    return {a, b, c, 0.0, 0.0, 0.0};
  }

  constexpr double operator()(int i, int j) const {
    if (i == j) return i == 0 ? xx : (i == 1 ? yy : zz);
    const int s = i + j;  // (0,1)->xy, (0,2)->xz, (1,2)->yz
    return s == 1 ? xy : (s == 2 ? xz : yz);
  }
};

constexpr Sym3 operator+(const Sym3& a, const Sym3& b) {
  return {a.xx + b.xx, a.yy + b.yy, a.zz + b.zz, a.xy + b.xy, a.xz + b.xz, a.yz + b.yz};
}

constexpr Sym3 operator-(const Sym3& a, const Sym3& b) {
  return {a.xx - b.xx, a.yy - b.yy, a.zz - b.zz, a.xy - b.xy, a.xz - b.xz, a.yz - b.yz};
}

constexpr Sym3 operator*(double s, const Sym3& a) {
  return {s * a.xx, s * a.yy, s * a.zz, s * a.xy, s * a.xz, s * a.yz};
}

constexpr Sym3 operator-(const Sym3& a) { return -1.0 * a; }

constexpr double trace(const Sym3& a) { return a.xx + a.yy + a.zz; }

constexpr double det(const Sym3& a) {
  return a.xx * (a.yy * a.zz - a.yz * a.yz) - a.xy * (a.xy * a.zz - a.yz * a.xz) +
         a.xz * (a.xy * a.yz - a.yy * a.xz);
}

// deviatoric part X - (tr X / 3) I
constexpr Sym3 dev(const Sym3& a) {
  const double m = trace(a) / 3.0;
  return {a.xx - m, a.yy - m, a.zz - m, a.xy, a.xz, a.yz};
}

inline double frobenius_norm(const Sym3& a) {
  return std::sqrt(a.xx * a.xx + a.yy * a.yy + a.zz * a.zz +
                   2.0 * (a.xy * a.xy + a.xz * a.xz + a.yz * a.yz));
}

inline bool is_finite(const Sym3& a) {
  return std::isfinite(a.xx) && std::isfinite(a.yy) && std::isfinite(a.zz) &&
         std::isfinite(a.xy) && std::isfinite(a.xz) && std::isfinite(a.yz);
}

constexpr Mat3 mat(const Sym3& a) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m[i][j] = a(i, j);
  return r;
}

// symmetric part (A + A^T)/2
constexpr Sym3 sym(const Mat3& a) {
  return {a.m[0][0],
          a.m[1][1],
          a.m[2][2],
          0.5 * (a.m[0][1] + a.m[1][0]),
          0.5 * (a.m[0][2] + a.m[2][0]),
          0.5 * (a.m[1][2] + a.m[2][1])};
}

constexpr Sym3 outer(Vec3 n) {
  return {n[0] * n[0], n[1] * n[1], n[2] * n[2], n[0] * n[1], n[0] * n[2], n[1] * n[2]};
}

constexpr Vec3 operator*(const Sym3& a, Vec3 x) { return mat(a) * x; }

// trace inner product tr(AB); off-diagonal components count twice
constexpr double inner(const Sym3& a, const Sym3& b) {
  return a.xx * b.xx + a.yy * b.yy + a.zz * b.zz +
         2.0 * (a.xy * b.xy + a.xz * b.xz + a.yz * b.yz);
}

// ||AB - BA||_F; zero exactly when A and B are coaxial
inline double commutator_norm(const Sym3& a, const Sym3& b) {
  const Mat3 ab = mat(a) * mat(b);
  return frobenius_norm(ab - transpose(ab));
}

// relative Frobenius discrepancy with a unit floor, so zero-stress states
// compare cleanly instead of dividing noise by noise
inline double rel_diff(const Sym3& a, const Sym3& b) {
  return frobenius_norm(a - b) / std::max({1.0, frobenius_norm(a), frobenius_norm(b)});
}

// Proper orthogonal 3x3 tensor. Construction enforces R^T R = I and det R = 1.
class Rot3 {
 public:
  explicit Rot3(const Mat3& r) : m_(r) {
    if (!is_finite(r)) throw InvalidInputError("Rot3: non-finite entries");
    const double ortho = frobenius_norm(transpose(r) * r - Mat3::identity());
    const double d = det(r);
    if (ortho > tol::rotation_orthogonality || std::abs(d - 1.0) > tol::rotation_orthogonality)
      throw InvalidInputError("Rot3: not proper orthogonal (||R^T R - I|| = " +
                              std::to_string(ortho) + ", det = " + std::to_string(d) + ")");
  }

  static Rot3 identity() { return Rot3(Mat3::identity()); }

  // Rodrigues formula; the axis is normalized here
  static Rot3 axis_angle(Vec3 axis, double angle) {
    const Vec3 n = normalized(axis);
    const double c = std::cos(angle), s = std::sin(angle);
    Mat3 r;
    r(0, 0) = c + n[0] * n[0] * (1.0 - c);
    r(0, 1) = n[0] * n[1] * (1.0 - c) - n[2] * s;
    r(0, 2) = n[0] * n[2] * (1.0 - c) + n[1] * s;
    r(1, 0) = n[1] * n[0] * (1.0 - c) + n[2] * s;
    r(1, 1) = c + n[1] * n[1] * (1.0 - c);
    r(1, 2) = n[1] * n[2] * (1.0 - c) - n[0] * s;
    r(2, 0) = n[2] * n[0] * (1.0 - c) - n[1] * s;
    r(2, 1) = n[2] * n[1] * (1.0 - c) + n[0] * s;
    r(2, 2) = c + n[2] * n[2] * (1.0 - c);
    return Rot3(r);
  }

  const Mat3& matrix() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }
  Vec3 column(int j) const { return {m_(0, j), m_(1, j), m_(2, j)}; }

 private:
  Mat3 m_;
};

inline Rot3 transpose(const Rot3& q) { return Rot3(transpose(q.matrix())); }

inline Rot3 operator*(const Rot3& a, const Rot3& b) { return Rot3(a.matrix() * b.matrix()); }

// Q A Q^T, exactly symmetrized
inline Sym3 rotate(const Sym3& a, const Rot3& q) {
  return sym(q.matrix() * mat(a) * transpose(q.matrix()));
}

// Q^T A Q
inline Sym3 rotate_back(const Sym3& a, const Rot3& q) {
  return sym(transpose(q.matrix()) * mat(a) * q.matrix());
}

// The rotation of angle pi around a unit axis n: S = 2 n n^T - I. It keeps n
// fixed and flips every vector orthogonal to n.
inline Rot3 axis_flip(Vec3 n) {
  if (!is_finite(n) || std::abs(norm(n) - 1.0) > tol::unit_vector)
    throw InvalidInputError("axis_flip: axis must be a unit vector");
  const Sym3 s = 2.0 * outer(n) - Sym3::identity();
  return Rot3(mat(s));
}

}  // namespace hencky

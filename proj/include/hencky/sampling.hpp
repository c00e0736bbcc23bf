#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "hencky/kinematics.hpp"
#include "hencky/spectral.hpp"
#include "hencky/tensor.hpp"

// Seeded random generation of the objects the property sweeps consume:
// rotations, SPD tensors, deformation gradients. All draws go through one
// uniform helper built directly on the generator output, so streams depend
// only on the seed and the draw order, not on the standard library's
// distribution implementations.

namespace hencky {

using Rng = std::mt19937_64;

// uniform double in [lo, hi) from the top 53 bits
inline double uniform(Rng& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

// uniform direction by rejection inside the unit ball
inline Vec3 random_unit_vector(Rng& rng) {
  for (;;) {
    const Vec3 v{uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
    const double n2 = dot(v, v);
    if (n2 > 1e-4 && n2 <= 1.0) return (1.0 / std::sqrt(n2)) * v;
  }
}

// rotation from a quaternion drawn uniformly on the 3-sphere (rejection in
// the 4-ball, then radial projection)
inline Rot3 random_rotation(Rng& rng) {
  for (;;) {
    const double w = uniform(rng, -1.0, 1.0);
    const double x = uniform(rng, -1.0, 1.0);
    const double y = uniform(rng, -1.0, 1.0);
    const double z = uniform(rng, -1.0, 1.0);
    const double n2 = w * w + x * x + y * y + z * z;
    if (n2 < 1e-4 || n2 > 1.0) continue;
    const double s = 1.0 / std::sqrt(n2);
    const double qw = w * s, qx = x * s, qy = y * s, qz = z * s;
    Mat3 r;
    r(0, 0) = 1.0 - 2.0 * (qy * qy + qz * qz);
    r(0, 1) = 2.0 * (qx * qy - qw * qz);
    r(0, 2) = 2.0 * (qx * qz + qw * qy);
    r(1, 0) = 2.0 * (qx * qy + qw * qz);
    r(1, 1) = 1.0 - 2.0 * (qx * qx + qz * qz);
    r(1, 2) = 2.0 * (qy * qz - qw * qx);
    r(2, 0) = 2.0 * (qx * qz - qw * qy);
    r(2, 1) = 2.0 * (qy * qz + qw * qx);
    r(2, 2) = 1.0 - 2.0 * (qx * qx + qy * qy);
    return Rot3(r);
  }
}

// all six components uniform in [lo, hi)
inline Sym3 random_symmetric(Rng& rng, double lo, double hi) {
  return {uniform(rng, lo, hi), uniform(rng, lo, hi), uniform(rng, lo, hi),
          uniform(rng, lo, hi), uniform(rng, lo, hi), uniform(rng, lo, hi)};
}

// random frame with eigenvalues uniform in [lo, hi); SPD when lo > 0
inline Sym3 random_spd(Rng& rng, double lo, double hi) {
  const Rot3 q = random_rotation(rng);
  return compose(q, {uniform(rng, lo, hi), uniform(rng, lo, hi), uniform(rng, lo, hi)});
}

// F = (I + 0.3 G) diag(l1, l2, l3) with G uniform unit-scale entries and
// stretches in [0.7, 1.5], resampled until det F lands in [0.5, 2]. Covers
// rotation, stretch, and shear while keeping B comfortably positive definite.
inline DefGrad random_defgrad(Rng& rng) {
  for (;;) {
    Mat3 g;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) g(i, j) = uniform(rng, -1.0, 1.0);
    Mat3 d = Mat3::zero();
    for (int i = 0; i < 3; ++i) d(i, i) = uniform(rng, 0.7, 1.5);
    const Mat3 f = (Mat3::identity() + 0.3 * g) * d;
    const double detf = det(f);
    if (detf >= 0.5 && detf <= 2.0) return DefGrad(f);
  }
}

}  // namespace hencky

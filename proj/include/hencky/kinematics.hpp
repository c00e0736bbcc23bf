#pragma once

#include <cmath>
#include <string>

#include "hencky/errors.hpp"
#include "hencky/spectral.hpp"
#include "hencky/tensor.hpp"
#include "hencky/tolerances.hpp"

// Finite-strain kinematics: deformation gradient, Cauchy-Green tensors,
// polar decomposition, logarithmic strain.

namespace hencky {

// Deformation gradient with det F validated at construction (orientation
// preserved, no collapse). The determinant is cached.
class DefGrad {
 public:
  explicit DefGrad(const Mat3& f, double det_floor = tol::defgrad_det_floor)
      : m_(f), det_(det(f)) {
    if (!is_finite(f)) throw DegenerateDeformationError("DefGrad: non-finite entries");
    if (!(det_ >= det_floor))
      throw DegenerateDeformationError("DefGrad: det F = " + std::to_string(det_) +
                                       " is below the floor " + std::to_string(det_floor));
  }

  static DefGrad identity() { return DefGrad(Mat3::identity()); }

  const Mat3& matrix() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }

  // det F = rho0 / rho, the reference-to-current mass density ratio
  double determinant() const { return det_; }

 private:
  Mat3 m_;
  double det_;
};

// C = F^T F
inline Sym3 right_cauchy_green(const DefGrad& f) {
  return sym(transpose(f.matrix()) * f.matrix());
}

// B = F F^T
inline Sym3 left_cauchy_green(const DefGrad& f) {
  return sym(f.matrix() * transpose(f.matrix()));
}

struct PolarFactors {
  Rot3 rotation;  // R
  Sym3 stretch;   // U, symmetric positive definite
};

// F = R U with U = sqrt(F^T F). The stretch eigenvalues are checked against a
// floor before inverting, so a nearly singular F fails loudly.
inline PolarFactors polar(const DefGrad& f) {
  const Sym3 c = right_cauchy_green(f);
  const EigenDecomp e = eig_sym(c);
  if (!(e.eigenvalues[0] > tol::stretch_floor * tol::stretch_floor))
    throw DegenerateDeformationError(
        "polar: principal stretch " + std::to_string(std::sqrt(std::max(e.eigenvalues[0], 0.0))) +
        " is below the floor " + std::to_string(tol::stretch_floor));
  Vec3 s, sinv;
  for (int k = 0; k < 3; ++k) {
    s[k] = std::sqrt(e.eigenvalues[k]);
    sinv[k] = 1.0 / s[k];
  }
  const Sym3 u = compose(e.frame, s);
  const Sym3 uinv = compose(e.frame, sinv);
  return {Rot3(f.matrix() * mat(uinv)), u};
}

// Hencky (logarithmic) strain ln B of the left Cauchy-Green tensor.
inline Sym3 log_strain(const DefGrad& f) { return log_sym(left_cauchy_green(f)); }

// rho0 / rho = det F
inline double mass_ratio(const DefGrad& f) { return f.determinant(); }

}  // namespace hencky

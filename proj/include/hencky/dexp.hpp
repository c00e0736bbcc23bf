#pragma once

#include <cmath>
#include <string>

#include "hencky/errors.hpp"
#include "hencky/quadrature.hpp"
#include "hencky/spectral.hpp"
#include "hencky/tensor.hpp"
#include "hencky/tolerances.hpp"

// Directional (Frechet) derivative of the tensor exponential at a symmetric
// argument, in three independent forms: an eigenbasis divided-difference
// kernel, an integral representation evaluated by quadrature, and a central
// finite difference. The three agree to tight tolerances on symmetric inputs,
// which the tests exploit.

namespace hencky {

// First divided difference of exp: (e^x - e^y)/(x - y), with the confluent
// limit e^x on the diagonal. Near-coincident arguments switch to the exact
// product form e^((x+y)/2) * sinh(d)/d to avoid catastrophic cancellation.
inline double exp_divided_difference(double x, double y) {
  const double scale = std::max({1.0, std::abs(x), std::abs(y)});
  const double d = 0.5 * (x - y);
  if (std::abs(x - y) <= tol::spectral_gap_rel * scale) {
    const double mid = 0.5 * (x + y);
    const double sinhc = std::abs(d) < 1e-8 ? 1.0 + d * d / 6.0 : std::sinh(d) / d;
    return std::exp(mid) * sinhc;
  }
  return (std::exp(x) - std::exp(y)) / (x - y);
}

// D exp(A)[dA] via the spectral formula: in the eigenbasis of A the derivative
// acts componentwise as the divided-difference kernel of exp.
inline Sym3 dexp_spectral(const Sym3& a, const Sym3& da) {
  if (!is_finite(a) || !is_finite(da))
    throw InvalidInputError("dexp_spectral: non-finite input");
  const EigenDecomp e = eig_sym(a);
  const Sym3 d = rotate_back(da, e.frame);
  const Vec3& lam = e.eigenvalues;
  Sym3 k;
  k.xx = exp_divided_difference(lam[0], lam[0]) * d.xx;
  k.yy = exp_divided_difference(lam[1], lam[1]) * d.yy;
  k.zz = exp_divided_difference(lam[2], lam[2]) * d.zz;
  k.xy = exp_divided_difference(lam[0], lam[1]) * d.xy;
  k.xz = exp_divided_difference(lam[0], lam[2]) * d.xz;
  k.yz = exp_divided_difference(lam[1], lam[2]) * d.yz;
  return rotate(k, e.frame);
}

// D exp(A)[dA] via the integral representation
//   exp(A) * int_0^1 exp(-sA) dA exp(sA) ds
// evaluated with Gauss-Legendre quadrature. The exact integral is symmetric,
// and mirror-symmetric node sets preserve that exactly, so any asymmetry left
// before the final symmetrization is round-off; it is recorded (pass
// asymmetry_rel to read it) and asserted tiny.
inline Sym3 dexp_quadrature(const Sym3& a, const Sym3& da, int nodes = 16,
                            double* asymmetry_rel = nullptr) {
  if (!is_finite(a) || !is_finite(da))
    throw InvalidInputError("dexp_quadrature: non-finite input");
  const QuadratureRule rule = gauss_legendre_unit(nodes);

  // One decomposition serves every node: exp(sA) shares the frame of A.
  const EigenDecomp e = eig_sym(a);
  const Mat3 q = e.frame.matrix();
  const Mat3 qt = transpose(q);
  const Mat3 dm = mat(da);

  Mat3 integral = Mat3::zero();
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double s = rule.nodes[i];
    Mat3 eneg = Mat3::zero(), epos = Mat3::zero();
    for (int k = 0; k < 3; ++k) {
      eneg(k, k) = std::exp(-s * e.eigenvalues[k]);
      epos(k, k) = std::exp(s * e.eigenvalues[k]);
    }
    const Mat3 term = (q * eneg * qt) * dm * (q * epos * qt);
    integral = integral + rule.weights[i] * term;
  }
  Mat3 expa = Mat3::zero();
  for (int k = 0; k < 3; ++k) expa(k, k) = std::exp(e.eigenvalues[k]);
  const Mat3 x = (q * expa * qt) * integral;

  const double denom = std::max(1.0, frobenius_norm(x));
  const double asym = frobenius_norm(x - transpose(x)) / denom;
  if (asymmetry_rel) *asymmetry_rel = asym;
  if (asym > tol::quadrature_asymmetry_rel)
    throw InternalConsistencyError(
        "dexp_quadrature: asymmetry " + std::to_string(asym) +
        " exceeds tolerance; increase the node count");
  return sym(x);
}

// Central finite difference (exp(A + t dA) - exp(A - t dA)) / (2t) with the
// step scaled to the size of A.
inline Sym3 dexp_fd(const Sym3& a, const Sym3& da, double step = 0.0) {
  if (!is_finite(a) || !is_finite(da)) throw InvalidInputError("dexp_fd: non-finite input");
  const double t = step > 0.0 ? step : tol::fd_step_base * (1.0 + frobenius_norm(a));
  return (1.0 / (2.0 * t)) * (exp_sym(a + t * da) - exp_sym(a - t * da));
}

}  // namespace hencky

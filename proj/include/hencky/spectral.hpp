#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "hencky/errors.hpp"
#include "hencky/tensor.hpp"
#include "hencky/tolerances.hpp"

// Spectral decomposition of symmetric 3x3 tensors and isotropic tensor
// functions built on it (exp, log, sqrt, powers, inverse).

namespace hencky {

// Eigenvalues ascending; frame columns are the matching orthonormal
// eigenvectors, oriented so det = +1.
struct EigenDecomp {
  Vec3 eigenvalues;
  Rot3 frame;
};

namespace detail {

inline double offdiag_norm(const Mat3& a) {
  return std::sqrt(2.0 * (a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2)));
}

}  // namespace detail

// Cyclic Jacobi iteration. Terminates when the off-diagonal norm falls below
// a relative floor of the input norm; the rotation count is bounded, and
// failure to converge is an internal error rather than a silent bad answer.
inline EigenDecomp eig_sym(const Sym3& s) {
  if (!is_finite(s)) throw InvalidInputError("eig_sym: non-finite input");

  Mat3 a = mat(s);
  Mat3 v = Mat3::identity();
  const double anorm = frobenius_norm(a);
  const double stop = tol::eig_offdiag_rel * std::max(anorm, 1e-300);

  bool converged = detail::offdiag_norm(a) <= stop;
  for (int sweep = 0; sweep < tol::eig_max_sweeps && !converged; ++sweep) {
    for (int p = 0; p < 2; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Stable rotation: theta from the diagonal gap, smaller root for t.
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        const double tau = sn / (1.0 + c);

        const double app = a(p, p), aqq = a(q, q);
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = a(q, p) = 0.0;
        const int r = 3 - p - q;  // the index not being rotated
        const double arp = a(r, p), arq = a(r, q);
        a(r, p) = a(p, r) = arp - sn * (arq + tau * arp);
        a(r, q) = a(q, r) = arq + sn * (arp - tau * arq);
        for (int i = 0; i < 3; ++i) {
          const double vip = v(i, p), viq = v(i, q);
          v(i, p) = vip - sn * (viq + tau * vip);
          v(i, q) = viq + sn * (vip - tau * viq);
        }
      }
    }
    converged = detail::offdiag_norm(a) <= stop;
  }
  if (!converged)
    throw InternalConsistencyError("eig_sym: Jacobi iteration did not converge");

  // Sort eigenvalues ascending, permuting columns alongside.
  int order[3] = {0, 1, 2};
  double lam[3] = {a(0, 0), a(1, 1), a(2, 2)};
  std::sort(order, order + 3, [&](int i, int j) { return lam[i] < lam[j]; });

  Mat3 q;
  Vec3 w;
  for (int k = 0; k < 3; ++k) {
    w[k] = lam[order[k]];
    for (int i = 0; i < 3; ++i) q(i, k) = v(i, order[k]);
  }
  // Jacobi rotations and column swaps can leave det = -1; flip one column.
  if (det(q) < 0.0)
    for (int i = 0; i < 3; ++i) q(i, 2) = -q(i, 2);

  return {w, Rot3(q)};
}

// sum_k lambda_k q_k q_k^T, assembled symmetric by construction
inline Sym3 compose(const Rot3& frame, Vec3 eigenvalues) {
  Sym3 r{};
  for (int k = 0; k < 3; ++k) {
    const Vec3 qk = frame.column(k);
    r = r + eigenvalues[k] * outer(qk);
  }
  return r;
}

// Isotropic tensor function: apply f to the eigenvalues, keep the frame.
template <class F>
Sym3 apply_spectral(const Sym3& a, F&& f) {
  const EigenDecomp e = eig_sym(a);
  return compose(e.frame, {f(e.eigenvalues[0]), f(e.eigenvalues[1]), f(e.eigenvalues[2])});
}

inline Sym3 exp_sym(const Sym3& a) {
  return apply_spectral(a, [](double x) { return std::exp(x); });
}

// Requires a symmetric positive definite argument.
inline Sym3 log_sym(const Sym3& a) {
  return apply_spectral(a, [](double x) {
    if (!(x > 0.0))
      throw SpectralDomainError("log_sym: eigenvalue " + std::to_string(x) +
                                " is not positive", x);
    return std::log(x);
  });
}

// Requires a symmetric positive definite argument.
inline Sym3 sqrt_sym(const Sym3& a) {
  return apply_spectral(a, [](double x) {
    if (!(x > 0.0))
      throw SpectralDomainError("sqrt_sym: eigenvalue " + std::to_string(x) +
                                " is not positive", x);
    return std::sqrt(x);
  });
}

// A^s on the spectrum. Integer exponents work for any symmetric argument
// (negative ones need nonzero eigenvalues); fractional exponents require
// positive definiteness.
inline Sym3 pow_sym(const Sym3& a, double s) {
  const bool integral = s == std::floor(s) && std::isfinite(s);
  return apply_spectral(a, [s, integral](double x) {
    if (integral) {
      if (s < 0.0 && std::abs(x) < tol::pow_zero_floor)
        throw SpectralDomainError("pow_sym: zero eigenvalue with negative exponent", x);
      return std::pow(x, s);
    }
    if (!(x > 0.0))
      throw SpectralDomainError("pow_sym: eigenvalue " + std::to_string(x) +
                                " is not positive for non-integer exponent " +
                                std::to_string(s), x);
    return std::pow(x, s);
  });
}

// Requires a symmetric positive definite argument.
inline Sym3 inverse_spd(const Sym3& a) {
  return apply_spectral(a, [](double x) {
    if (!(x > 0.0))
      throw SpectralDomainError("inverse_spd: eigenvalue " + std::to_string(x) +
                                " is not positive", x);
    return 1.0 / x;
  });
}

// Throws unless every eigenvalue exceeds the floor. Returns the decomposition
// so the caller can reuse it.
inline EigenDecomp require_positive_definite(const Sym3& a, double floor,
                                             const char* who) {
  const EigenDecomp e = eig_sym(a);
  if (!(e.eigenvalues[0] > floor))
    throw SpectralDomainError(std::string(who) + ": smallest eigenvalue " +
                              std::to_string(e.eigenvalues[0]) +
                              " does not exceed floor " + std::to_string(floor),
                              e.eigenvalues[0]);
  return e;
}

}  // namespace hencky

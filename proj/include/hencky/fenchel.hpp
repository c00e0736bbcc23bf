#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "hencky/dexp.hpp"
#include "hencky/errors.hpp"
#include "hencky/materials.hpp"
#include "hencky/sampling.hpp"
#include "hencky/spectral.hpp"
#include "hencky/tensor.hpp"
#include "hencky/tolerances.hpp"

// Legendre-Fenchel conjugate of the logarithmic-strain potential
// beta(H) = alpha(exp H):
//   beta*(T) = sup_H [ inner(T, H) - beta(H) ]
// and with it the inversion of the constitutive law: the maximizing H is the
// logarithmic strain ln B that produces the stress T = sigma/rho.
//
// Isotropy and coaxiality make the maximizer share T's eigenframe, so the
// default solver maximizes over eigenvalue triples only; a full 6-dimensional
// solver sits behind the same interface as a cross-check mode.

namespace hencky {

struct ConjugateOptions {
  int max_iterations = tol::newton_max_iterations;
  double gradient_tolerance = tol::newton_grad_tol;  // on ||grad||_inf, scaled by 1 + |g|
  int max_backtracks = tol::newton_max_backtracks;
  double unbounded_norm = tol::newton_unbounded_norm;  // ||h||_inf beyond which sup is declared unbounded
  double hessian_fd_step = tol::hessian_fd_step;
  bool full_space = false;  // maximize over all six components instead of eigenvalues
};

struct ConjugateResult {
  double value = 0.0;  // beta*(T)
  Sym3 argmax{};       // the maximizing H = ln B
  int iterations = 0;
  bool converged = false;
  double gradient_norm_final = 0.0;
};

namespace detail {

// Gaussian elimination with partial pivoting. Returns false when a pivot
// collapses, i.e. the system is singular to working precision.
template <int N>
bool solve_linear(std::array<std::array<double, N>, N> a, std::array<double, N> b,
                  std::array<double, N>& x) {
  for (int col = 0; col < N; ++col) {
    int piv = col;
    for (int r = col + 1; r < N; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (!(std::abs(a[piv][col]) > 1e-300)) return false;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (int r = col + 1; r < N; ++r) {
      const double m = a[r][col] / a[col][col];
      for (int c = col; c < N; ++c) a[r][c] -= m * a[col][c];
      b[r] -= m * b[col];
    }
  }
  for (int r = N - 1; r >= 0; --r) {
    double s = b[r];
    for (int c = r + 1; c < N; ++c) s -= a[r][c] * x[c];
    x[r] = s / a[r][r];
  }
  return true;
}

template <int N>
double norm_inf(const std::array<double, N>& v) {
  double m = 0.0;
  for (const double c : v) m = std::max(m, std::abs(c));
  return m;
}

template <int N>
struct NewtonState {
  std::array<double, N> point{};
  double value = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Damped Newton ascent on a smooth objective g. The Newton matrix is the
// finite-difference Jacobian of the (analytic) objective gradient; when it is
// not usable as an ascent model the step falls back to steepest ascent. Every
// accepted step must increase g; an accepted iterate escaping the bound box
// means the sup is unbounded (non-convex beta or T outside the stress range).
template <int N, class ValueFn, class GradFn>
NewtonState<N> maximize_concave(ValueFn&& value_of, GradFn&& grad_of,
                                std::array<double, N> h, const ConjugateOptions& opt) {
  NewtonState<N> st;
  double g = value_of(h);
  std::array<double, N> grad = grad_of(h);

  for (;;) {
    st.gradient_norm = norm_inf<N>(grad);
    if (st.gradient_norm <= opt.gradient_tolerance * (1.0 + std::abs(g))) {
      st.converged = true;
      break;
    }
    if (st.iterations >= opt.max_iterations) break;
    ++st.iterations;

    // J[i][j] = d(grad_beta_j)/dh_i of the objective's curvature part;
    // grad g = t - grad beta, so the Jacobian of -grad g is the Newton matrix
    std::array<std::array<double, N>, N> jac;
    const double d = opt.hessian_fd_step;
    for (int i = 0; i < N; ++i) {
      auto hp = h, hm = h;
      hp[i] += d;
      hm[i] -= d;
      const auto gp = grad_of(hp);
      const auto gm = grad_of(hm);
      for (int j = 0; j < N; ++j) jac[i][j] = -(gp[j] - gm[j]) / (2.0 * d);
    }
    for (int i = 0; i < N; ++i)
      for (int j = i + 1; j < N; ++j)
        jac[i][j] = jac[j][i] = 0.5 * (jac[i][j] + jac[j][i]);

    std::array<double, N> step{};
    const bool solved = solve_linear<N>(jac, grad, step);
    double along = 0.0;
    if (solved)
      for (int i = 0; i < N; ++i) along += grad[i] * step[i];
    if (!solved || !std::isfinite(along) || !(along > 0.0)) step = grad;

    double s = 1.0;
    bool accepted = false;
    std::array<double, N> trial{};
    double gtrial = 0.0;
    std::array<double, N> gradtrial{};
    for (int k = 0; k <= opt.max_backtracks; ++k, s *= 0.5) {
      for (int i = 0; i < N; ++i) trial[i] = h[i] + s * step[i];
      gtrial = value_of(trial);
      if (std::isfinite(gtrial) && gtrial > g) {
        accepted = true;
        gradtrial = grad_of(trial);
        break;
      }
    }
    if (!accepted) {
      // Near the maximum, improvements in g of order ||grad||^2 fall below
      // the round-off of g itself while the iterate can still move. Accept
      // the full step when it at least halves the gradient norm; convergence
      // stays certified by the gradient test alone.
      for (int i = 0; i < N; ++i) trial[i] = h[i] + step[i];
      gtrial = value_of(trial);
      gradtrial = grad_of(trial);
      if (std::isfinite(gtrial) && norm_inf<N>(gradtrial) <= 0.5 * st.gradient_norm)
        accepted = true;
    }
    if (!accepted) break;  // genuine stagnation

    h = trial;
    g = gtrial;
    grad = gradtrial;
    if (norm_inf<N>(h) > opt.unbounded_norm)
      throw UnboundedConjugateError(
          "conjugate: objective still increasing at ||h||_inf > " +
          std::to_string(opt.unbounded_norm) +
          "; beta is non-convex there or T lies outside the law's stress range");
  }
  st.point = h;
  st.value = g;
  return st;
}

// beta restricted to diagonal arguments: beta_hat(h) = alpha(diag(e^h)).
// Isotropy makes the frame irrelevant.
inline Sym3 diag_exp(const std::array<double, 3>& h) {
  return Sym3::diagonal(std::exp(h[0]), std::exp(h[1]), std::exp(h[2]));
}

inline double beta_diag(const MaterialLaw& law, const std::array<double, 3>& h) {
  return law.alpha(diag_exp(h));
}

// d(beta_hat)/dh_i = [grad_alpha(C)]_ii c_i at C = diag(e^h) by the chain rule
inline std::array<double, 3> grad_beta_diag(const MaterialLaw& law,
                                            const std::array<double, 3>& h) {
  const Sym3 c = diag_exp(h);
  const Sym3 g = law.grad_alpha(c);
  return {g.xx * c.xx, g.yy * c.yy, g.zz * c.zz};
}

// 3x3 Hessian of beta_hat by central differences of the analytic gradient
inline Sym3 beta_diag_hessian(const MaterialLaw& law, const std::array<double, 3>& h,
                              double step) {
  std::array<std::array<double, 3>, 3> m;
  for (int i = 0; i < 3; ++i) {
    auto hp = h, hm = h;
    hp[i] += step;
    hm[i] -= step;
    const auto gp = grad_beta_diag(law, hp);
    const auto gm = grad_beta_diag(law, hm);
    for (int j = 0; j < 3; ++j) m[i][j] = (gp[j] - gm[j]) / (2.0 * step);
  }
  return {m[0][0], m[1][1], m[2][2], 0.5 * (m[0][1] + m[1][0]),
          0.5 * (m[0][2] + m[2][0]), 0.5 * (m[1][2] + m[2][1])};
}

// Coordinates for the full-space mode: the six independent components of H.
// The packed gradient carries factor 2 on the off-diagonal slots because each
// one stands for two tensor components.
inline std::array<double, 6> pack_gradient(const Sym3& g) {
  return {g.xx, g.yy, g.zz, 2.0 * g.xy, 2.0 * g.xz, 2.0 * g.yz};
}

inline Sym3 unpack_point(const std::array<double, 6>& x) {
  return {x[0], x[1], x[2], x[3], x[4], x[5]};
}

// analytic gradient of beta: self-adjointness of the spectral derivative of
// exp turns grad(alpha o exp)(H) into D exp(H)[grad_alpha(exp H)]
inline Sym3 grad_beta(const MaterialLaw& law, const Sym3& h) {
  return dexp_spectral(h, law.grad_alpha(exp_sym(h)));
}

inline ConjugateResult conjugate_full_space(const MaterialLaw& law, const Sym3& t,
                                            const ConjugateOptions& opt) {
  const auto value_of = [&](const std::array<double, 6>& x) {
    const Sym3 h = unpack_point(x);
    return inner(t, h) - log_potential(law, h);
  };
  const auto grad_of = [&](const std::array<double, 6>& x) {
    return pack_gradient(t - grad_beta(law, unpack_point(x)));
  };
  const Sym3 start = (0.5 / law.params().mu) * t;
  const NewtonState<6> st = maximize_concave<6>(
      value_of, grad_of,
      {start.xx, start.yy, start.zz, start.xy, start.xz, start.yz}, opt);

  ConjugateResult res;
  res.value = st.value;
  res.argmax = unpack_point(st.point);
  res.iterations = st.iterations;
  res.converged = st.converged;
  res.gradient_norm_final = st.gradient_norm;
  return res;
}

}  // namespace detail

// beta*(T) = sup_H [inner(T, H) - beta(H)]. The default solver reduces to
// T's eigenvalue triple (valid by isotropy; ties in sorted eigenvalues are
// harmless since any orthonormal frame of T then works), runs damped Newton
// from the linear-elastic guess h = t / (2 mu), and lifts the maximizer back
// to T's frame. Non-convergence is reported, not thrown; a maximizer ray
// escaping ||h||_inf > unbounded_norm throws UnboundedConjugateError.
inline ConjugateResult conjugate(const MaterialLaw& law, const Sym3& t,
                                 ConjugateOptions options = {}) {
  if (!is_finite(t)) throw InvalidInputError("conjugate: non-finite stress input");
  if (options.full_space) return detail::conjugate_full_space(law, t, options);

  const EigenDecomp et = eig_sym(t);
  const std::array<double, 3> tv{et.eigenvalues[0], et.eigenvalues[1], et.eigenvalues[2]};

  const auto value_of = [&](const std::array<double, 3>& h) {
    return tv[0] * h[0] + tv[1] * h[1] + tv[2] * h[2] - detail::beta_diag(law, h);
  };
  const auto grad_of = [&](const std::array<double, 3>& h) {
    const auto gb = detail::grad_beta_diag(law, h);
    return std::array<double, 3>{tv[0] - gb[0], tv[1] - gb[1], tv[2] - gb[2]};
  };

  const double guess = 0.5 / law.params().mu;
  const detail::NewtonState<3> st = detail::maximize_concave<3>(
      value_of, grad_of, {guess * tv[0], guess * tv[1], guess * tv[2]}, options);

  ConjugateResult res;
  res.value = st.value;
  res.argmax = compose(et.frame, {st.point[0], st.point[1], st.point[2]});
  res.iterations = st.iterations;
  res.converged = st.converged;
  res.gradient_norm_final = st.gradient_norm;
  return res;
}

// ln B from sigma/rho: the maximizer of the conjugate. Round trip contract:
// cauchy_over_rho(law, exp_sym(result)) reproduces the input stress. Use
// conjugate() directly when convergence diagnostics are needed.
inline Sym3 invert_law(const MaterialLaw& law, const Sym3& sigma_over_rho,
                       ConjugateOptions options = {}) {
  return conjugate(law, sigma_over_rho, options).argmax;
}

// Box of ln B eigenvalue triples.
struct ConvexityRegion {
  Vec3 lo{-2.0, -2.0, -2.0};
  Vec3 hi{2.0, 2.0, 2.0};
};

struct ConvexityReport {
  double min_hessian_eigenvalue = std::numeric_limits<double>::infinity();
  Vec3 argmin{};  // sample point where the minimum occurred
  int samples = 0;
  bool convex = true;
};

// Samples Hessians of beta_hat at seeded random points of the region and
// reports the most negative eigenvalue found. A probe, not a certificate:
// it can flag non-convexity, never prove convexity.
inline ConvexityReport convexity_probe(const MaterialLaw& law, ConvexityRegion region,
                                       int samples, std::uint64_t seed) {
  if (samples < 0) throw InvalidInputError("convexity_probe: negative sample count");
  Rng rng(seed);
  ConvexityReport rep;
  rep.samples = samples;
  for (int n = 0; n < samples; ++n) {
    std::array<double, 3> h;
    for (int i = 0; i < 3; ++i) h[i] = uniform(rng, region.lo[i], region.hi[i]);
    const Sym3 hess = detail::beta_diag_hessian(law, h, tol::hessian_fd_step);
    const EigenDecomp e = eig_sym(hess);
    if (e.eigenvalues[0] < rep.min_hessian_eigenvalue) {
      rep.min_hessian_eigenvalue = e.eigenvalues[0];
      rep.argmin = {h[0], h[1], h[2]};
    }
  }
  rep.convex = rep.min_hessian_eigenvalue >= tol::convexity_eig_floor;
  return rep;
}

}  // namespace hencky

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "hencky/dexp.hpp"
#include "hencky/errors.hpp"
#include "hencky/kinematics.hpp"
#include "hencky/materials.hpp"
#include "hencky/spectral.hpp"
#include "hencky/tensor.hpp"
#include "hencky/tolerances.hpp"

// Four independent computations of the Cauchy stress over current density,
// sigma/rho, that must coincide for an isotropic hyperelastic law:
//   1. push-forward        F (d alpha/dC) F^T
//   2. algebraic product   h(B) B, cross-checked against B^1/2 h(B) B^1/2
//   3. chain rule          D exp(ln B)[h(B)]
//   4. finite differences  grad of beta(H) = alpha(exp H) at H = ln B
// Their agreement is the statement that sigma/rho derives from the potential
// beta = alpha o exp of the logarithmic strain ln B.

namespace hencky {

// sigma/rho = F (Sigma/rho0) F^T with Sigma/rho0 = grad_alpha(C)
inline Sym3 sigma_pushforward(const MaterialLaw& law, const DefGrad& f) {
  const Sym3 s2 = law.grad_alpha(right_cauchy_green(f));
  return sym(f.matrix() * mat(s2) * transpose(f.matrix()));
}

// sigma/rho = h(B) B (with the sandwich cross-check inside cauchy_over_rho)
inline Sym3 sigma_hb_b(const MaterialLaw& law, const DefGrad& f) {
  return cauchy_over_rho(law, left_cauchy_green(f));
}

// sigma/rho = D exp(ln B)[h(B)]: the gradient of beta at ln B, obtained from
// the self-adjoint spectral derivative of exp applied forward to h(B).
inline Sym3 sigma_from_log_potential_chain(const MaterialLaw& law, const DefGrad& f) {
  const Sym3 b = left_cauchy_green(f);
  return dexp_spectral(log_sym(b), law.grad_alpha(b));
}

// Central finite differences of beta(H) = alpha(exp H) at H = ln B over the
// six-dimensional symmetric basis. Diagonal directions use unit tensors;
// off-diagonal directions use symmetric pair tensors E_ij + E_ji, and the
// resulting slope d satisfies d = inner(grad, pair) = 2 grad_ij, so the
// off-diagonal gradient components are d/2.
inline Sym3 sigma_from_log_potential_fd(const MaterialLaw& law, const DefGrad& f,
                                        double step = 0.0) {
  const Sym3 h0 = log_strain(f);
  const double t = step > 0.0 ? step : tol::fd_step_base * (1.0 + frobenius_norm(h0));

  const auto slope = [&](const Sym3& dir) {
    return (log_potential(law, h0 + t * dir) - log_potential(law, h0 - t * dir)) /
           (2.0 * t);
  };

  Sym3 g;
  g.xx = slope(Sym3{1, 0, 0, 0, 0, 0});
  g.yy = slope(Sym3{0, 1, 0, 0, 0, 0});
  g.zz = slope(Sym3{0, 0, 1, 0, 0, 0});
  g.xy = 0.5 * slope(Sym3{0, 0, 0, 1, 0, 0});
  g.xz = 0.5 * slope(Sym3{0, 0, 0, 0, 1, 0});
  g.yz = 0.5 * slope(Sym3{0, 0, 0, 0, 0, 1});
  return g;
}

// sigma = rho (sigma/rho) with rho = rho0 / det F
inline Sym3 absolute_cauchy(const MaterialLaw& law, const DefGrad& f) {
  const double rho = law.params().rho0 / f.determinant();
  return rho * cauchy_over_rho(law, left_cauchy_green(f));
}

// Pairwise relative Frobenius discrepancies between the four paths. A missing
// value means one of the two paths failed to evaluate.
struct StressPathResiduals {
  std::optional<double> push_vs_hb;
  std::optional<double> push_vs_chain;
  std::optional<double> hb_vs_chain;
  std::optional<double> push_vs_fd;
  std::optional<double> hb_vs_fd;
  std::optional<double> chain_vs_fd;

  // largest residual among the spectral/algebraic paths that were computed
  double max_exact() const {
    double m = 0.0;
    for (const auto& r : {push_vs_hb, push_vs_chain, hb_vs_chain})
      if (r) m = std::max(m, *r);
    return m;
  }
  // largest residual against the finite-difference path
  double max_fd() const {
    double m = 0.0;
    for (const auto& r : {push_vs_fd, hb_vs_fd, chain_vs_fd})
      if (r) m = std::max(m, *r);
    return m;
  }
  bool complete() const {
    return push_vs_hb && push_vs_chain && hb_vs_chain && push_vs_fd && hb_vs_fd &&
           chain_vs_fd;
  }
};

struct StressReport {
  Mat3 f{};
  double mass_ratio = 1.0;  // det F = rho0 / rho
  double rho0 = 1.0;
  double rho = 1.0;
  std::optional<Sym3> sigma_pushforward;
  std::optional<Sym3> sigma_hb_b;
  std::optional<Sym3> sigma_grad_fd;
  std::optional<Sym3> sigma_grad_chain;
  StressPathResiduals residuals;
  bool pass = false;
  std::vector<std::string> errors;  // one entry per failed path
};

// Evaluates all four paths, recording per-path domain errors in the report
// instead of throwing. pass requires every path to evaluate, exact paths to
// pairwise agree within tols.exact_rel, and the finite-difference path to
// agree within tols.fd_rel.
inline StressReport verify_theorem(const MaterialLaw& law, const DefGrad& f,
                                   PathTolerances tols = {}) {
  StressReport rep;
  rep.f = f.matrix();
  rep.mass_ratio = mass_ratio(f);
  rep.rho0 = law.params().rho0;
  rep.rho = rep.rho0 / rep.mass_ratio;

  const auto attempt = [&rep](const char* path, auto&& fn) -> std::optional<Sym3> {
    try {
      return fn();
    } catch (const Error& e) {
      rep.errors.push_back(std::string(path) + ": " + e.what());
      return std::nullopt;
    }
  };
  rep.sigma_pushforward = attempt("pushforward", [&] { return sigma_pushforward(law, f); });
  rep.sigma_hb_b = attempt("hB_B", [&] { return sigma_hb_b(law, f); });
  rep.sigma_grad_chain =
      attempt("grad_chain", [&] { return sigma_from_log_potential_chain(law, f); });
  rep.sigma_grad_fd = attempt("grad_fd", [&] { return sigma_from_log_potential_fd(law, f); });

  const auto rd = [](const std::optional<Sym3>& a,
                     const std::optional<Sym3>& b) -> std::optional<double> {
    if (a && b) return rel_diff(*a, *b);
    return std::nullopt;
  };
  rep.residuals.push_vs_hb = rd(rep.sigma_pushforward, rep.sigma_hb_b);
  rep.residuals.push_vs_chain = rd(rep.sigma_pushforward, rep.sigma_grad_chain);
  rep.residuals.hb_vs_chain = rd(rep.sigma_hb_b, rep.sigma_grad_chain);
  rep.residuals.push_vs_fd = rd(rep.sigma_pushforward, rep.sigma_grad_fd);
  rep.residuals.hb_vs_fd = rd(rep.sigma_hb_b, rep.sigma_grad_fd);
  rep.residuals.chain_vs_fd = rd(rep.sigma_grad_chain, rep.sigma_grad_fd);

  rep.pass = rep.errors.empty() && rep.residuals.complete() &&
             rep.residuals.max_exact() <= tols.exact_rel &&
             rep.residuals.max_fd() <= tols.fd_rel;
  return rep;
}

}  // namespace hencky

#pragma once

#include <cmath>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "hencky/errors.hpp"
#include "hencky/spectral.hpp"
#include "hencky/tensor.hpp"
#include "hencky/tolerances.hpp"

// Isotropic hyperelastic material laws: specific stored energy alpha(C) per
// unit reference mass, with the analytic gradient h(C) = d(alpha)/dC, so that
// the second Piola-Kirchhoff stress over reference density is h(C) directly.
// Absolute stresses require multiplying by densities; that happens only at
// the application layer.

namespace hencky {

struct MaterialParams {
  double lambda = 1.0;  // first Lame-type modulus, stress per unit reference density
  double mu = 1.0;      // shear-type modulus, same units
  double rho0 = 1.0;    // reference mass density

  void validate() const {
    if (!(mu > 0.0)) throw InvalidInputError("MaterialParams: mu must be positive");
    if (!(rho0 > 0.0)) throw InvalidInputError("MaterialParams: rho0 must be positive");
    if (!(lambda >= 0.0))
      throw InvalidInputError("MaterialParams: lambda must be non-negative");
  }
};

// A law supplies the scalar potential and its analytic gradient. Both must be
// isotropic (alpha(R C R^T) = alpha(C)) for the stress identities in this
// library to hold; gradient consistency is checked by finite differences in
// the test suite. Implementations are immutable and evaluations pure.
class MaterialLaw {
 public:
  virtual ~MaterialLaw() = default;
  virtual std::string_view name() const = 0;
  virtual const MaterialParams& params() const = 0;
  virtual double alpha(const Sym3& c) const = 0;
  virtual Sym3 grad_alpha(const Sym3& c) const = 0;
};

// alpha = (lambda/2)(tr E)^2 + mu tr(E^2) with E = (C - I)/2.
class StVenantKirchhoff final : public MaterialLaw {
 public:
  explicit StVenantKirchhoff(MaterialParams p) : p_(p) { p_.validate(); }

  std::string_view name() const override { return "svk"; }
  const MaterialParams& params() const override { return p_; }

  double alpha(const Sym3& c) const override {
    const Sym3 e = green_strain(c);
    return 0.5 * p_.lambda * trace(e) * trace(e) + p_.mu * inner(e, e);
  }

  // d(alpha)/dC = (1/2)(lambda tr(E) I + 2 mu E)
  Sym3 grad_alpha(const Sym3& c) const override {
    const Sym3 e = green_strain(c);
    return 0.5 * (p_.lambda * trace(e) * Sym3::identity() + 2.0 * p_.mu * e);
  }

 private:
  static Sym3 green_strain(const Sym3& c) { return 0.5 * (c - Sym3::identity()); }

  MaterialParams p_;
};

// alpha = (mu/2)(tr C - 3 - ln det C) + (lambda/8)(ln det C)^2.
// Stress-free at C = I; ln det C keeps the energy growing under compression.
class NeoHookeanCompressible final : public MaterialLaw {
 public:
  explicit NeoHookeanCompressible(MaterialParams p) : p_(p) { p_.validate(); }

  std::string_view name() const override { return "neo-hookean"; }
  const MaterialParams& params() const override { return p_; }

  double alpha(const Sym3& c) const override {
    const EigenDecomp e = decompose(c);
    const double lndet = log_det(e);
    return 0.5 * p_.mu * (trace(c) - 3.0 - lndet) + 0.125 * p_.lambda * lndet * lndet;
  }

  // d(alpha)/dC = (mu/2)(I - C^{-1}) + (lambda/4)(ln det C) C^{-1}
  Sym3 grad_alpha(const Sym3& c) const override {
    const EigenDecomp e = decompose(c);
    const double lndet = log_det(e);
    const Sym3 cinv = compose(e.frame, {1.0 / e.eigenvalues[0], 1.0 / e.eigenvalues[1],
                                        1.0 / e.eigenvalues[2]});
    return 0.5 * p_.mu * (Sym3::identity() - cinv) + 0.25 * p_.lambda * lndet * cinv;
  }

 private:
  static EigenDecomp decompose(const Sym3& c) {
    return require_positive_definite(c, 0.0, "neo-hookean");
  }
  // sum of eigenvalue logs: more accurate than ln(det C) for spread spectra
  static double log_det(const EigenDecomp& e) {
    return std::log(e.eigenvalues[0]) + std::log(e.eigenvalues[1]) +
           std::log(e.eigenvalues[2]);
  }

  MaterialParams p_;
};

// Quadratic potential in the stretch logarithm h_t = (1/2) ln C (so h_t is
// ln U, half the module exchange variable ln B = ln C at coincident frames):
//   beta(H) = mu inner(dev h_t, dev h_t) + (kappa/2)(tr h_t)^2,  h_t = H/2,
// with kappa = lambda + 2 mu / 3, and alpha(C) = beta(log_sym(C)).
class HenckyQuadratic final : public MaterialLaw {
 public:
  explicit HenckyQuadratic(MaterialParams p) : p_(p) { p_.validate(); }

  // kappa/mu parametrization; lambda = kappa - 2 mu / 3 must be non-negative
  static HenckyQuadratic from_kappa(double mu, double kappa, double rho0 = 1.0) {
    return HenckyQuadratic(MaterialParams{kappa - 2.0 * mu / 3.0, mu, rho0});
  }

  std::string_view name() const override { return "hencky"; }
  const MaterialParams& params() const override { return p_; }

  double kappa() const { return p_.lambda + 2.0 * p_.mu / 3.0; }

  // the potential in the logarithmic variable H = ln C (or ln B)
  double beta(const Sym3& h) const {
    const Sym3 ht = 0.5 * h;
    const Sym3 d = dev(ht);
    const double t = trace(ht);
    return p_.mu * inner(d, d) + 0.5 * kappa() * t * t;
  }

  double alpha(const Sym3& c) const override { return beta(log_sym(c)); }

  // In the eigenframe of C with eps_i = (1/2) ln c_i:
  //   d(alpha)/d(c_i) = (mu (eps_i - mean) + (kappa/2) tr(eps)) / c_i
  Sym3 grad_alpha(const Sym3& c) const override {
    const EigenDecomp e = require_positive_definite(c, 0.0, "hencky");
    const double k = kappa();
    Vec3 eps;
    for (int i = 0; i < 3; ++i) eps[i] = 0.5 * std::log(e.eigenvalues[i]);
    const double tr_eps = eps[0] + eps[1] + eps[2];
    const double mean = tr_eps / 3.0;
    Vec3 g;
    for (int i = 0; i < 3; ++i)
      g[i] = (p_.mu * (eps[i] - mean) + 0.5 * k * tr_eps) / e.eigenvalues[i];
    return compose(e.frame, g);
  }

 private:
  MaterialParams p_;
};

// Deliberately NON-isotropic negative control: St. Venant-Kirchhoff plus a
// fiber-like penalty on E_00. Its gradient is consistent with its energy, so
// it passes finite-difference checks, but it must fail every isotropy and
// coaxiality property. Never part of the public catalog.
class BrokenAnisotropic final : public MaterialLaw {
 public:
  explicit BrokenAnisotropic(MaterialParams p) : svk_(p) {}

  std::string_view name() const override { return "broken-anisotropic"; }
  const MaterialParams& params() const override { return svk_.params(); }

  double alpha(const Sym3& c) const override {
    const double e00 = 0.5 * (c.xx - 1.0);
    return svk_.alpha(c) + svk_.params().mu * e00 * e00;
  }

  Sym3 grad_alpha(const Sym3& c) const override {
    const double e00 = 0.5 * (c.xx - 1.0);
    Sym3 g = svk_.grad_alpha(c);
    g.xx += svk_.params().mu * e00;
    return g;
  }

 private:
  StVenantKirchhoff svk_;
};

// The isotropic laws exposed for selection by name.
inline std::vector<std::string_view> law_catalog() {
  return {"svk", "neo-hookean", "hencky"};
}

// "broken-anisotropic" is accepted here so the negative control is reachable
// from the command line, but it is not in the catalog.
inline std::unique_ptr<MaterialLaw> make_law(std::string_view name, MaterialParams p) {
  if (name == "svk") return std::make_unique<StVenantKirchhoff>(p);
  if (name == "neo-hookean") return std::make_unique<NeoHookeanCompressible>(p);
  if (name == "hencky") return std::make_unique<HenckyQuadratic>(p);
  if (name == "broken-anisotropic") return std::make_unique<BrokenAnisotropic>(p);
  throw InvalidInputError("unknown material law '" + std::string(name) +
                          "' (known: svk, neo-hookean, hencky)");
}

// The tensor function h evaluated at C (or at B): h(X) = grad_alpha(X).
inline Sym3 h_of(const MaterialLaw& law, const Sym3& x) { return law.grad_alpha(x); }

// The potential of the logarithmic variable: beta(H) = alpha(exp H).
inline double log_potential(const MaterialLaw& law, const Sym3& h) {
  return law.alpha(exp_sym(h));
}

// sigma/rho = h(B) B, cross-checked against the sandwich form
// B^{1/2} h(B) B^{1/2}. For an isotropic law the two agree because h(B) and B
// commute; disagreement means the law is not isotropic (or its gradient is
// wrong), and is reported as a coaxiality violation.
inline Sym3 cauchy_over_rho(const MaterialLaw& law, const Sym3& b) {
  const EigenDecomp e = require_positive_definite(b, 0.0, "cauchy_over_rho");
  const Sym3 h = law.grad_alpha(b);
  const Mat3 hb = mat(h) * mat(b);

  Vec3 root;
  for (int k = 0; k < 3; ++k) root[k] = std::sqrt(e.eigenvalues[k]);
  const Mat3 b_half = mat(compose(e.frame, root));
  const Mat3 sandwich = b_half * mat(h) * b_half;

  const double scale = std::max(1.0, frobenius_norm(hb));
  const double gap = frobenius_norm(hb - sandwich);
  if (gap > tol::coaxiality_check_rel * scale)
    throw CoaxialityViolationError(
        "cauchy_over_rho: h(B)B and B^{1/2}h(B)B^{1/2} disagree (relative gap " +
        std::to_string(gap / scale) + "); the law '" + std::string(law.name()) +
        "' does not behave isotropically");
  return sym(hb);
}

struct IsotropyResiduals {
  double alpha_abs;  // |alpha(R C R^T) - alpha(C)|
  double grad_frob;  // ||R h(C) R^T - h(R C R^T)||_F
};

inline IsotropyResiduals isotropy_residuals(const MaterialLaw& law, const Sym3& c,
                                            const Rot3& r) {
  const Sym3 c_rot = rotate(c, r);
  const double da = std::abs(law.alpha(c_rot) - law.alpha(c));
  const double dg = frobenius_norm(rotate(law.grad_alpha(c), r) - law.grad_alpha(c_rot));
  return {da, dg};
}

// ||[h(B), B^s]||_F for each exponent. Zero (to round-off) exactly when h(B)
// shares the eigenframe of B, which isotropy guarantees.
inline std::vector<double> coaxiality_residuals(const MaterialLaw& law, const Sym3& b,
                                                const std::vector<double>& s_values) {
  const Sym3 h = law.grad_alpha(b);
  std::vector<double> out;
  out.reserve(s_values.size());
  for (const double s : s_values) out.push_back(commutator_norm(h, pow_sym(b, s)));
  return out;
}

}  // namespace hencky

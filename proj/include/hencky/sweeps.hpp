#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hencky/dexp.hpp"
#include "hencky/duality.hpp"
#include "hencky/fenchel.hpp"
#include "hencky/kinematics.hpp"
#include "hencky/materials.hpp"
#include "hencky/sampling.hpp"
#include "hencky/tolerances.hpp"

// Seeded verification sweeps over random states. Each suite draws its own
// generator from the given seed, so results are a pure function of
// (seed, sample count, law) and reports are reproducible byte for byte.

namespace hencky {

struct SuiteResult {
  std::string name;
  int samples = 0;
  int failures = 0;
  // worst-case values observed, in a fixed order for deterministic output
  std::vector<std::pair<std::string, double>> metrics;

  bool pass() const { return failures == 0; }

  double metric(std::string_view key) const {
    for (const auto& [k, v] : metrics)
      if (k == key) return v;
    throw InvalidInputError("SuiteResult: no metric named '" + std::string(key) + "'");
  }
};

// Four-path stress agreement over random deformation gradients.
inline SuiteResult theorem_suite(const MaterialLaw& law, int samples, std::uint64_t seed,
                                 PathTolerances tols = {}) {
  Rng rng(seed);
  SuiteResult out;
  out.name = "theorem[" + std::string(law.name()) + "]";
  out.samples = samples;
  double max_exact = 0.0, max_fd = 0.0;
  for (int n = 0; n < samples; ++n) {
    const StressReport rep = verify_theorem(law, random_defgrad(rng), tols);
    if (!rep.pass) ++out.failures;
    max_exact = std::max(max_exact, rep.residuals.max_exact());
    max_fd = std::max(max_fd, rep.residuals.max_fd());
  }
  out.metrics = {{"max_exact", max_exact}, {"max_fd", max_fd}};
  return out;
}

// Commutator of h(B) with powers of B, normalized by the product of norms.
inline SuiteResult coaxiality_suite(const MaterialLaw& law, int samples,
                                    std::uint64_t seed,
                                    const std::vector<double>& s_values = {-1.0, -0.5, 0.5,
                                                                           1.0, 2.0}) {
  Rng rng(seed);
  SuiteResult out;
  out.name = "coaxiality[" + std::string(law.name()) + "]";
  out.samples = samples;
  double worst = 0.0;
  for (int n = 0; n < samples; ++n) {
    const Sym3 b = left_cauchy_green(random_defgrad(rng));
    const Sym3 h = law.grad_alpha(b);
    bool ok = true;
    for (const double s : s_values) {
      const Sym3 bs = pow_sym(b, s);
      const double scale = std::max(1.0, frobenius_norm(h) * frobenius_norm(bs));
      const double r = commutator_norm(h, bs) / scale;
      worst = std::max(worst, r);
      if (r > tol::coaxiality_check_rel) ok = false;
    }
    if (!ok) ++out.failures;
  }
  out.metrics = {{"max_residual", worst}};
  return out;
}

// alpha and grad_alpha equivariance under random rotations.
inline SuiteResult isotropy_suite(const MaterialLaw& law, int samples,
                                  std::uint64_t seed) {
  Rng rng(seed);
  SuiteResult out;
  out.name = "isotropy[" + std::string(law.name()) + "]";
  out.samples = samples;
  double worst_alpha = 0.0, worst_grad = 0.0;
  for (int n = 0; n < samples; ++n) {
    const Sym3 c = random_spd(rng, 0.25, 4.0);
    const Rot3 r = random_rotation(rng);
    const IsotropyResiduals res = isotropy_residuals(law, c, r);
    const double ra = res.alpha_abs / std::max(1.0, std::abs(law.alpha(c)));
    const double rg = res.grad_frob / std::max(1.0, frobenius_norm(law.grad_alpha(c)));
    worst_alpha = std::max(worst_alpha, ra);
    worst_grad = std::max(worst_grad, rg);
    if (ra > tol::isotropy_residual_rel || rg > tol::isotropy_residual_rel)
      ++out.failures;
  }
  out.metrics = {{"max_alpha_residual", worst_alpha}, {"max_grad_residual", worst_grad}};
  return out;
}

namespace detail {

// random symmetric tensor rescaled to a random Frobenius norm below the bound
inline Sym3 random_bounded_symmetric(Rng& rng, double norm_bound) {
  const Sym3 raw = random_symmetric(rng, -1.0, 1.0);
  const double n = frobenius_norm(raw);
  const double target = uniform(rng, 0.0, norm_bound);
  return n > 1e-12 ? (target / n) * raw : raw;
}

}  // namespace detail

// Quadrature path against the spectral and finite-difference derivative of
// exp over random (A, dA) pairs with ||A||_F bounded.
inline SuiteResult dexp_agreement_suite(int samples, std::uint64_t seed, int nodes = 16,
                                        double norm_bound = 2.0) {
  Rng rng(seed);
  SuiteResult out;
  out.name = "dexp-agreement";
  out.samples = samples;
  double worst_spectral = 0.0, worst_fd = 0.0;
  for (int n = 0; n < samples; ++n) {
    const Sym3 a = detail::random_bounded_symmetric(rng, norm_bound);
    const Sym3 da = random_symmetric(rng, -1.0, 1.0);
    const Sym3 quad = dexp_quadrature(a, da, nodes);
    const double rs = rel_diff(quad, dexp_spectral(a, da));
    const double rf = rel_diff(quad, dexp_fd(a, da));
    worst_spectral = std::max(worst_spectral, rs);
    worst_fd = std::max(worst_fd, rf);
    if (rs > 1e-10 || rf > tol::fd_path_rel) ++out.failures;
  }
  out.metrics = {{"max_vs_spectral", worst_spectral}, {"max_vs_fd", worst_fd}};
  return out;
}

// Determinant identities, polar reconstruction, B = R C R^T, exp/log round
// trips, over random deformation gradients.
inline SuiteResult kinematics_suite(int samples, std::uint64_t seed) {
  Rng rng(seed);
  SuiteResult out;
  out.name = "kinematics";
  out.samples = samples;
  double worst_det = 0.0, worst_polar = 0.0, worst_conj = 0.0, worst_roundtrip = 0.0;
  for (int n = 0; n < samples; ++n) {
    const DefGrad f = random_defgrad(rng);
    const Sym3 c = right_cauchy_green(f);
    const Sym3 b = left_cauchy_green(f);
    const double j = f.determinant();

    const double rdet = std::max(std::abs(std::sqrt(det(c)) - j),
                                 std::abs(std::sqrt(det(b)) - j)) /
                        j;

    const PolarFactors ru = polar(f);
    const double rpolar =
        frobenius_norm(ru.rotation.matrix() * mat(ru.stretch) - f.matrix()) /
        frobenius_norm(f.matrix());
    const double rconj = rel_diff(rotate(c, ru.rotation), b);

    const Sym3 h = log_sym(b);
    const double rrt = rel_diff(exp_sym(h), b);

    worst_det = std::max(worst_det, rdet);
    worst_polar = std::max(worst_polar, rpolar);
    worst_conj = std::max(worst_conj, rconj);
    worst_roundtrip = std::max(worst_roundtrip, rrt);
    if (rdet > 1e-12 || rpolar > 1e-10 || rconj > 1e-12 || rrt > 1e-12) ++out.failures;
  }
  out.metrics = {{"max_det_residual", worst_det},
                 {"max_polar_residual", worst_polar},
                 {"max_conjugation_residual", worst_conj},
                 {"max_exp_log_residual", worst_roundtrip}};
  return out;
}

// Forward stress then conjugate-based inversion; must recover ln B. Only laws
// whose log-strain potential is convex on the sampled region are eligible
// (the conjugate of a non-convex potential does not invert the law).
inline SuiteResult roundtrip_suite(const MaterialLaw& law, int samples,
                                   std::uint64_t seed, double recover_tol,
                                   double stress_tol = tol::fd_path_rel) {
  Rng rng(seed);
  SuiteResult out;
  out.name = "roundtrip[" + std::string(law.name()) + "]";
  out.samples = samples;
  double worst_state = 0.0, worst_stress = 0.0;
  for (int n = 0; n < samples; ++n) {
    const Sym3 b = random_spd(rng, 0.7, 1.5);
    const Sym3 t = cauchy_over_rho(law, b);
    bool ok = false;
    try {
      const ConjugateResult inv = conjugate(law, t);
      if (inv.converged) {
        const double rstate = rel_diff(inv.argmax, log_sym(b));
        const double rstress = rel_diff(cauchy_over_rho(law, exp_sym(inv.argmax)), t);
        worst_state = std::max(worst_state, rstate);
        worst_stress = std::max(worst_stress, rstress);
        ok = rstate <= recover_tol && rstress <= stress_tol;
      }
    } catch (const Error&) {
      ok = false;
    }
    if (!ok) ++out.failures;
  }
  out.metrics = {{"max_state_residual", worst_state},
                 {"max_stress_residual", worst_stress}};
  return out;
}

// whether the conjugate solver is trusted to invert this law in the sweeps
inline bool invertible_in_sweeps(std::string_view law_name) {
  return law_name == "hencky" || law_name == "neo-hookean";
}

inline double roundtrip_recover_tol(std::string_view law_name) {
  return law_name == "hencky" ? 1e-8 : 1e-6;
}

struct DexpTableRow {
  int nodes = 0;
  double max_rel_error = 0.0;   // vs the spectral derivative, worst over samples
  double zero_case_error = 0.0; // A = 0, where every rule must be exact
};

struct DexpTable {
  std::vector<DexpTableRow> rows;
  int samples = 0;
  double norm_bound = 2.0;
  std::uint64_t seed = 0;
  bool monotone = false;  // errors decrease as nodes double, down to the floor
};

// Quadrature convergence against the spectral oracle as the node count
// doubles. Errors must decrease monotonically until both neighbors sit below
// the 1e-14 round-off floor.
inline DexpTable dexp_convergence_table(int samples, std::uint64_t seed,
                                        double norm_bound = 2.0,
                                        const std::vector<int>& node_counts = {2, 4, 8, 16,
                                                                               32}) {
  DexpTable table;
  table.samples = samples;
  table.norm_bound = norm_bound;
  table.seed = seed;

  // one shared sample set so rows differ only in the rule
  std::vector<std::pair<Sym3, Sym3>> pairs;
  pairs.reserve(static_cast<std::size_t>(samples));
  Rng rng(seed);
  for (int n = 0; n < samples; ++n) {
    const Sym3 a = detail::random_bounded_symmetric(rng, norm_bound);
    const Sym3 da = random_symmetric(rng, -1.0, 1.0);
    pairs.emplace_back(a, da);
  }

  for (const int nodes : node_counts) {
    DexpTableRow row;
    row.nodes = nodes;
    for (const auto& [a, da] : pairs) {
      const Sym3 quad = dexp_quadrature(a, da, nodes);
      row.max_rel_error = std::max(row.max_rel_error, rel_diff(quad, dexp_spectral(a, da)));
      // the derivative of exp at zero is the identity map, for every rule
      row.zero_case_error =
          std::max(row.zero_case_error, rel_diff(dexp_quadrature(Sym3{}, da, nodes), da));
    }
    table.rows.push_back(row);
  }

  table.monotone = true;
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    const double prev = table.rows[i - 1].max_rel_error;
    const double cur = table.rows[i].max_rel_error;
    if (!(cur <= prev || (cur <= 1e-14 && prev <= 1e-14))) table.monotone = false;
  }
  return table;
}

}  // namespace hencky

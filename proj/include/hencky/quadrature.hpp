#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "hencky/errors.hpp"

// Gauss-Legendre quadrature on the unit interval [0, 1].

namespace hencky {

struct QuadratureRule {
  std::vector<double> nodes;    // in (0, 1), ascending
  std::vector<double> weights;  // positive, summing to 1
};

namespace detail {

// Legendre P_n(x) and derivative on [-1, 1] by the three-term recurrence.
inline void legendre_eval(int n, double x, double& p, double& dp) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  p = n == 0 ? p0 : p1;
  dp = n == 0 ? 0.0 : n * (x * p1 - p0) / (x * x - 1.0);
}

// Roots of P_n by Newton from the Chebyshev-like initial guess. Used for node
// counts outside the precomputed table.
inline QuadratureRule gauss_legendre_computed(int n) {
  QuadratureRule r;
  r.nodes.resize(static_cast<std::size_t>(n));
  r.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double x = -std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double p = 0.0, dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      legendre_eval(n, x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    legendre_eval(n, x, p, dp);
    r.nodes[static_cast<std::size_t>(i)] = 0.5 * (x + 1.0);
    r.weights[static_cast<std::size_t>(i)] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

// Nodes/weights on [-1, 1] for the common even orders, tabulated to full
// double precision (positive half; the rule is symmetric).
struct HalfRule {
  const double* x;
  const double* w;
  int half;
};

inline bool lookup_half_rule(int n, HalfRule& out) {
  static const double x2[] = {0.57735026918962576451};
  static const double w2[] = {1.0};
  static const double x4[] = {0.33998104358485626480, 0.86113631159405257522};
  static const double w4[] = {0.65214515486254614263, 0.34785484513745385737};
  static const double x8[] = {0.18343464249564980494, 0.52553240991632898582,
                              0.79666647741362673959, 0.96028985649753623168};
  static const double w8[] = {0.36268378337836198297, 0.31370664587788728734,
                              0.22238103445337447054, 0.10122853629037625915};
  static const double x16[] = {0.09501250983763744019, 0.28160355077925891323,
                               0.45801677765722738634, 0.61787624440264374845,
                               0.75540440835500303390, 0.86563120238783174388,
                               0.94457502307323257608, 0.98940093499164993260};
  static const double w16[] = {0.18945061045506849629, 0.18260341504492358887,
                               0.16915651939500253819, 0.14959598881657673208,
                               0.12462897125553387205, 0.09515851168249278481,
                               0.06225352393864789286, 0.02715245941175409485};
  static const double x32[] = {0.04830766568773831623, 0.14447196158279649349,
                               0.23928736225213707454, 0.33186860228212764978,
                               0.42135127613063534536, 0.50689990893222939002,
                               0.58771575724076232904, 0.66304426693021520098,
                               0.73218211874028968039, 0.79448379596794240696,
                               0.84936761373256997013, 0.89632115576605212397,
                               0.93490607593773968917, 0.96476225558750643077,
                               0.98561151154526833540, 0.99726386184948156354};
  static const double w32[] = {0.09654008851472780057, 0.09563872007927485942,
                               0.09384439908080456564, 0.09117387869576388471,
                               0.08765209300440381114, 0.08331192422694675522,
                               0.07819389578707030647, 0.07234579410884850622,
                               0.06582222277636184684, 0.05868409347853554714,
                               0.05099805926237617620, 0.04283589802222668066,
                               0.03427386291302143310, 0.02539206530926205945,
                               0.01627439473090567061, 0.00701861000947009660};
  switch (n) {
    case 2: out = {x2, w2, 1}; return true;
    case 4: out = {x4, w4, 2}; return true;
    case 8: out = {x8, w8, 4}; return true;
    case 16: out = {x16, w16, 8}; return true;
    case 32: out = {x32, w32, 16}; return true;
    default: return false;
  }
}

}  // namespace detail

// Rule of order n on [0, 1] (exact for polynomials up to degree 2n - 1).
// Orders 2, 4, 8, 16, 32 come from a precomputed table; any other positive
// order is computed on the fly.
inline QuadratureRule gauss_legendre_unit(int n) {
  if (n < 1) throw InvalidInputError("gauss_legendre_unit: node count must be positive");
  detail::HalfRule h;
  if (!detail::lookup_half_rule(n, h)) return detail::gauss_legendre_computed(n);
  QuadratureRule r;
  r.nodes.resize(static_cast<std::size_t>(n));
  r.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < h.half; ++i) {
    // map x in [-1, 1] to (x + 1)/2; weights halve
    const std::size_t lo = static_cast<std::size_t>(h.half - 1 - i);
    const std::size_t hi = static_cast<std::size_t>(h.half + i);
    r.nodes[lo] = 0.5 * (1.0 - h.x[i]);
    r.nodes[hi] = 0.5 * (1.0 + h.x[i]);
    r.weights[lo] = r.weights[hi] = 0.5 * h.w[i];
  }
  return r;
}

}  // namespace hencky

#include <gtest/gtest.h>

#include <cmath>

#include "hencky/dexp.hpp"
#include "hencky/sampling.hpp"
#include "hencky/sweeps.hpp"
#include "test_support.hpp"

namespace {

using namespace hencky;
using test_support::sym_near;

Sym3 bounded_symmetric(Rng& rng, double bound) {
  Sym3 a = random_symmetric(rng, -1.0, 1.0);
  const double n = frobenius_norm(a);
  if (n > bound) a = (bound / n) * a;
  return a;
}

TEST(DexpTest, DerivativeAtZeroIsIdentityMap) {
  Rng rng(401);
  const Sym3 da = random_symmetric(rng, -2.0, 2.0);
  EXPECT_TRUE(sym_near(dexp_spectral(Sym3{}, da), da, 1e-14));
  EXPECT_TRUE(sym_near(dexp_quadrature(Sym3{}, da, 16), da, 1e-14));
  EXPECT_TRUE(sym_near(dexp_fd(Sym3{}, Sym3::identity(), 1e-5), Sym3::identity(), 1e-9));
}

TEST(DexpTest, CommutingDiagonalCollapsesToExpTimesDirection) {
  const Sym3 a = Sym3::diagonal(1, 2, 3);
  const Sym3 da = Sym3::diagonal(4, 5, 6);
  const double e = std::exp(1.0);
  const Sym3 expected = Sym3::diagonal(4 * e, 5 * e * e, 6 * e * e * e);
  EXPECT_TRUE(sym_near(dexp_spectral(a, da), expected, 1e-13));
  EXPECT_TRUE(sym_near(dexp_quadrature(a, da, 16), expected, 1e-13));
}

TEST(DexpTest, RepeatedSpectrumScalesUniformly) {
  Rng rng(402);
  const Sym3 da = random_symmetric(rng, -2.0, 2.0);
  const Sym3 expected = std::exp(1.0) * da;
  EXPECT_TRUE(sym_near(dexp_spectral(Sym3::identity(), da), expected, 1e-13));
  EXPECT_TRUE(sym_near(dexp_quadrature(Sym3::identity(), da, 16), expected, 1e-13));
}

TEST(DexpTest, DividedDifferenceKernelOnSplitSpectrum) {
  // Eigenvalues 0 and ln 4 meet in the (y,z) component: the kernel value is
  // (e^0 - e^{ln 4}) / (0 - ln 4) = 3 / ln 4.
  const Sym3 a = Sym3::diagonal(0.0, std::log(4.0), 0.0);
  Sym3 da{};
  da.yz = 1.0;
  const double kernel = 3.0 / std::log(4.0);
  EXPECT_NEAR(kernel, 2.1640425613334453, 1e-15);

  const Sym3 spectral = dexp_spectral(a, da);
  EXPECT_NEAR(spectral.yz, kernel, 1e-13);
  EXPECT_NEAR(spectral.xx, 0.0, 1e-14);
  EXPECT_NEAR(spectral.xy, 0.0, 1e-14);

  EXPECT_TRUE(sym_near(dexp_quadrature(a, da, 16), spectral, 1e-12));
  EXPECT_TRUE(sym_near(dexp_fd(a, da, 1e-5), spectral, 1e-9));
}

TEST(DexpTest, LinearInTheDirection) {
  Rng rng(403);
  for (int n = 0; n < 50; ++n) {
    const Sym3 a = bounded_symmetric(rng, 2.0);
    const Sym3 x = random_symmetric(rng, -1.0, 1.0);
    const Sym3 y = random_symmetric(rng, -1.0, 1.0);
    const double ca = 0.7, cb = -1.3;
    const Sym3 comb = ca * x + cb * y;

    EXPECT_LE(rel_diff(dexp_spectral(a, comb),
                       ca * dexp_spectral(a, x) + cb * dexp_spectral(a, y)),
              1e-12);
    EXPECT_LE(rel_diff(dexp_quadrature(a, comb, 16),
                       ca * dexp_quadrature(a, x, 16) + cb * dexp_quadrature(a, y, 16)),
              1e-12);
    // the difference quotient carries an O(step^2) truncation term that is
    // cubic in the direction, so its linearity defect sits near 1e-9
    EXPECT_LE(rel_diff(dexp_fd(a, comb), ca * dexp_fd(a, x) + cb * dexp_fd(a, y)), 2e-9);
  }
}

TEST(DexpTest, SelfAdjointUnderTraceInnerProduct) {
  Rng rng(404);
  for (int n = 0; n < 100; ++n) {
    const Sym3 a = bounded_symmetric(rng, 2.0);
    const Sym3 x = random_symmetric(rng, -1.0, 1.0);
    const Sym3 y = random_symmetric(rng, -1.0, 1.0);
    const double scale = std::max(1.0, frobenius_norm(x) * frobenius_norm(y));
    EXPECT_LE(std::abs(inner(y, dexp_spectral(a, x)) - inner(x, dexp_spectral(a, y))),
              1e-12 * scale);
    EXPECT_LE(
        std::abs(inner(y, dexp_quadrature(a, x, 16)) - inner(x, dexp_quadrature(a, y, 16))),
        1e-12 * scale);
  }
}

TEST(DexpTest, CoaxialDirectionsCollapse) {
  Rng rng(11);
  int used = 0;
  for (int n = 0; n < 200; ++n) {
    const Rot3 q = random_rotation(rng);
    Sym3 a = compose(q, {uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1)});
    const double na = frobenius_norm(a);
    if (na > 2.0) a = (2.0 / na) * a;
    Sym3 da = compose(q, {uniform(rng, -2, 2), uniform(rng, -2, 2), uniform(rng, -2, 2)});
    da = (1.0 / frobenius_norm(da)) * da;
    if (commutator_norm(a, da) > 1e-13) continue;
    ++used;

    const Sym3 collapsed = sym(mat(exp_sym(a)) * mat(da));
    EXPECT_LE(rel_diff(dexp_spectral(a, da), collapsed), 1e-10);
    EXPECT_LE(rel_diff(dexp_quadrature(a, da, 16), collapsed), 1e-10);
    EXPECT_LE(rel_diff(dexp_fd(a, da), collapsed), 1e-10);
  }
  EXPECT_GT(used, 150);
}

TEST(DexpTest, NearlyRepeatedSpectrumAgreesAcrossMethods) {
  Rng rng(405);
  const Rot3 q = random_rotation(rng);
  const Sym3 a = compose(q, {1.0, 1.0 + 1e-9, 2.0});
  for (int n = 0; n < 10; ++n) {
    const Sym3 da = random_symmetric(rng, -1.0, 1.0);
    EXPECT_LE(rel_diff(dexp_spectral(a, da), dexp_quadrature(a, da, 32)), 1e-9);
  }
}

TEST(DexpTest, FiniteDifferenceErrorScalesAsStepSquared) {
  Rng rng(406);
  for (int n = 0; n < 25; ++n) {
    const Sym3 a = bounded_symmetric(rng, 2.0);
    const Sym3 da = random_symmetric(rng, -1.0, 1.0);
    const Sym3 ref = dexp_spectral(a, da);
    const double e3 = rel_diff(dexp_fd(a, da, 1e-3), ref);
    const double e4 = rel_diff(dexp_fd(a, da, 1e-4), ref);
    const double e5 = rel_diff(dexp_fd(a, da, 1e-5), ref);
    EXPECT_GT(e3 / e4, 80.0);
    EXPECT_LT(e3 / e4, 120.0);
    // the last decade approaches the round-off floor, so only a weaker
    // contraction is guaranteed
    EXPECT_GT(e4 / e5, 10.0);
    EXPECT_LT(e5, 1e-9);
  }
}

TEST(DexpTest, QuadratureConvergesMonotonicallyInNodeCount) {
  const DexpTable table = dexp_convergence_table(50, 407);
  ASSERT_EQ(table.rows.size(), 5u);
  EXPECT_TRUE(table.monotone);
  EXPECT_GT(table.rows[0].max_rel_error, 1e-5);   // two nodes are genuinely coarse
  EXPECT_LE(table.rows[3].max_rel_error, 1e-12);  // sixteen reach the floor
  EXPECT_LE(table.rows[4].max_rel_error, 1e-12);
  for (const DexpTableRow& row : table.rows) EXPECT_LE(row.zero_case_error, 1e-15);
}

TEST(DexpTest, QuadratureReportsAsymmetryAndValidatesNodes) {
  Rng rng(408);
  for (int n = 0; n < 20; ++n) {
    const Sym3 a = bounded_symmetric(rng, 2.0);
    const Sym3 da = random_symmetric(rng, -1.0, 1.0);
    double asym = -1.0;
    dexp_quadrature(a, da, 16, &asym);
    EXPECT_GE(asym, 0.0);
    EXPECT_LE(asym, 1e-12);
  }
  EXPECT_THROW(dexp_quadrature(Sym3::identity(), Sym3::identity(), 0), InvalidInputError);
}

TEST(DexpTest, DefaultStepMatchesExplicitDefault) {
  Rng rng(409);
  const Sym3 a = bounded_symmetric(rng, 2.0);
  const Sym3 da = random_symmetric(rng, -1.0, 1.0);
  const double step = tol::fd_step_base * (1.0 + frobenius_norm(a));
  EXPECT_EQ(frobenius_norm(mat(dexp_fd(a, da)) - mat(dexp_fd(a, da, step))), 0.0);
}

}  // namespace

#include <gtest/gtest.h>

#include <random>

#include "brf/curvature.hpp"
#include "brf/homogeneous.hpp"

using brf::AlignedSpace;
using brf::ClosedFormContext;
using brf::DiagonalMetric;
using brf::Mat;
using brf::Rational;
using brf::TorsionFormula;
using brf::Vec;

namespace {

AlignedSpace<double> build_space(const std::string& id) {
  if (id == "su2xsu2_s1_11")
    return AlignedSpace<double>::build(brf::make_su2xsu2_s1<double>(1, 1));
  if (id == "su2xsu2_s1_21")
    return AlignedSpace<double>::build(brf::make_su2xsu2_s1<double>(2, 1));
  if (id == "su2xsu3_s1")
    return AlignedSpace<double>::build(brf::make_su2xsu3_s1<double>());
  if (id == "su3xsu3_so3")
    return AlignedSpace<double>::build(brf::make_su3xsu3_so3<double>());
  if (id == "so8xso7_g2")
    return AlignedSpace<double>::build(brf::make_so8xso7_g2<double>());
  throw std::runtime_error("unknown test space " + id);
}

DiagonalMetric<double> random_metric(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(0.2, 3.0);
  return {dist(rng), dist(rng), dist(rng)};
}

/// Compares the brute-force Ricci and torsion-square forms against the
/// closed per-block formulas for several random diagonal metrics.
void expect_oracle_matches_closed(const std::string& id, double z1, int n_metrics,
                                  unsigned seed, double tol) {
  auto sp = build_space(id);
  auto ctx = brf::closed_form_context(sp, z1);
  auto geo = brf::reductive_geometry(sp, ctx.fr);
  auto hq = brf::hq_tensor(sp, ctx.fr);
  std::mt19937_64 rng(seed);
  for (int t = 0; t < n_metrics; ++t) {
    const auto m = random_metric(rng);
    const Vec<double> x = brf::metric_coefficients(ctx.fr, m.x1, m.x2, m.x3);
    Mat<double> ric_o = brf::ricci_bruteforce(geo, x);
    Mat<double> ric_c = brf::ricci_closed_form(ctx, m);
    EXPECT_LT(brf::max_abs<double>(ric_o - ric_c), tol)
        << id << " ricci mismatch at z1=" << z1 << " trial " << t;
    Mat<double> h2_o = brf::h_squared_bruteforce(geo, hq, x);
    Mat<double> h2_c = brf::h_squared_closed_form(ctx, m, TorsionFormula::corrected);
    EXPECT_LT(brf::max_abs<double>(h2_o - h2_c), tol)
        << id << " H^2 mismatch at z1=" << z1 << " trial " << t;
  }
}

}  // namespace

TEST(Curvature, RicciAndH2OracleMatchClosedForm) {
  expect_oracle_matches_closed("su2xsu2_s1_11", 1.0, 8, 11, 1e-9);
  expect_oracle_matches_closed("su2xsu2_s1_21", 0.7, 8, 12, 1e-9);
  expect_oracle_matches_closed("su3xsu3_so3", 1.6, 8, 13, 1e-9);
  expect_oracle_matches_closed("su3xsu3_so3", 0.4, 8, 14, 1e-9);
  // Swapped space with non-scalar cas_{chi_1} and a one-dimensional center.
  expect_oracle_matches_closed("su2xsu3_s1", 1.3, 8, 15, 1e-9);
}

TEST(Curvature, RicciAndH2OracleMatchClosedFormLargeSpace) {
  expect_oracle_matches_closed("so8xso7_g2", 0.9, 2, 16, 1e-9);
}

TEST(Curvature, RicciQuadraticCrossCheck) {
  auto sp = build_space("su3xsu3_so3");
  auto fr = brf::build_adapted_frame(sp, 1.2);
  auto geo = brf::reductive_geometry(sp, fr);
  const Vec<double> x = brf::metric_coefficients(fr, 0.8, 1.7, 2.3);
  Mat<double> ric = brf::ricci_bruteforce(geo, x);
  std::mt19937_64 rng(21);
  std::normal_distribution<double> dist;
  for (int t = 0; t < 10; ++t) {
    Vec<double> v(geo.np);
    for (int i = 0; i < geo.np; ++i) v(i) = dist(rng);
    const double quad = brf::ricci_quadratic(geo, x, v);
    const double form = v.dot((ric + geo.killing_p / 2.0) * v);
    EXPECT_NEAR(quad, form, 1e-9 * (1.0 + std::abs(quad)));
  }
}

TEST(Curvature, TorsionFormIsAlternatingWithExpectedBlocks) {
  auto sp = build_space("su3xsu3_so3");
  auto fr = brf::build_adapted_frame(sp, 1.4);
  auto hq = brf::hq_tensor(sp, fr);
  EXPECT_LT(brf::antisymmetry_defect(hq), 1e-12);

  // Indices grouped by block: any mix of p1 and p2, and any triple with
  // exactly one index in p1 or p2, must vanish.
  const int n1 = fr.n1(), n2 = fr.n2(), n3 = fr.n3();
  auto block_of = [&](int i) { return i < n1 ? 1 : (i < n1 + n2 ? 2 : 3); };
  const int n = n1 + n2 + n3;
  double worst = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        int n_p1 = (block_of(a) == 1) + (block_of(b) == 1) + (block_of(c) == 1);
        int n_p2 = (block_of(a) == 2) + (block_of(b) == 2) + (block_of(c) == 2);
        const bool allowed = (n_p1 == 3 && n_p2 == 0) || (n_p2 == 3 && n_p1 == 0) ||
                             (n_p1 == 2 && n_p2 == 0) || (n_p2 == 2 && n_p1 == 0) ||
                             (n_p1 == 0 && n_p2 == 0);
        if (!allowed) worst = std::max(worst, std::abs(hq.at(a, b, c)));
      }
  EXPECT_LT(worst, 1e-12);
}

TEST(Curvature, TorsionFormIsClosed) {
  for (const auto& [id, z1] : std::vector<std::pair<std::string, double>>{
           {"su3xsu3_so3", 1.3}, {"su2xsu2_s1_21", 0.8}, {"su2xsu3_s1", 1.9}}) {
    auto sp = build_space(id);
    auto fr = brf::build_adapted_frame(sp, z1);
    auto geo = brf::reductive_geometry(sp, fr);
    auto hq = brf::hq_tensor(sp, fr);
    EXPECT_LT(brf::exterior_derivative_max(geo, hq), 1e-10) << id;
  }
}

TEST(Curvature, CartanThreeFormIsClosedOnGroups) {
  // Sign anchor for the exterior derivative: the Cartan 3-form of a compact
  // group, H(x,y,z) = g_b([x,y],z), is closed, and the bi-invariant metric
  // makes it coclosed as well.
  for (const auto& name : {std::string("su2"), std::string("su3")}) {
    auto built = brf::build_classical<double>(name == "su2" ? "su" : "su",
                                              name == "su2" ? 2 : 3);
    const auto& g = built.algebra;
    Mat<double> gb = -g.killing();
    Mat<double> eye = Mat<double>::Identity(g.dim(), g.dim());
    Mat<double> frame = brf::orthonormalize<double>(eye, gb);
    Mat<double> empty_k(g.dim(), 0);
    auto geo = brf::reductive_geometry(g, frame, empty_k, gb);
    brf::ThreeTensor<double> h(geo.np);
    for (int a = 0; a < geo.np; ++a)
      for (int b = 0; b < geo.np; ++b)
        for (int c = 0; c < geo.np; ++c) h.at(a, b, c) = geo.t(a, b, c);
    EXPECT_LT(brf::exterior_derivative_max(geo, h), 1e-11) << name;
    Vec<double> ones = Vec<double>::Ones(geo.np);
    EXPECT_LT(brf::max_abs<double>(brf::codifferential(geo, h, ones)), 1e-11) << name;
  }
}

TEST(Curvature, TorsionFormIsHarmonicForAllDiagonalMetrics) {
  std::mt19937_64 rng(31);
  for (const auto& [id, z1] : std::vector<std::pair<std::string, double>>{
           {"su3xsu3_so3", 0.6}, {"su2xsu3_s1", 1.1}, {"su2xsu2_s1_21", 2.4}}) {
    auto sp = build_space(id);
    auto fr = brf::build_adapted_frame(sp, z1);
    auto geo = brf::reductive_geometry(sp, fr);
    auto hq = brf::hq_tensor(sp, fr);
    for (int t = 0; t < 5; ++t) {
      const auto m = random_metric(rng);
      const Vec<double> x = brf::metric_coefficients(fr, m.x1, m.x2, m.x3);
      EXPECT_LT(brf::max_abs<double>(brf::codifferential(geo, hq, x)), 1e-9)
          << id << " trial " << t;
    }
  }
}

TEST(Curvature, LegacyTorsionVariantCoincidesExactlyWhenB4IsOne) {
  // B_4 = (z1+1)/c1 equals 1 at z1 = c1 - 1, where both variants agree.
  auto sp = build_space("su3xsu3_so3");
  const double z1 = sp.c1() - 1.0;
  auto ctx = brf::closed_form_context(sp, z1);
  DiagonalMetric<double> m{1.3, 0.8, 1.9};
  Mat<double> corr = brf::h_squared_closed_form(ctx, m, TorsionFormula::corrected);
  Mat<double> legacy = brf::h_squared_closed_form(ctx, m, TorsionFormula::legacy);
  EXPECT_LT(brf::max_abs<double>(corr - legacy), 1e-12);
}

TEST(Curvature, LegacyTorsionVariantDisagreesWithOracleAwayFromB4One) {
  for (const auto& [id, z1] : std::vector<std::pair<std::string, double>>{
           {"su3xsu3_so3", 2.0}, {"so8xso7_g2", 1.0}}) {
    auto sp = build_space(id);
    auto ctx = brf::closed_form_context(sp, z1);
    auto geo = brf::reductive_geometry(sp, ctx.fr);
    auto hq = brf::hq_tensor(sp, ctx.fr);
    DiagonalMetric<double> m{1.0, 1.0, 1.0};
    const Vec<double> x = brf::metric_coefficients(ctx.fr, m.x1, m.x2, m.x3);
    Mat<double> oracle = brf::h_squared_bruteforce(geo, hq, x);
    Mat<double> corr = brf::h_squared_closed_form(ctx, m, TorsionFormula::corrected);
    Mat<double> legacy = brf::h_squared_closed_form(ctx, m, TorsionFormula::legacy);
    EXPECT_LT(brf::max_abs<double>(oracle - corr), 1e-9) << id;
    // The difference lives in the p3 block and is far above noise level.
    const int off = ctx.fr.n1() + ctx.fr.n2();
    const int n3 = ctx.fr.n3();
    double dev = brf::max_abs<double>(
        Mat<double>(legacy.block(off, off, n3, n3) - oracle.block(off, off, n3, n3)));
    EXPECT_GT(dev, 1e-3) << id;
  }
}

TEST(Curvature, CanonicalMetricIsBismutRicciFlat) {
  for (const auto& [id, z1s] :
       std::vector<std::pair<std::string, std::vector<double>>>{
           {"su3xsu3_so3", {0.5, 1.0, 2.0}},
           {"su2xsu2_s1_21", {1.0}},
           {"su2xsu3_s1", {1.0, 0.3}}}) {
    auto sp = build_space(id);
    for (double z1 : z1s) {
      auto fr = brf::build_adapted_frame(sp, z1);
      auto geo = brf::reductive_geometry(sp, fr);
      auto hq = brf::hq_tensor(sp, fr);
      DiagonalMetric<double> m{1.0 / z1, 1.0, (z1 + 1.0) / z1};
      const Vec<double> x = brf::metric_coefficients(fr, m.x1, m.x2, m.x3);
      Mat<double> ric = brf::ricci_bruteforce(geo, x);
      Mat<double> h2 = brf::h_squared_bruteforce(geo, hq, x);
      EXPECT_LT(brf::max_abs<double>(4.0 * ric - h2), 1e-10) << id << " z1=" << z1;
      EXPECT_LT(brf::max_abs<double>(brf::codifferential(geo, hq, x)), 1e-10)
          << id << " z1=" << z1;
      EXPECT_LT(brf::exterior_derivative_max(geo, hq), 1e-10) << id << " z1=" << z1;
    }
  }
}

TEST(Curvature, CanonicalRicciCoefficientsAreExact) {
  // At the canonical metric both cas coefficients vanish identically and the
  // block eigenvalues are 1/4, (c1-1)/4 and c1 (1 - lambda_l)/4.
  auto frac = [](long n, long d) {
    return brf::scalar_traits<Rational>::fraction(n, d);
  };
  auto sp = AlignedSpace<Rational>::build(brf::make_su3xsu3_so3<Rational>());
  for (const Rational& z1 : {Rational(1), frac(3, 7), Rational(5)}) {
    auto cst = sp.constants(z1);
    std::vector<Rational> lambdas = {frac(1, 12)};
    DiagonalMetric<Rational> m{Rational(1) / z1, Rational(1),
                               (z1 + Rational(1)) / z1};
    auto co = brf::ricci_coefficients(cst, lambdas, m);
    EXPECT_EQ(co.cs1, Rational(0));
    EXPECT_EQ(co.cs2, Rational(0));
    EXPECT_EQ(co.id1, frac(1, 4));
    EXPECT_EQ(co.id2, (sp.c1() - Rational(1)) / Rational(4));
    ASSERT_EQ(co.r3.size(), 1u);
    EXPECT_EQ(co.r3[0], sp.c1() * (Rational(1) - frac(1, 12)) / Rational(4));
  }
  auto spec = brf::canonical_ricci_spectrum(sp);
  ASSERT_EQ(spec.size(), 3u);
  EXPECT_EQ(spec[0], (std::pair<Rational, int>{frac(1, 4), 5}));
  EXPECT_EQ(spec[1], (std::pair<Rational, int>{frac(1, 4), 5}));
  EXPECT_EQ(spec[2], (std::pair<Rational, int>{frac(11, 24), 3}));
}

TEST(Curvature, CanonicalTorsionBalancesRicciExactly) {
  // 4 Ric = (H_Q)^2_g at the canonical metric, checked on the closed-form
  // coefficients in exact arithmetic (form = x_k * operator per block).
  auto frac = [](long n, long d) {
    return brf::scalar_traits<Rational>::fraction(n, d);
  };
  for (const auto& [c1, lambdas] :
       std::vector<std::pair<Rational, std::vector<Rational>>>{
           {Rational(2), {Rational(0)}},
           {Rational(2), {frac(1, 12)}},
           {frac(11, 6), {frac(4, 11)}},
           {frac(7, 6), {frac(3, 28), Rational(0)}}}) {
    for (const Rational& z1 : {frac(1, 2), Rational(1), Rational(3)}) {
      auto cst = brf::section_constants(c1, z1);
      DiagonalMetric<Rational> m{Rational(1) / z1, Rational(1),
                                 (z1 + Rational(1)) / z1};
      auto rc = brf::ricci_coefficients(cst, lambdas, m);
      auto hc = brf::h_squared_coefficients(cst, lambdas, m,
                                            TorsionFormula::corrected);
      EXPECT_EQ(Rational(4) * m.x1 * rc.id1, hc.id1);
      EXPECT_EQ(Rational(4) * m.x1 * rc.cs1, hc.cs1);
      EXPECT_EQ(Rational(4) * m.x2 * rc.id2, hc.id2);
      EXPECT_EQ(Rational(4) * m.x2 * rc.cs2, hc.cs2);
      for (size_t l = 0; l < lambdas.size(); ++l)
        EXPECT_EQ(Rational(4) * m.x3 * rc.r3[l], hc.h3[l]);
    }
  }
}

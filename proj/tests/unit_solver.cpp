#include <gtest/gtest.h>

#include <cmath>

#include "brf/brf_solver.hpp"

using brf::AlignedSpace;
using brf::DiagonalMetric;
using brf::Rational;
using brf::ScalarData;

namespace {

Rational frac(long n, long d) {
  return brf::scalar_traits<Rational>::fraction(n, d);
}

AlignedSpace<double> build_space(const std::string& id) {
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

/// Scalar data of SO(8)xSO(7)/G2 written out as exact rationals; the values
/// are cross-checked against the floating-point space build below.
ScalarData<Rational> so8xso7_scalar_data() {
  ScalarData<Rational> sd;
  sd.c1 = frac(11, 6);
  sd.c2 = frac(11, 5);
  sd.lambda = frac(4, 11);
  sd.kappa1 = frac(1, 3);
  sd.kappa2 = frac(2, 5);
  return sd;
}

}  // namespace

TEST(Solver, QuadraticRootsHaveClosedSpecialCases) {
  // kappa = 1/2 collapses the discriminant and gives x1 = u/2.
  const Rational x3(3), z1(2);
  const Rational u = x3 / (z1 + 1) + (z1 + 1) / (x3 * z1 * z1);
  EXPECT_EQ(brf::solve_x1(x3, z1, frac(1, 2)), u / 2);
  EXPECT_EQ(brf::solve_x2(x3, z1, frac(1, 2)), z1 * u / 2);

  // At the canonical x3 the roots reproduce the canonical metric for any
  // admissible kappa; u = 2/z1 makes the discriminant a perfect square.
  for (const Rational& k : {frac(1, 3), frac(2, 5), frac(1, 2)}) {
    for (const Rational& z : {frac(1, 2), Rational(1), Rational(3)}) {
      const Rational xc = (z + 1) / z;
      EXPECT_EQ(brf::solve_x1(xc, z, k), Rational(1) / z);
      EXPECT_EQ(brf::solve_x2(xc, z, k), Rational(1));
    }
  }

  // Equal kappas force x2 = z1 x1 off the canonical point as well.
  const double x1 = brf::solve_x1(1.9, 0.6, 0.37);
  const double x2 = brf::solve_x2(1.9, 0.6, 0.37);
  EXPECT_NEAR(x2, 0.6 * x1, 1e-14);
}

TEST(Solver, QuadraticRootsRejectBadKappa) {
  EXPECT_THROW(brf::solve_x1(1.0, 1.0, 0.0), brf::ParameterError);
  EXPECT_THROW(brf::solve_x1(1.0, 1.0, -0.2), brf::ParameterError);
  EXPECT_THROW(brf::solve_x1(1.0, 1.0, 0.51), brf::ParameterError);
  EXPECT_THROW(brf::solve_x2(1.0, 1.0, 0.6), brf::ParameterError);
}

TEST(Solver, ScalarDataExtraction) {
  const auto sd = brf::scalar_data(build_space("su3xsu3_so3"));
  EXPECT_NEAR(sd.c1, 2.0, 1e-12);
  EXPECT_NEAR(sd.c2, 2.0, 1e-12);
  EXPECT_NEAR(sd.lambda, 1.0 / 12.0, 1e-12);
  EXPECT_NEAR(sd.kappa1, 0.5, 1e-12);
  EXPECT_NEAR(sd.kappa2, 0.5, 1e-12);

  // The exact rational table for SO(8)xSO(7)/G2 matches the built space.
  const auto sd8 = brf::scalar_data(build_space("so8xso7_g2"));
  const auto ex = so8xso7_scalar_data();
  EXPECT_NEAR(sd8.c1, brf::to_double(ex.c1), 1e-12);
  EXPECT_NEAR(sd8.c2, brf::to_double(ex.c2), 1e-12);
  EXPECT_NEAR(sd8.lambda, brf::to_double(ex.lambda), 1e-12);
  EXPECT_NEAR(sd8.kappa1, brf::to_double(ex.kappa1), 1e-12);
  EXPECT_NEAR(sd8.kappa2, brf::to_double(ex.kappa2), 1e-12);

  // A space with a non-scalar isotropy Casimir is rejected.
  EXPECT_THROW(brf::scalar_data(build_space("su2xsu3_s1")),
               brf::UnsupportedSpaceError);
}

TEST(Solver, LegacyCurvePassesThroughTheCanonicalPoint) {
  // F vanishes exactly at (x3, z1) = (c1/(c1-1), c1-1).
  auto spq = AlignedSpace<Rational>::build(brf::make_su3xsu3_so3<Rational>());
  const auto sdq = brf::scalar_data(spq);
  EXPECT_EQ(brf::legacy_F(Rational(2), Rational(1), sdq), Rational(0));
  const auto ex = so8xso7_scalar_data();
  EXPECT_EQ(brf::legacy_F(frac(11, 5), frac(5, 6), ex), Rational(0));

  // legacy_solve recovers the same roots in floating point.
  const auto sd = brf::scalar_data(build_space("su3xsu3_so3"));
  EXPECT_NEAR(brf::legacy_solve(sd, 1.0), 2.0, 1e-12);
  const auto sd8 = brf::scalar_data(build_space("so8xso7_g2"));
  EXPECT_NEAR(brf::legacy_solve(sd8, 5.0 / 6.0), 11.0 / 5.0, 1e-12);
}

TEST(Solver, LegacySolveSatisfiesTheCurveEquation) {
  const auto sd = brf::scalar_data(build_space("su3xsu3_so3"));
  for (double z1 : {0.4, 1.0, 1.7, 3.0}) {
    const double x3 = brf::legacy_solve(sd, z1);
    EXPECT_GT(x3, 0.0);
    EXPECT_LT(std::abs(brf::legacy_F(x3, z1, sd)), 1e-12);
  }
}

TEST(Solver, DualDerivativesMatchFiniteDifferences) {
  const auto sd = brf::scalar_data(build_space("su3xsu3_so3"));
  const double z1 = 1.7;
  const double x3 = brf::legacy_solve(sd, z1);
  const auto der = brf::legacy_curve_derivatives(sd, z1, x3);

  const double h = 1e-6;
  const double fx_fd =
      (brf::legacy_F(x3 + h, z1, sd) - brf::legacy_F(x3 - h, z1, sd)) / (2 * h);
  const double fz_fd =
      (brf::legacy_F(x3, z1 + h, sd) - brf::legacy_F(x3, z1 - h, sd)) / (2 * h);
  EXPECT_NEAR(der.f_x, fx_fd, 1e-7 * std::max(1.0, std::abs(fx_fd)));
  EXPECT_NEAR(der.f_z, fz_fd, 1e-7 * std::max(1.0, std::abs(fz_fd)));

  // Implicit derivative against a finite difference of the root itself.
  const double x3p_fd =
      (brf::legacy_solve(sd, z1 + h) - brf::legacy_solve(sd, z1 - h)) / (2 * h);
  EXPECT_NEAR(der.x3_prime, x3p_fd, 1e-5 * std::max(1.0, std::abs(x3p_fd)));
  EXPECT_NEAR(der.x3_prime, brf::implicit_derivative(sd, z1, x3), 1e-15);

  // Ratio derivatives against finite differences along the curve.
  const auto ratio_at = [&](double z) {
    const double x = brf::legacy_solve(sd, z);
    return brf::ricci_ratios(sd, z, brf::legacy_metric(sd, z, x));
  };
  const double r12p_fd = (ratio_at(z1 + h).r12 - ratio_at(z1 - h).r12) / (2 * h);
  const double r13p_fd = (ratio_at(z1 + h).r13 - ratio_at(z1 - h).r13) / (2 * h);
  EXPECT_NEAR(der.r12_prime, r12p_fd, 1e-5 * std::max(1.0, std::abs(r12p_fd)));
  EXPECT_NEAR(der.r13_prime, r13p_fd, 1e-5 * std::max(1.0, std::abs(r13p_fd)));
}

TEST(Solver, ExactCurveDerivativesAtTheCanonicalPoint) {
  // SU(3)xSU(3)/SO(3): all four derivative quantities as exact rationals.
  auto spq = AlignedSpace<Rational>::build(brf::make_su3xsu3_so3<Rational>());
  const auto sdq = brf::scalar_data(spq);
  const auto d3 = brf::legacy_curve_derivatives(sdq, Rational(1), Rational(2));
  EXPECT_EQ(d3.f_x, frac(44, 3));
  EXPECT_EQ(d3.f_z, frac(91, 6));
  EXPECT_EQ(d3.x3_prime, frac(-91, 88));
  EXPECT_EQ(d3.r13_prime, frac(45, 2662));

  // SO(8)xSO(7)/G2 at z1 = 5/6, x3 = 11/5.
  const auto ex = so8xso7_scalar_data();
  const auto d8 = brf::legacy_curve_derivatives(ex, frac(5, 6), frac(11, 5));
  EXPECT_EQ(d8.f_x, frac(847, 90));
  EXPECT_EQ(d8.f_z, frac(1994, 125));
  EXPECT_EQ(d8.x3_prime, frac(-35892, 21175));
  EXPECT_EQ(d8.r12_prime, frac(-864, 46585));
  // The fraction in the historical account carries a minus sign that
  // contradicts its own decimal expansion 0.052; the derivative is positive.
  EXPECT_EQ(d8.r13_prime, frac(2160, 41503));
}

TEST(Solver, RicciRatiosOnCanonicalAndEqualKappaCurves) {
  // Canonical eigenvalues: (1/4, (c1-1)/4, c1(1-lambda)/4), exactly.
  auto spq = AlignedSpace<Rational>::build(brf::make_su3xsu3_so3<Rational>());
  const auto sdq = brf::scalar_data(spq);
  for (const Rational& z1 : {frac(3, 7), Rational(1), Rational(4)}) {
    const auto r = brf::ricci_ratios(sdq, z1, brf::canonical_metric(z1));
    EXPECT_EQ(r.r1, frac(1, 4));
    EXPECT_EQ(r.r2, frac(1, 4));
    EXPECT_EQ(r.r3, frac(11, 24));
    EXPECT_EQ(r.r13, frac(6, 11));
  }

  // Equal kappas force r1/r2 = 1/(c1 - 1) everywhere on the root curves.
  const auto sd = brf::scalar_data(build_space("su3xsu3_so3"));
  for (double z1 : {0.6, 1.0, 2.3}) {
    for (double x3 : {0.9, 1.9, 4.0}) {
      const auto m = brf::legacy_metric(sd, z1, x3);
      EXPECT_NEAR(brf::ricci_ratios(sd, z1, m).r12, 1.0, 1e-12);
    }
  }
}

TEST(Solver, GkCoordinatesAreConstantOnTheCanonicalFamily) {
  // c1 = 2 gives the exact triple (1, 1, 2) for every z1.
  for (const Rational& z1 : {frac(1, 3), Rational(1), Rational(7)}) {
    const auto gk =
        brf::gk_coordinates(Rational(2), z1, brf::canonical_metric(z1));
    EXPECT_EQ(gk[0], Rational(1));
    EXPECT_EQ(gk[1], Rational(1));
    EXPECT_EQ(gk[2], Rational(2));
  }

  // General c1: the triple (1, 1/(c1-1), c1/(c1-1)), independent of z1.
  const Rational c1 = frac(11, 6);
  for (const Rational& z1 : {frac(1, 2), Rational(2)}) {
    const auto gk = brf::gk_coordinates(c1, z1, brf::canonical_metric(z1));
    EXPECT_EQ(gk[0], Rational(1));
    EXPECT_EQ(gk[1], frac(6, 5));
    EXPECT_EQ(gk[2], frac(11, 5));
  }

  // SU(2)xSU(2) with slopes (p, q) = (2, 1): c1 = 5/4 and the triple agrees
  // with the known homothety normal form (1, p^2/q^2, (p^2+q^2)/q^2).
  const auto gk21 = brf::gk_coordinates(frac(5, 4), Rational(3),
                                        brf::canonical_metric(Rational(3)));
  EXPECT_EQ(gk21[0], Rational(1));
  EXPECT_EQ(gk21[1], Rational(4));
  EXPECT_EQ(gk21[2], Rational(5));
}

TEST(Solver, ResidualIsSmallOnlyAtSolutions) {
  auto sp = build_space("su3xsu3_so3");
  for (double z1 : {0.5, 1.0, 2.0}) {
    EXPECT_LT(brf::brf_residual(sp, z1, brf::canonical_metric(z1)), 1e-10);
  }
  EXPECT_GT(brf::brf_residual(sp, 1.0, DiagonalMetric<double>{1, 1, 1}), 0.01);
}

TEST(Solver, ResidualScalesInverselyUnderHomothety) {
  auto sp = build_space("su3xsu3_so3");
  const double z1 = 1.3;
  const auto fr = brf::build_adapted_frame(sp, z1);
  const auto geo = brf::reductive_geometry(sp, fr);
  const auto hq = brf::hq_tensor(sp, fr);
  const DiagonalMetric<double> m{1.1, 0.8, 1.7};
  const double base = brf::brf_residual(geo, fr, hq, m);
  EXPECT_GT(base, 1e-3);

  const double c = 3.0;
  auto hs = hq;
  for (auto& t : hs.v) t *= c;
  const DiagonalMetric<double> ms{c * m.x1, c * m.x2, c * m.x3};
  const double scaled = brf::brf_residual(geo, fr, hs, ms);
  EXPECT_NEAR(scaled, base / c, 1e-9 * base);
}

TEST(Solver, CorrectedSolveCertifiesUniqueness) {
  // Exact mode: certificates and the quadratic-root cross-check both run.
  auto spq = AlignedSpace<Rational>::build(brf::make_su3xsu3_so3<Rational>());
  const auto res = brf::solve_corrected(spq, Rational(2));
  EXPECT_EQ(res.solution.metric.x1, frac(1, 2));
  EXPECT_EQ(res.solution.metric.x2, Rational(1));
  EXPECT_EQ(res.solution.metric.x3, frac(3, 2));
  EXPECT_EQ(res.solution.residual, 0.0);
  ASSERT_EQ(res.certificates.size(), 1u);
  EXPECT_EQ(res.certificates[0], frac(11, 3));
  EXPECT_EQ(res.solution.gk[2], Rational(2));

  // Floating point on a space with a non-scalar Casimir: the certificates
  // still apply and the oracle residual confirms the solution.
  auto sp = build_space("su2xsu3_s1");
  const auto r2 = brf::solve_corrected(sp, 0.8);
  EXPECT_FALSE(r2.certificates.empty());
  for (double cert : r2.certificates) EXPECT_GT(cert, 0.0);
  EXPECT_LT(r2.solution.residual, 1e-10);
}

TEST(Solver, MultistartFindsOnlyTheCanonicalSolution) {
  for (const char* id : {"su2xsu3_s1", "su3xsu3_so3"}) {
    auto sp = build_space(id);
    const double z1 = 1.5;
    const auto out = brf::multistart_brf_search(sp, z1, 50, 2024);
    EXPECT_GT(out.converged, 5) << id;
    ASSERT_EQ(out.solutions.size(), 1u) << id;
    const auto m = brf::canonical_metric(z1);
    EXPECT_NEAR(out.solutions[0][0], m.x1, 1e-8) << id;
    EXPECT_NEAR(out.solutions[0][1], m.x2, 1e-8) << id;
    EXPECT_NEAR(out.solutions[0][2], m.x3, 1e-8) << id;
  }
}

TEST(Solver, CorrigendumReportSeparatesLegacyFromCorrected) {
  auto sp = build_space("su3xsu3_so3");
  const auto rep = brf::corrigendum_report(sp, {0.5, 1.0, 2.0});
  ASSERT_EQ(rep.rows.size(), 3u);
  EXPECT_NEAR(rep.canonical_z1, 1.0, 1e-14);
  for (const auto& row : rep.rows) {
    if (std::abs(row.z1 - rep.canonical_z1) < 1e-12) {
      EXPECT_LT(row.legacy_residual, 1e-10);
      EXPECT_LT(row.h2_p3_delta, 1e-12);
    } else {
      EXPECT_GT(row.legacy_residual, 1e-4);
      EXPECT_GT(row.h2_p3_delta, 1e-4);
    }
    EXPECT_NEAR(row.corrected_gk[0], 1.0, 1e-12);
    EXPECT_NEAR(row.corrected_gk[1], 1.0, 1e-12);
    EXPECT_NEAR(row.corrected_gk[2], 2.0, 1e-12);
  }
  EXPECT_NEAR(rep.at_canonical.x3_prime, -91.0 / 88.0, 1e-10);
  EXPECT_NEAR(rep.at_canonical.r13_prime, 45.0 / 2662.0, 1e-10);
  EXPECT_FALSE(rep.notes.empty());
}

TEST(Solver, CorrigendumReportFlagsTheDerivativeSign) {
  auto sp = build_space("so8xso7_g2");
  const auto rep = brf::corrigendum_report(sp, {5.0 / 6.0});
  ASSERT_EQ(rep.rows.size(), 1u);
  EXPECT_LT(rep.rows[0].legacy_residual, 1e-10);
  EXPECT_NEAR(rep.at_canonical.x3_prime, -35892.0 / 21175.0, 1e-9);
  EXPECT_NEAR(rep.at_canonical.r12_prime, -864.0 / 46585.0, 1e-9);
  EXPECT_NEAR(rep.at_canonical.r13_prime, 2160.0 / 41503.0, 1e-9);
  bool flagged = false;
  for (const auto& note : rep.notes)
    flagged = flagged || note.find("sign") != std::string::npos;
  EXPECT_TRUE(flagged);
}

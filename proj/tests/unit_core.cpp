#include <gtest/gtest.h>

#include "brf/dual.hpp"
#include "brf/linalg.hpp"
#include "brf/scalar.hpp"

using brf::Dual2;
using brf::Mat;
using brf::Rational;
using brf::Vec;

TEST(Scalar, ExactSqrt) {
  EXPECT_EQ(brf::exact_sqrt(Rational(49, 25)), Rational(7, 5));
  EXPECT_EQ(brf::exact_sqrt(Rational(0)), Rational(0));
  EXPECT_THROW(brf::exact_sqrt(Rational(2)), brf::NumericalError);
  EXPECT_THROW(brf::exact_sqrt(Rational(-1)), brf::NumericalError);
}

TEST(Scalar, ParseRational) {
  EXPECT_EQ(brf::parse_rational("5/6"), Rational(5, 6));
  EXPECT_EQ(brf::parse_rational("-35892/21175"), Rational(-35892, 21175));
  EXPECT_EQ(brf::parse_rational("3"), Rational(3));
  EXPECT_EQ(brf::parse_rational("0.25"), Rational(1, 4));
  EXPECT_THROW(brf::parse_rational("x"), brf::ParameterError);
}

TEST(Linalg, RationalKernelExact) {
  // Kernel of [[1,2,3],[2,4,6]] is 2-dimensional, computed exactly.
  Mat<Rational> m(2, 3);
  m << Rational(1), Rational(2), Rational(3), Rational(2), Rational(4),
      Rational(6);
  Mat<Rational> k = brf::kernel_basis(m);
  ASSERT_EQ(k.cols(), 2);
  Mat<Rational> prod = m * k;
  EXPECT_TRUE(brf::is_exactly_zero(prod));
  EXPECT_EQ(brf::rank_of(m), 1);
}

TEST(Linalg, RationalSolveInSpan) {
  Mat<Rational> V(3, 2);
  V << Rational(1), Rational(0), Rational(1), Rational(1), Rational(0),
      Rational(2);
  Vec<Rational> w(3);
  w << Rational(3), Rational(5), Rational(4);
  Vec<Rational> x = brf::coords_in_span(V, w);
  EXPECT_EQ(x(0), Rational(3));
  EXPECT_EQ(x(1), Rational(2));

  Vec<Rational> outside(3);
  outside << Rational(1), Rational(0), Rational(0);
  EXPECT_THROW(brf::coords_in_span(V, outside), brf::NumericalError);
}

TEST(Linalg, OrthonormalizeDouble) {
  Mat<double> vectors(3, 2);
  vectors << 1, 1, 1, 0, 0, 1;
  Mat<double> gram = 2.0 * Mat<double>::Identity(3, 3);
  Mat<double> q = brf::orthonormalize(vectors, gram);
  Mat<double> g = q.transpose() * gram * q;
  EXPECT_NEAR((g - Mat<double>::Identity(2, 2)).norm(), 0.0, 1e-12);
}

TEST(Linalg, ComplexPairCommutator) {
  using CM = brf::CMat<Rational>;
  // [i sigma_1 / something]: use E12 basis check (su(2)-like relations).
  CM a(2, 2), b(2, 2);
  a.re(0, 1) = 1;
  a.re(1, 0) = -1;  // E12 - E21
  b.im(0, 1) = 1;
  b.im(1, 0) = 1;  // i(E12 + E21)
  CM c = CM::commutator(a, b);
  // [a,b] = 2i(E11 - E22)
  EXPECT_EQ(c.im(0, 0), Rational(2));
  EXPECT_EQ(c.im(1, 1), Rational(-2));
  EXPECT_EQ(c.re(0, 1), Rational(0));
  EXPECT_TRUE(brf::is_exactly_zero(c.re));
}

TEST(Dual, ArithmeticAndSqrt) {
  using D = Dual2<double>;
  D x = D::var_x(3.0), z = D::var_z(2.0);
  D f = x * x * z + z / x;  // f = 18 + 2/3, df/dx = 2xz - z/x^2, df/dz = x^2 + 1/x
  EXPECT_NEAR(f.v, 18.0 + 2.0 / 3.0, 1e-14);
  EXPECT_NEAR(f.dx, 12.0 - 2.0 / 9.0, 1e-14);
  EXPECT_NEAR(f.dz, 9.0 + 1.0 / 3.0, 1e-14);

  D s = brf::dual_sqrt(x * x);
  EXPECT_NEAR(s.v, 3.0, 1e-14);
  EXPECT_NEAR(s.dx, 1.0, 1e-14);
}

TEST(Dual, ExactRationalSqrtDerivative) {
  using D = Dual2<Rational>;
  // g = sqrt(x^2 z^2) at x=6/5 has exact derivative branch.
  D x = D::var_x(Rational(6, 5)), z = D::var_z(Rational(3));
  D g = brf::dual_sqrt(x * x * z * z);
  EXPECT_EQ(g.v, Rational(18, 5));
  EXPECT_EQ(g.dx, Rational(3));
  EXPECT_EQ(g.dz, Rational(6, 5));
  // Non-perfect square raises.
  EXPECT_THROW(brf::dual_sqrt(D::var_x(Rational(2))), brf::NumericalError);
}

#include <gtest/gtest.h>

#include "brf/lie_algebra.hpp"

using brf::BuiltAlgebra;
using brf::CMat;
using brf::Mat;
using brf::Rational;
using brf::Representation;
using brf::Vec;

namespace {

// Killing form of a matrix-built algebra must equal coef * tr(XY) on the
// defining representation (coef = 2n for su(n), n-2 for so(n), 2n+2 for
// sp(n) in u(2n), 4 for g2 on R^7).
template <class S>
void expect_killing_trace_multiple(const BuiltAlgebra<S>& built, long coef) {
  const auto& alg = built.algebra;
  for (int i = 0; i < alg.dim(); ++i)
    for (int j = i; j < alg.dim(); ++j) {
      S tr = CMat<S>::trace_prod_re(built.matrices[i], built.matrices[j]);
      if constexpr (brf::scalar_traits<S>::exact) {
        EXPECT_EQ(alg.killing()(i, j), S(coef) * tr)
            << alg.name() << " entry " << i << "," << j;
      } else {
        EXPECT_NEAR(brf::to_double(alg.killing()(i, j)),
                    coef * brf::to_double(tr), 1e-9);
      }
    }
}

}  // namespace

TEST(Algebra, Su2ExactStructure) {
  auto su2 = brf::build_su<Rational>(2);
  EXPECT_EQ(su2.algebra.dim(), 3);
  expect_killing_trace_multiple(su2, 4);
  // -B = 8 I on this basis
  Mat<Rational> expected = Rational(-8) * Mat<Rational>::Identity(3, 3);
  EXPECT_TRUE(brf::is_exactly_zero(Mat<Rational>(su2.algebra.killing() - expected)));
  EXPECT_EQ(su2.algebra.jacobi_residual(), 0.0);
}

TEST(Algebra, Su3Exact) {
  auto su3 = brf::build_su<Rational>(3);
  EXPECT_EQ(su3.algebra.dim(), 8);
  expect_killing_trace_multiple(su3, 6);
  EXPECT_EQ(su3.algebra.jacobi_residual(), 0.0);
}

TEST(Algebra, KillingInvariance) {
  auto su3 = brf::build_su<Rational>(3);
  const auto& a = su3.algebra;
  // B([x,y],z) + B(y,[x,z]) = 0 for random-ish coordinate vectors.
  Vec<Rational> x = Vec<Rational>::Zero(8), y = Vec<Rational>::Zero(8),
                z = Vec<Rational>::Zero(8);
  x(0) = 1; x(3) = Rational(2, 3); x(7) = -2;
  y(1) = Rational(1, 2); y(4) = 3; y(6) = -1;
  z(2) = 1; z(5) = Rational(-5, 7); z(0) = 4;
  Rational lhs = (a.bracket(x, y).transpose() * a.killing() * z)(0, 0);
  Rational rhs = (y.transpose() * a.killing() * a.bracket(x, z))(0, 0);
  EXPECT_EQ(lhs + rhs, Rational(0));
}

TEST(Algebra, SoFamilies) {
  auto so5 = brf::build_so<Rational>(5);
  EXPECT_EQ(so5.algebra.dim(), 10);
  expect_killing_trace_multiple(so5, 3);
  EXPECT_EQ(so5.algebra.jacobi_residual(), 0.0);

  auto so7 = brf::build_so<double>(7);
  EXPECT_EQ(so7.algebra.dim(), 21);
  expect_killing_trace_multiple(so7, 5);
  EXPECT_LT(so7.algebra.jacobi_residual(), 1e-12);
}

TEST(Algebra, SoBasisIndex) {
  auto so6 = brf::build_so<double>(6);
  for (int j = 0; j < 6; ++j)
    for (int k = j + 1; k < 6; ++k) {
      int idx = brf::so_basis_index(6, j, k);
      EXPECT_EQ(so6.algebra.labels()[idx], "l" + std::to_string(j + 1) + "_" +
                                               std::to_string(k + 1));
      EXPECT_EQ(so6.matrices[idx].re(j, k), 1.0);
    }
}

TEST(Algebra, SpFamilies) {
  auto sp1 = brf::build_sp<Rational>(1);
  EXPECT_EQ(sp1.algebra.dim(), 3);
  expect_killing_trace_multiple(sp1, 4);

  auto sp2 = brf::build_sp<Rational>(2);
  EXPECT_EQ(sp2.algebra.dim(), 10);
  expect_killing_trace_multiple(sp2, 6);
  EXPECT_EQ(sp2.algebra.jacobi_residual(), 0.0);
}

TEST(Algebra, G2Exact) {
  auto g2 = brf::build_g2<Rational>();
  EXPECT_EQ(g2.algebra.dim(), 14);
  expect_killing_trace_multiple(g2, 4);
  EXPECT_EQ(g2.algebra.jacobi_residual(), 0.0);
  // Killing negative definite: check via double eigenvalues.
  Mat<double> K(14, 14);
  for (int i = 0; i < 14; ++i)
    for (int j = 0; j < 14; ++j) K(i, j) = brf::to_double(g2.algebra.killing()(i, j));
  Eigen::SelfAdjointEigenSolver<Mat<double>> es(K);
  EXPECT_LT(es.eigenvalues().maxCoeff(), 0.0);
}

TEST(Algebra, DirectSum) {
  auto su2 = brf::build_su<Rational>(2);
  auto so5 = brf::build_so<Rational>(5);
  auto sum = brf::direct_sum(su2.algebra, so5.algebra);
  EXPECT_EQ(sum.dim(), 13);
  ASSERT_EQ(sum.ideal_ranges().size(), 2u);
  EXPECT_EQ(sum.ideal_ranges()[0], (std::pair<int, int>{0, 3}));
  EXPECT_EQ(sum.ideal_ranges()[1], (std::pair<int, int>{3, 13}));
  // Killing is block diagonal and restricts to the factor forms.
  for (int i = 0; i < 3; ++i)
    for (int j = 3; j < 13; ++j) EXPECT_EQ(sum.killing()(i, j), Rational(0));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      EXPECT_EQ(sum.killing()(i, j), su2.algebra.killing()(i, j));
  EXPECT_EQ(sum.jacobi_residual(), 0.0);
}

TEST(Algebra, SubalgebraStructure) {
  // so(3) inside su(3): the real antisymmetric span {a12, a13, a23}.
  auto su3 = brf::build_su<Rational>(3);
  const auto& labels = su3.algebra.labels();
  Mat<Rational> V = Mat<Rational>::Zero(8, 3);
  int col = 0;
  for (int i = 0; i < 8; ++i)
    if (labels[i][0] == 'a') V(i, col++) = 1;
  ASSERT_EQ(col, 3);
  auto so3 = brf::subalgebra_structure(su3.algebra, V, "so3");
  EXPECT_EQ(so3.dim(), 3);
  EXPECT_EQ(so3.jacobi_residual(), 0.0);
  // Killing of so(3) realized here: B(X,Y) = tr(ad X ad Y) on the abstract
  // algebra; basis brackets match so(3) with B = -2 I.
  Mat<Rational> expected = Rational(-2) * Mat<Rational>::Identity(3, 3);
  EXPECT_TRUE(brf::is_exactly_zero(Mat<Rational>(so3.killing() - expected)));

  // A non-closed span must throw.
  Mat<Rational> W = Mat<Rational>::Zero(8, 2);
  W(0, 0) = 1;  // a12
  W(1, 1) = 1;  // s12
  EXPECT_THROW(brf::subalgebra_structure(su3.algebra, W, "bad"),
               brf::NumericalError);
}

TEST(Algebra, AdjointCasimirIsIdentity) {
  // cas_{ad, -B} = Id on a simple algebra.
  auto su3 = brf::build_su<Rational>(3);
  const auto& a = su3.algebra;
  Representation<Rational> ad;
  ad.space_dim = a.dim();
  for (int i = 0; i < a.dim(); ++i) {
    Vec<Rational> e = Vec<Rational>::Zero(a.dim());
    e(i) = 1;
    ad.matrices.push_back(a.ad(e));
  }
  Mat<Rational> gram = -a.killing();
  Mat<Rational> cas = brf::casimir(ad, gram);
  EXPECT_TRUE(brf::is_exactly_zero(
      Mat<Rational>(cas - Mat<Rational>::Identity(a.dim(), a.dim()))));
}

TEST(Algebra, IntertwinerDim) {
  auto su2 = brf::build_su<Rational>(2);
  const auto& a = su2.algebra;
  Representation<Rational> ad;
  ad.space_dim = 3;
  for (int i = 0; i < 3; ++i) {
    Vec<Rational> e = Vec<Rational>::Zero(3);
    e(i) = 1;
    ad.matrices.push_back(a.ad(e));
  }
  // Schur: Hom(ad, ad) = R for the irreducible adjoint of su(2).
  EXPECT_EQ(brf::intertwiner_dim(ad, ad), 1);
  // Trivial rep has no intertwiners with the adjoint.
  Representation<Rational> triv;
  triv.space_dim = 1;
  for (int i = 0; i < 3; ++i) triv.matrices.push_back(Mat<Rational>::Zero(1, 1));
  EXPECT_EQ(brf::intertwiner_dim(triv, ad), 0);
  EXPECT_EQ(brf::intertwiner_dim(ad, triv), 0);
}

TEST(Algebra, BuildClassicalDispatch) {
  EXPECT_EQ(brf::build_classical<double>("su", 4).algebra.dim(), 15);
  EXPECT_EQ(brf::build_classical<double>("so", 8).algebra.dim(), 28);
  EXPECT_EQ(brf::build_classical<double>("sp", 2).algebra.dim(), 10);
  EXPECT_EQ(brf::build_classical<double>("g2", 0).algebra.dim(), 14);
  EXPECT_THROW(brf::build_classical<double>("e8", 8), brf::ParameterError);
  EXPECT_THROW(brf::build_su<double>(1), brf::ParameterError);
}

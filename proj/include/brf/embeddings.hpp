#pragma once

#include <array>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "brf/lie_algebra.hpp"

namespace brf {

/// Two compact factors g1, g2 with a common compact subalgebra k embedded in
/// the direct sum.  k_basis columns hold coordinates with respect to the
/// direct-sum basis (factor1 block first).
template <class S>
struct Embedding {
  BuiltAlgebra<S> factor1;
  BuiltAlgebra<S> factor2;
  StructureAlgebra<S> g;
  Mat<S> k_basis;
  std::string name;
};

/// Index of a basis label; throws if absent.
template <class S>
int label_index(const StructureAlgebra<S>& alg, const std::string& label) {
  const auto& ls = alg.labels();
  for (int i = 0; i < alg.dim(); ++i)
    if (ls[i] == label) return i;
  throw ParameterError("label_index: no basis element '" + label + "' in " +
                       alg.name());
}

/// Assemble an embedding, checking that k_basis has full column rank and
/// spans a bracket-closed subspace.
template <class S>
Embedding<S> make_embedding(BuiltAlgebra<S> f1, BuiltAlgebra<S> f2,
                            Mat<S> k_basis, std::string name) {
  StructureAlgebra<S> g = direct_sum(f1.algebra, f2.algebra);
  if (rank_of(k_basis) != k_basis.cols())
    throw ParameterError(name + ": subalgebra basis is rank deficient");
  subalgebra_structure(g, k_basis, name + ".k");
  return {std::move(f1), std::move(f2), std::move(g), std::move(k_basis),
          std::move(name)};
}

/// The same space with the two factors exchanged.
template <class S>
Embedding<S> swap_factors(const Embedding<S>& e) {
  const int d1 = e.factor1.algebra.dim(), d2 = e.factor2.algebra.dim();
  Mat<S> kb(d1 + d2, e.k_basis.cols());
  kb.topRows(d2) = e.k_basis.bottomRows(d2);
  kb.bottomRows(d1) = e.k_basis.topRows(d1);
  return make_embedding(e.factor2, e.factor1, std::move(kb), e.name);
}

/// Coordinates of an anti-Hermitian matrix in the basis of a matrix-built
/// algebra, via the Gram matrix of -Re tr(XY); verifies the reconstruction.
template <class S>
Vec<S> matrix_coordinates(const BuiltAlgebra<S>& alg, const CMat<S>& x) {
  const int n = alg.algebra.dim();
  Mat<S> gram(n, n);
  Vec<S> rhs(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      S v = -CMat<S>::trace_prod_re(alg.matrices[i], alg.matrices[j]);
      gram(i, j) = v;
      gram(j, i) = v;
    }
    rhs(i) = -CMat<S>::trace_prod_re(alg.matrices[i], x);
  }
  Eigen::FullPivLU<Mat<S>> lu(gram);
  Vec<S> c = lu.solve(rhs);
  CMat<S> recon(x.rows(), x.cols());
  for (int i = 0; i < n; ++i)
    if (c(i) != S(0)) recon = recon + alg.matrices[i].scaled(c(i));
  CMat<S> diff = recon - x;
  if constexpr (scalar_traits<S>::exact) {
    if (!diff.is_zero())
      throw NumericalError("matrix_coordinates: element not in span");
  } else {
    if (max_abs<S>(diff.re) > 1e-8 || max_abs<S>(diff.im) > 1e-8)
      throw NumericalError("matrix_coordinates: element not in span");
  }
  return c;
}

/// Top-left corner embedding of a small matrix into an N x N one.
template <class S>
CMat<S> corner_embed(const CMat<S>& x, int N) {
  CMat<S> out(N, N);
  out.re.topLeftCorner(x.rows(), x.cols()) = x.re;
  out.im.topLeftCorner(x.rows(), x.cols()) = x.im;
  return out;
}

/// Diagonal embedding of a common subalgebra into g + g: k = {(v, v)}.
template <class S>
Embedding<S> make_diagonal(const BuiltAlgebra<S>& factor, const Mat<S>& sub,
                           std::string name) {
  const int d = factor.algebra.dim();
  Mat<S> kb = Mat<S>::Zero(2 * d, sub.cols());
  kb.topRows(d) = sub;
  kb.bottomRows(d) = sub;
  return make_embedding(factor, factor, std::move(kb), std::move(name));
}

/// S^1 inside SU(2) x SU(2) with slope (p, q) on the two maximal tori.
template <class S>
Embedding<S> make_su2xsu2_s1(long p, long q) {
  if (p <= 0 || q <= 0)
    throw ParameterError("su2xsu2_s1: p and q must be positive");
  auto f1 = build_su<S>(2);
  auto f2 = build_su<S>(2);
  const int i1 = label_index(f1.algebra, "d1");
  Mat<S> kb = Mat<S>::Zero(6, 1);
  kb(i1, 0) = S(p);
  kb(3 + i1, 0) = S(q);
  return make_embedding(std::move(f1), std::move(f2), std::move(kb),
                        "su2xsu2_s1_" + std::to_string(p) + std::to_string(q));
}

/// S^1 inside SU(2) x SU(3), diag(it, -it) paired with diag(it, -it, 0).
template <class S>
Embedding<S> make_su2xsu3_s1() {
  auto f1 = build_su<S>(2);
  auto f2 = build_su<S>(3);
  Mat<S> kb = Mat<S>::Zero(11, 1);
  kb(label_index(f1.algebra, "d1"), 0) = S(1);
  kb(3 + label_index(f2.algebra, "d1"), 0) = S(1);
  return make_embedding(std::move(f1), std::move(f2), std::move(kb),
                        "su2xsu3_s1");
}

/// Diagonal SO(3) inside SU(3) x SU(3) (real antisymmetric matrices).
template <class S>
Embedding<S> make_su3xsu3_so3() {
  auto su3 = build_su<S>(3);
  Mat<S> sub = Mat<S>::Zero(8, 3);
  sub(label_index(su3.algebra, "a1_2"), 0) = S(1);
  sub(label_index(su3.algebra, "a1_3"), 1) = S(1);
  sub(label_index(su3.algebra, "a2_3"), 2) = S(1);
  return make_diagonal(su3, sub, "su3xsu3_so3");
}

/// Diagonal Sp(2) inside SU(4) x SU(4) (quaternionic embedding).
template <class S>
Embedding<S> make_su4xsu4_sp2() {
  auto su4 = build_su<S>(4);
  auto sp2 = build_sp<S>(2);
  Mat<S> sub(15, 10);
  for (int a = 0; a < 10; ++a) sub.col(a) = matrix_coordinates(su4, sp2.matrices[a]);
  return make_diagonal(su4, sub, "su4xsu4_sp2");
}

/// G2 inside SO(8) x SO(7), through G2 c so(7) and the corner so(7) c so(8).
template <class S>
Embedding<S> make_so8xso7_g2() {
  auto so8 = build_so<S>(8);
  auto so7 = build_so<S>(7);
  auto g2 = build_g2<S>();
  Mat<S> kb = Mat<S>::Zero(28 + 21, 14);
  for (int a = 0; a < 14; ++a) {
    kb.col(a).head(28) = matrix_coordinates(so8, corner_embed(g2.matrices[a], 8));
    kb.col(a).tail(21) = matrix_coordinates(so7, g2.matrices[a]);
  }
  return make_embedding(std::move(so8), std::move(so7), std::move(kb),
                        "so8xso7_g2");
}

/// SO(7) inside SU(7) x SO(8): real antisymmetric matrices on one side, the
/// corner embedding on the other.
template <class S>
Embedding<S> make_su7xso8_so7() {
  auto su7 = build_su<S>(7);
  auto so8 = build_so<S>(8);
  auto so7 = build_so<S>(7);
  Mat<S> kb = Mat<S>::Zero(48 + 28, 21);
  for (int a = 0; a < 21; ++a) {
    kb.col(a).head(48) = matrix_coordinates(su7, so7.matrices[a]);
    kb.col(a).tail(28) = matrix_coordinates(so8, corner_embed(so7.matrices[a], 8));
  }
  return make_embedding(std::move(su7), std::move(so8), std::move(kb),
                        "su7xso8_so7");
}

/// Sp(2) inside SO(10) x SU(4): the adjoint representation on one side (in a
/// basis of equal Killing norm, so that ad images are exactly antisymmetric),
/// the defining quaternionic embedding on the other.
template <class S>
Embedding<S> make_so10xsu4_sp2() {
  // Equal-norm basis of sp(2): every element has -Re tr(X^2) = 4, and the
  // basis is orthogonal for that pairing.
  std::vector<CMat<S>> eq;
  CMat<S> zero(2, 2);
  auto push_a = [&](bool imag, int s11, int s22, int s12, int s21) {
    CMat<S> A(2, 2);
    Mat<S>& part = imag ? A.im : A.re;
    part(0, 0) = S(s11);
    part(1, 1) = S(s22);
    part(0, 1) = S(s12);
    part(1, 0) = S(s21);
    eq.push_back(detail::sp_block(2, A, zero));
  };
  push_a(false, 0, 0, 1, -1);  // E12 - E21
  push_a(true, 0, 0, 1, 1);    // i(E12 + E21)
  push_a(true, 1, -1, 0, 0);   // i(E11 - E22)
  push_a(true, 1, 1, 0, 0);    // i(E11 + E22)
  auto push_b = [&](bool imag, int s11, int s22, int s12) {
    CMat<S> B(2, 2);
    Mat<S>& part = imag ? B.im : B.re;
    part(0, 0) = S(s11);
    part(1, 1) = S(s22);
    part(0, 1) = S(s12);
    part(1, 0) = S(s12);
    eq.push_back(detail::sp_block(2, zero, B));
  };
  for (int imag = 0; imag <= 1; ++imag) {
    push_b(imag, 1, 1, 0);   // E11 + E22
    push_b(imag, 1, -1, 0);  // E11 - E22
    push_b(imag, 0, 0, 1);   // E12 + E21
  }
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) {
      S v = -CMat<S>::trace_prod_re(eq[i], eq[j]);
      S want = i == j ? S(4) : S(0);
      if constexpr (scalar_traits<S>::exact) {
        if (v != want)
          throw VerificationError("so10xsu4_sp2: basis is not equal-norm");
      } else {
        if (std::abs(to_double(v - want)) > 1e-12)
          throw VerificationError("so10xsu4_sp2: basis is not equal-norm");
      }
    }

  // ad matrices in the equal-norm basis are antisymmetric, hence in so(10).
  auto c = detail::matrix_structure(eq);
  auto so10 = build_so<S>(10);
  auto su4 = build_su<S>(4);
  Mat<S> kb = Mat<S>::Zero(45 + 15, 10);
  for (int a = 0; a < 10; ++a) {
    Mat<S> ad = Mat<S>::Zero(10, 10);
    for (int b = 0; b < 10; ++b)
      for (const auto& [k, coef] : c[a][b]) ad(k, b) += coef;
    Mat<S> sym = ad + ad.transpose();
    bool skew = scalar_traits<S>::exact ? is_exactly_zero(sym)
                                        : max_abs<S>(sym) < 1e-12;
    if (!skew)
      throw VerificationError("so10xsu4_sp2: ad image is not antisymmetric");
    for (int j = 0; j < 10; ++j)
      for (int k = j + 1; k < 10; ++k)
        kb(so_basis_index(10, j, k), a) = ad(j, k);
    kb.col(a).tail(15) = matrix_coordinates(su4, eq[a]);
  }
  return make_embedding(std::move(so10), std::move(su4), std::move(kb),
                        "so10xsu4_sp2");
}

namespace detail {

/// Anti-Hermitian spin-j images of the su(2) basis {a1_2, s1_2, d1} built
/// from ladder matrices; module basis ordered by descending weight.
inline std::array<CMat<double>, 3> spin_su2(int twoj) {
  const int d = twoj + 1;
  const double j = twoj / 2.0;
  Mat<double> jp = Mat<double>::Zero(d, d);
  for (int r = 1; r < d; ++r) {
    double m = j - r;
    jp(r - 1, r) = std::sqrt(j * (j + 1) - m * (m + 1));
  }
  Mat<double> jm = jp.transpose();
  Mat<double> j3 = Mat<double>::Zero(d, d);
  for (int r = 0; r < d; ++r) j3(r, r) = j - r;
  Mat<double> z = Mat<double>::Zero(d, d);
  CMat<double> a(Mat<double>(jp - jm), z);        // rho(E12 - E21)
  CMat<double> s(z, Mat<double>(jp + jm));        // rho(i(E12 + E21))
  CMat<double> d1(z, Mat<double>(2.0 * j3));      // rho(i(E11 - E22))
  return {a, s, d1};
}

inline CMat<double> cmat_adjoint(const CMat<double>& x) {
  return {x.re.transpose(), Mat<double>(-x.im.transpose())};
}

/// Orthonormal basis of fixed points of v -> C conj(v), C e_r = (-1)^r
/// e_{d-1-r}, turning an integer-spin module real (columns of the result).
inline CMat<double> integer_spin_real_basis(int twoj) {
  const int d = twoj + 1;
  const int j = twoj / 2;
  CMat<double> u(d, d);
  const double rt = 1.0 / std::sqrt(2.0);
  int col = 0;
  for (int m = j; m >= 1; --m) {
    const int r = j - m, rm = j + m;
    const double sgn = m % 2 == 0 ? 1.0 : -1.0;
    u.re(r, col) = rt;
    u.re(rm, col) = sgn * rt;
    ++col;
    u.im(r, col) = rt;
    u.im(rm, col) = -sgn * rt;
    ++col;
  }
  u.re(j, col) = 1.0;
  return u;
}

/// Orthonormal basis pairing each half-integer weight vector with its
/// quaternionic partner, so conjugated matrices take the sp block form.
inline CMat<double> half_spin_symplectic_basis(int twoj) {
  const int d = twoj + 1;
  CMat<double> u(d, d);
  for (int k = 0; k < d / 2; ++k) {
    u.re(k, k) = 1.0;
    u.re(d - 1 - k, d / 2 + k) = k % 2 == 0 ? 1.0 : -1.0;
  }
  return u;
}

}  // namespace detail

/// Principal three-dimensional subalgebras: a spin-3 su(2) inside an adapted
/// G2 c so(7) (the stabilizer of its invariant 3-form) paired with a
/// spin-3/2 su(2) inside Sp(2).  Floating-point only.
template <class S>
Embedding<S> make_g2xsp2_su2() {
  if constexpr (scalar_traits<S>::exact) {
    throw UnsupportedSpaceError(
        "g2xsp2_su2: construction requires floating-point scalars");
  } else {
    // Spin-3 action on R^7 in a real orthonormal basis.
    auto rho7 = detail::spin_su2(6);
    CMat<double> u7 = detail::integer_spin_real_basis(6);
    CMat<double> ucheck = detail::cmat_adjoint(u7) * u7;
    ucheck.re -= Mat<double>::Identity(7, 7);
    if (max_abs<double>(ucheck.re) > 1e-12 || max_abs<double>(ucheck.im) > 1e-12)
      throw NumericalError("g2xsp2_su2: real basis is not orthonormal");
    std::array<Mat<double>, 3> gen7;
    for (int k = 0; k < 3; ++k) {
      CMat<double> g = detail::cmat_adjoint(u7) * rho7[k] * u7;
      if (max_abs<double>(g.im) > 1e-12 ||
          max_abs<double>(Mat<double>(g.re + g.re.transpose())) > 1e-12)
        throw NumericalError("g2xsp2_su2: spin-3 action is not real");
      gen7[k] = g.re;
    }

    // The su(2)-invariant line in Lambda^3 R^7 and its stabilizer.
    const int l3 = detail::triple_count(7);
    Mat<double> stacked(3 * l3, l3);
    for (int k = 0; k < 3; ++k)
      for (int t = 0; t < l3; ++t) {
        detail::ThreeFormCoeffs<double> unit{7, Vec<double>::Zero(l3)};
        unit.vals(t) = 1.0;
        stacked.col(t).segment(k * l3, l3) = detail::threeform_apply(gen7[k], unit);
      }
    Mat<double> line = kernel_basis(stacked);
    if (line.cols() != 1)
      throw VerificationError("g2xsp2_su2: invariant 3-form is not unique");
    detail::ThreeFormCoeffs<double> phi{7, Vec<double>(line.col(0) / line.col(0).norm())};
    BuiltAlgebra<double> g2 = threeform_stabilizer(phi, "g2", 14);

    // Spin-3/2 action on C^4 in a symplectic basis.
    auto rho4 = detail::spin_su2(3);
    CMat<double> u4 = detail::half_spin_symplectic_basis(3);
    auto sp2 = build_sp<double>(2);
    Mat<double> kb = Mat<double>::Zero(14 + 10, 3);
    for (int k = 0; k < 3; ++k) {
      kb.col(k).head(14) =
          matrix_coordinates(g2, CMat<double>(gen7[k], Mat<double>::Zero(7, 7)));
      CMat<double> x = detail::cmat_adjoint(u4) * rho4[k] * u4;
      CMat<double> dre(Mat<double>(x.re.bottomLeftCorner(2, 2) + x.re.topRightCorner(2, 2)),
                       Mat<double>(x.im.bottomLeftCorner(2, 2) - x.im.topRightCorner(2, 2)));
      CMat<double> dco(Mat<double>(x.re.bottomRightCorner(2, 2) - x.re.topLeftCorner(2, 2)),
                       Mat<double>(x.im.bottomRightCorner(2, 2) + x.im.topLeftCorner(2, 2)));
      if (max_abs<double>(dre.re) > 1e-10 || max_abs<double>(dre.im) > 1e-10 ||
          max_abs<double>(dco.re) > 1e-10 || max_abs<double>(dco.im) > 1e-10)
        throw NumericalError("g2xsp2_su2: spin-3/2 action is not symplectic");
      kb.col(k).tail(10) = matrix_coordinates(sp2, x);
    }
    return make_embedding(std::move(g2), std::move(sp2), std::move(kb),
                          "g2xsp2_su2");
  }
}

}  // namespace brf

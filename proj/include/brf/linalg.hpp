#pragma once

#include <Eigen/Dense>
#include <vector>

#include "brf/scalar.hpp"

namespace brf {

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

template <class S>
inline double max_abs(const Mat<S>& m) {
  double r = 0;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      r = std::max(r, std::abs(to_double(m(i, j))));
  return r;
}

template <class S>
inline bool is_exactly_zero(const Mat<S>& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (m(i, j) != S(0)) return false;
  return true;
}

/// Kernel basis of a matrix as columns.  Exact for rational scalars
/// (FullPivLU pivots on any nonzero entry when epsilon() == 0).  A trivial
/// kernel yields a matrix with zero columns, unlike Eigen's kernel() which
/// pads with one zero column.
template <class S>
inline Mat<S> kernel_basis(const Mat<S>& m) {
  Eigen::FullPivLU<Mat<S>> lu(m);
  if (lu.rank() == m.cols()) return Mat<S>::Zero(m.cols(), 0);
  return lu.kernel();
}

template <class S>
inline Eigen::Index rank_of(const Mat<S>& m) {
  Eigen::FullPivLU<Mat<S>> lu(m);
  return lu.rank();
}

/// Solve V x = w for a full-column-rank V; verifies the solution lies in the
/// span (exactly for rational scalars, within tol otherwise).
template <class S>
inline Vec<S> coords_in_span(const Mat<S>& V, const Vec<S>& w,
                             double tol = 1e-9) {
  Eigen::FullPivLU<Mat<S>> lu(V);
  Vec<S> x = lu.solve(w);
  Mat<S> resid = V * x - w;
  if constexpr (scalar_traits<S>::exact) {
    if (!is_exactly_zero(resid))
      throw NumericalError("coords_in_span: vector not in span (exact)");
  } else {
    if (max_abs<S>(resid) > tol)
      throw NumericalError("coords_in_span: vector not in span");
  }
  return x;
}

/// Gram-Schmidt against a symmetric positive-definite bilinear form given by
/// its matrix `gram_form` on the ambient coordinates.  Columns of `vectors`
/// are orthonormalized in order; returns the orthonormal columns.
template <class S>
inline Mat<S> orthonormalize(const Mat<S>& vectors, const Mat<S>& gram_form) {
  Mat<S> out(vectors.rows(), vectors.cols());
  Eigen::Index kept = 0;
  for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
    Vec<S> v = vectors.col(j);
    for (Eigen::Index i = 0; i < kept; ++i) {
      S proj = out.col(i).dot(gram_form * v);
      v -= proj * out.col(i);
    }
    S n2 = v.dot(gram_form * v);
    if (scalar_traits<S>::is_zero(n2, 1e-20))
      throw NumericalError("orthonormalize: dependent or null vector");
    out.col(kept++) = v / scalar_traits<S>::sqrt(n2);
  }
  return out.leftCols(kept);
}

/// Complex matrix stored as a pair of real/rational parts, so that exact
/// scalars avoid std::complex.
template <class S>
struct CMat {
  Mat<S> re, im;

  CMat() = default;
  CMat(Eigen::Index r, Eigen::Index c)
      : re(Mat<S>::Zero(r, c)), im(Mat<S>::Zero(r, c)) {}
  CMat(Mat<S> r, Mat<S> i) : re(std::move(r)), im(std::move(i)) {}

  Eigen::Index rows() const { return re.rows(); }
  Eigen::Index cols() const { return re.cols(); }

  CMat operator+(const CMat& o) const { return {re + o.re, im + o.im}; }
  CMat operator-(const CMat& o) const { return {re - o.re, im - o.im}; }
  CMat operator*(const CMat& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  CMat scaled(const S& s) const { return {re * s, im * s}; }

  static CMat commutator(const CMat& a, const CMat& b) {
    return a * b - b * a;
  }

  /// Real part of tr(A B).
  static S trace_prod_re(const CMat& a, const CMat& b) {
    return (a.re * b.re - a.im * b.im).trace();
  }

  bool is_zero() const {
    return is_exactly_zero(re) && is_exactly_zero(im);
  }
};

}  // namespace brf

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "brf/aligned.hpp"
#include "brf/errors.hpp"
#include "brf/lie_algebra.hpp"
#include "brf/linalg.hpp"

namespace brf {

/// Dense order-3 tensor with all indices running over a frame of size n.
template <class S>
struct ThreeTensor {
  int n = 0;
  std::vector<S> v;

  explicit ThreeTensor(int n_) : n(n_), v(static_cast<std::size_t>(n_) * n_ * n_, S(0)) {}

  S& at(int a, int b, int c) { return v[(static_cast<std::size_t>(a) * n + b) * n + c]; }
  const S& at(int a, int b, int c) const {
    return v[(static_cast<std::size_t>(a) * n + b) * n + c];
  }

  /// Largest absolute entry.
  double max_entry() const {
    double m = 0;
    for (const auto& x : v) m = std::max(m, std::abs(to_double(x)));
    return m;
  }
};

/// Structure data of a reductive homogeneous space expressed in a fixed
/// g_b-orthonormal frame of the horizontal space p and an auxiliary
/// orthonormal frame of the isotropy complement k.
///
/// t0(a,b,c) holds g_b([e_a, e_b], e_c) and k0(a,b,g) holds the coordinates
/// of the k-part of [e_a, e_b] in the k-frame, so brackets decompose as
/// [e_a, e_b] = sum_c t0(a,b,c) e_c + (k-part).
template <class S>
struct ReductiveGeometry {
  int np = 0;
  int nk = 0;
  std::vector<S> t0;
  std::vector<S> k0;
  Mat<S> killing_p;  ///< Killing form of g restricted to the p-frame.

  S t(int a, int b, int c) const { return t0[(static_cast<std::size_t>(a) * np + b) * np + c]; }
  S k(int a, int b, int g) const { return k0[(static_cast<std::size_t>(a) * np + b) * nk + g]; }
};

/// Builds the frame structure tensor from a g_b-orthonormal p-frame and a
/// g_b-orthonormal k-frame (columns in ambient coordinates).
template <class S>
ReductiveGeometry<S> reductive_geometry(const StructureAlgebra<S>& g, const Mat<S>& p_frame,
                                        const Mat<S>& k_frame, const Mat<S>& gb) {
  ReductiveGeometry<S> geo;
  geo.np = static_cast<int>(p_frame.cols());
  geo.nk = static_cast<int>(k_frame.cols());
  geo.t0.assign(static_cast<std::size_t>(geo.np) * geo.np * geo.np, S(0));
  geo.k0.assign(static_cast<std::size_t>(geo.np) * geo.np * geo.nk, S(0));
  const Mat<S> gb_p = gb * p_frame;
  const Mat<S> gb_k = gb * k_frame;
  for (int a = 0; a < geo.np; ++a) {
    for (int b = a + 1; b < geo.np; ++b) {
      const Vec<S> w = g.bracket(p_frame.col(a), p_frame.col(b));
      for (int c = 0; c < geo.np; ++c) {
        const S val = w.dot(gb_p.col(c));
        geo.t0[(static_cast<std::size_t>(a) * geo.np + b) * geo.np + c] = val;
        geo.t0[(static_cast<std::size_t>(b) * geo.np + a) * geo.np + c] = -val;
      }
      for (int c = 0; c < geo.nk; ++c) {
        const S val = w.dot(gb_k.col(c));
        geo.k0[(static_cast<std::size_t>(a) * geo.np + b) * geo.nk + c] = val;
        geo.k0[(static_cast<std::size_t>(b) * geo.np + a) * geo.nk + c] = -val;
      }
    }
  }
  geo.killing_p = p_frame.transpose() * g.killing() * p_frame;
  return geo;
}

/// Builds the frame geometry of an aligned space from its adapted frame.
template <class S>
ReductiveGeometry<S> reductive_geometry(const AlignedSpace<S>& sp, const AdaptedFrame<S>& fr) {
  return reductive_geometry(sp.g(), fr.p_frame(), fr.e4, fr.gb);
}

/// Per-frame-vector coefficients of the diagonal metric (x1, x2, x3)
/// relative to g_b: x1 on p1, x2 on p2, x3 on p3.
template <class S>
Vec<S> metric_coefficients(const AdaptedFrame<S>& fr, S x1, S x2, S x3) {
  Vec<S> x(fr.n1() + fr.n2() + fr.n3());
  for (int i = 0; i < fr.n1(); ++i) x(i) = x1;
  for (int i = 0; i < fr.n2(); ++i) x(fr.n1() + i) = x2;
  for (int i = 0; i < fr.n3(); ++i) x(fr.n1() + fr.n2() + i) = x3;
  return x;
}

/// Quadratic form q(v) = -1/2 sum_{ij} (x_j/x_i) <[v, e_i], e_j>^2
///                + 1/4 sum_{ij} (1/(x_i x_j)) <[e_i, e_j], v>_g^2
/// whose polarization, minus half the Killing form, is the Ricci form of the
/// metric with g_b-frame coefficients x.
template <class S>
S ricci_quadratic(const ReductiveGeometry<S>& geo, const Vec<S>& x, const Vec<S>& v) {
  const int n = geo.np;
  S term1(0), term2(0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      S u(0), w(0);
      for (int a = 0; a < n; ++a) u += v(a) * geo.t(a, i, j);
      for (int c = 0; c < n; ++c) w += geo.t(i, j, c) * x(c) * v(c);
      term1 += (x(j) / x(i)) * u * u;
      term2 += (S(1) / (x(i) * x(j))) * w * w;
    }
  }
  return -term1 / S(2) + term2 / S(4);
}

/// Ricci curvature of the diagonal metric as a bilinear form on the frame,
/// ric(e_a, e_b). Evaluated by direct contraction of the structure tensor;
/// ricci_quadratic provides an independent scalar cross-check.
template <class S>
Mat<S> ricci_bruteforce(const ReductiveGeometry<S>& geo, const Vec<S>& x) {
  const int n = geo.np;
  Mat<S> m = Mat<S>::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const S w1 = x(j) / x(i);
      const S w2 = S(1) / (x(i) * x(j));
      for (int a = 0; a < n; ++a) {
        const S tia = geo.t(a, i, j);
        const S tij = geo.t(i, j, a) * x(a);
        if (tia == S(0) && tij == S(0)) continue;
        for (int b = a; b < n; ++b) {
          const S val = -w1 * tia * geo.t(b, i, j) / S(2) +
                        w2 * tij * geo.t(i, j, b) * x(b) / S(4);
          m(a, b) += val;
        }
      }
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) m(b, a) = m(a, b);
  return m - geo.killing_p / S(2);
}

/// Pointwise norm-square of a 3-form with respect to the diagonal metric,
/// as a bilinear form: H2(e_k, e_l) = sum_{ij} H(k,i,j) H(l,i,j) / (x_i x_j).
template <class S>
Mat<S> h_squared_bruteforce(const ReductiveGeometry<S>& geo, const ThreeTensor<S>& h,
                            const Vec<S>& x) {
  const int n = geo.np;
  Mat<S> m = Mat<S>::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const S w = S(1) / (x(i) * x(j));
      for (int k = 0; k < n; ++k) {
        const S hk = h.at(k, i, j);
        if (hk == S(0)) continue;
        for (int l = k; l < n; ++l) m(k, l) += w * hk * h.at(l, i, j);
      }
    }
  }
  for (int k = 0; k < n; ++k)
    for (int l = k + 1; l < n; ++l) m(l, k) = m(k, l);
  return m;
}

/// Torsion three-form H_Q of an aligned space in the adapted frame:
/// H_Q(X,Y,Z) = Q([X,Y], Z) + Q([X,Y]_k, Z) - Q([X,Z]_k, Y) + Q([Y,Z]_k, X)
/// with the k-projection taken g_b-orthogonally.
template <class S>
ThreeTensor<S> hq_tensor(const AlignedSpace<S>& sp, const AdaptedFrame<S>& fr) {
  const Mat<S> p = fr.p_frame();
  const int n = static_cast<int>(p.cols());
  const int nk = static_cast<int>(fr.e4.cols());
  const Mat<S> q_p = fr.q0 * p;
  const Mat<S> gb_k = fr.gb * fr.e4;
  const Mat<S> q_k = fr.q0 * fr.e4;

  // qfull[(a,b,c)] = Q([e_a,e_b], e_c), qkpart[(a,b,c)] = Q([e_a,e_b]_k, e_c)
  ThreeTensor<S> qfull(n), qkpart(n);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const Vec<S> w = sp.g().bracket(p.col(a), p.col(b));
      Vec<S> kc(nk);
      for (int g = 0; g < nk; ++g) kc(g) = w.dot(gb_k.col(g));
      for (int c = 0; c < n; ++c) {
        const S qf = w.dot(q_p.col(c));
        S qk(0);
        for (int g = 0; g < nk; ++g) qk += kc(g) * p.col(c).dot(q_k.col(g));
        qfull.at(a, b, c) = qf;
        qfull.at(b, a, c) = -qf;
        qkpart.at(a, b, c) = qk;
        qkpart.at(b, a, c) = -qk;
      }
    }
  }
  ThreeTensor<S> h(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        h.at(a, b, c) =
            qfull.at(a, b, c) + qkpart.at(a, b, c) - qkpart.at(a, c, b) + qkpart.at(b, c, a);
  return h;
}

/// Largest violation of total antisymmetry of h.
template <class S>
double antisymmetry_defect(const ThreeTensor<S>& h) {
  double m = 0;
  for (int a = 0; a < h.n; ++a)
    for (int b = 0; b < h.n; ++b)
      for (int c = 0; c < h.n; ++c) {
        m = std::max(m, std::abs(to_double(h.at(a, b, c) + h.at(b, a, c))));
        m = std::max(m, std::abs(to_double(h.at(a, b, c) + h.at(a, c, b))));
      }
  return m;
}

/// Nomizu connection coefficients of the diagonal metric:
/// L(a,b,c) = g(Lambda(e_a) e_b, e_c)
///          = (x_c T(a,b,c) + x_b T(c,a,b) + x_a T(c,b,a)) / 2.
template <class S>
ThreeTensor<S> nomizu_coefficients(const ReductiveGeometry<S>& geo, const Vec<S>& x) {
  ThreeTensor<S> l(geo.np);
  for (int a = 0; a < geo.np; ++a)
    for (int b = 0; b < geo.np; ++b)
      for (int c = 0; c < geo.np; ++c)
        l.at(a, b, c) =
            (x(c) * geo.t(a, b, c) + x(b) * geo.t(c, a, b) + x(a) * geo.t(c, b, a)) / S(2);
  return l;
}

/// Codifferential of a 3-form with respect to the diagonal metric, as the
/// antisymmetric matrix (delta H)(e_a, e_b).
template <class S>
Mat<S> codifferential(const ReductiveGeometry<S>& geo, const ThreeTensor<S>& h, const Vec<S>& x) {
  const int n = geo.np;
  const ThreeTensor<S> l = nomizu_coefficients(geo, x);
  // lam(a): matrix of Lambda(e_a) in the frame, entry (c,b) = L(a,b,c)/x_c.
  std::vector<Mat<S>> lam(n, Mat<S>::Zero(n, n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) lam[a](c, b) = l.at(a, b, c) / x(c);

  Mat<S> d = Mat<S>::Zero(n, n);
  for (int y = 0; y < n; ++y) {
    for (int z = y + 1; z < n; ++z) {
      S acc(0);
      for (int e = 0; e < n; ++e) {
        // (nabla_e H)(e, y, z) expanded through the connection endomorphism.
        S val(0);
        for (int m = 0; m < n; ++m) {
          val -= lam[e](m, e) * h.at(m, y, z);
          val -= lam[e](m, y) * h.at(e, m, z);
          val -= lam[e](m, z) * h.at(e, y, m);
        }
        acc += val / x(e);
      }
      d(y, z) = -acc;
      d(z, y) = acc;
    }
  }
  return d;
}

/// Largest component of the exterior derivative of an invariant 3-form,
/// dH(e_a,e_b,e_c,e_d) = sum_{i<j} (-1)^{i+j} H([e_i, e_j]_p, ...remaining).
template <class S>
double exterior_derivative_max(const ReductiveGeometry<S>& geo, const ThreeTensor<S>& h) {
  const int n = geo.np;
  // hb(a,b;c,d) = H([e_a, e_b]_p, e_c, e_d) contracted through the frame.
  const auto hbracket = [&](int a, int b, int c, int d) {
    S acc(0);
    for (int m = 0; m < n; ++m) {
      const S t = geo.t(a, b, m);
      if (t != S(0)) acc += t * h.at(m, c, d);
    }
    return acc;
  };
  double worst = 0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c)
        for (int d = c + 1; d < n; ++d) {
          const S val = hbracket(a, b, c, d) - hbracket(a, c, b, d) + hbracket(a, d, b, c) +
                        hbracket(b, c, a, d) - hbracket(b, d, a, c) + hbracket(c, d, a, b);
          worst = std::max(worst, std::abs(to_double(val)));
        }
  return worst;
}

/// Largest g-orthonormal component of dH for the diagonal metric with frame
/// coefficients x, i.e. the raw components divided by sqrt(x_a x_b x_c x_d).
template <class S>
double exterior_derivative_max(const ReductiveGeometry<S>& geo, const ThreeTensor<S>& h,
                               const Vec<S>& x) {
  const int n = geo.np;
  const auto hbracket = [&](int a, int b, int c, int d) {
    S acc(0);
    for (int m = 0; m < n; ++m) {
      const S t = geo.t(a, b, m);
      if (t != S(0)) acc += t * h.at(m, c, d);
    }
    return acc;
  };
  double worst = 0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c)
        for (int d = c + 1; d < n; ++d) {
          const S val = hbracket(a, b, c, d) - hbracket(a, c, b, d) + hbracket(a, d, b, c) +
                        hbracket(b, c, a, d) - hbracket(b, d, a, c) + hbracket(c, d, a, b);
          const double s = std::sqrt(
              to_double(x(a)) * to_double(x(b)) * to_double(x(c)) * to_double(x(d)));
          worst = std::max(worst, std::abs(to_double(val)) / s);
        }
  return worst;
}

}  // namespace brf

#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "brf/homogeneous.hpp"
#include "brf/lie_algebra.hpp"

namespace brf {

/// Structure data of a compact Lie group with a bi-invariant metric: the
/// tensor t of the underlying geometry holds the structural constants
/// c_ij^k = g_b([e_i, e_j], e_k) of a g_b-orthonormal basis, and basis maps
/// frame coordinates back to algebra coordinates.
template <class S>
struct GroupGeometry {
  ReductiveGeometry<S> geo;
  Mat<S> basis;
};

/// Builds the group geometry for an arbitrary bi-invariant metric given in
/// algebra coordinates; a metric that is not ad-invariant is rejected.
template <class S>
GroupGeometry<S> group_geometry(const StructureAlgebra<S>& alg, const Mat<S>& gb) {
  const int n = alg.dim();
  GroupGeometry<S> out;
  out.basis = orthonormalize(Mat<S>(Mat<S>::Identity(n, n)), gb);
  if (out.basis.cols() != n)
    throw ParameterError("group_geometry: metric is degenerate");
  const Mat<S> empty_k(n, 0);
  out.geo = reductive_geometry(alg, out.basis, empty_k, gb);
  ThreeTensor<S> t(n);
  t.v = out.geo.t0;
  if (antisymmetry_defect(t) > 1e-10)
    throw ParameterError("group_geometry: metric is not bi-invariant");
  return out;
}

/// Convenience builder for g_b = z_1 (-B)|_{ideal 1} + ... on a semisimple
/// algebra whose Killing form is block diagonal across ideal_ranges.
template <class S>
GroupGeometry<S> group_geometry(const StructureAlgebra<S>& alg,
                                const std::vector<S>& ideal_scales) {
  const auto& ranges = alg.ideal_ranges();
  if (ideal_scales.size() != ranges.size())
    throw ParameterError("group_geometry: one scale per ideal is required");
  Mat<S> gb = Mat<S>::Zero(alg.dim(), alg.dim());
  for (std::size_t i = 0; i < ranges.size(); ++i) {
    const auto [lo, hi] = ranges[i];
    gb.block(lo, lo, hi - lo, hi - lo) =
        -ideal_scales[i] * alg.killing().block(lo, lo, hi - lo, hi - lo);
  }
  return group_geometry(alg, gb);
}

/// Cartan 3-form H_Q(a,b,c) = Q([e_a,e_b],e_c) for a bi-invariant form Q
/// given in frame coordinates.  With Q = g_b (the identity in the frame)
/// this is H_b, whose components are the structural constants themselves.
template <class S>
ThreeTensor<S> cartan_form(const GroupGeometry<S>& gg, const Mat<S>& q_frame) {
  const int n = gg.geo.np;
  ThreeTensor<S> h(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        S acc(0);
        for (int m = 0; m < n; ++m) acc += gg.geo.t(a, b, m) * q_frame(m, c);
        h.v[(static_cast<std::size_t>(a) * n + b) * n + c] = acc;
      }
  return h;
}

template <class S>
ThreeTensor<S> cartan_form(const GroupGeometry<S>& gg) {
  ThreeTensor<S> h(gg.geo.np);
  h.v = gg.geo.t0;
  return h;
}

/// (H_b)^2_g(e_k,e_l) = sum_ij c_ij^k c_ij^l / (x_i x_j).
template <class S>
Mat<S> hb_squared(const GroupGeometry<S>& gg, const Vec<S>& x) {
  const int n = gg.geo.np;
  Mat<S> m = Mat<S>::Zero(n, n);
  for (int k = 0; k < n; ++k)
    for (int l = k; l < n; ++l) {
      S acc(0);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const S ck = gg.geo.t(i, j, k);
          if (ck == S(0)) continue;
          acc += ck * gg.geo.t(i, j, l) / (x(i) * x(j));
        }
      m(k, l) = acc;
      m(l, k) = acc;
    }
  return m;
}

/// ricci(g)(e_k,e_l) = -1/2 B(e_k,e_l)
///                     - 1/4 sum_ij c_ij^k c_ij^l (x_i^2+x_j^2-x_k x_l)/(x_i x_j)
/// for the diagonal left-invariant metric g = (x_1,...,x_n)_{g_b}.
template <class S>
Mat<S> ricci_group(const GroupGeometry<S>& gg, const Vec<S>& x) {
  const int n = gg.geo.np;
  Mat<S> m = -gg.geo.killing_p / S(2);
  for (int k = 0; k < n; ++k)
    for (int l = k; l < n; ++l) {
      S acc(0);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const S ck = gg.geo.t(i, j, k);
          if (ck == S(0)) continue;
          acc += ck * gg.geo.t(i, j, l) * (x(i) * x(i) + x(j) * x(j) - x(k) * x(l)) /
                 (x(i) * x(j));
        }
      m(k, l) -= acc / S(4);
      if (l != k) m(l, k) = m(k, l);
    }
  return m;
}

/// Left-hand sides of the condition ricci(g) = 1/4 (H_b)^2_g, assembled as
/// E_kl = sum_ij c_ij^k c_ij^l ((x_i-x_j)^2 - x_k x_l + 1)/(x_i x_j); the
/// three formulas above tie together as ricci - 1/4 (H_b)^2 = -1/4 E.
template <class S>
Mat<S> brf_group_equations(const GroupGeometry<S>& gg, const Vec<S>& x) {
  const int n = gg.geo.np;
  Mat<S> m = Mat<S>::Zero(n, n);
  for (int k = 0; k < n; ++k)
    for (int l = k; l < n; ++l) {
      S acc(0);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const S ck = gg.geo.t(i, j, k);
          if (ck == S(0)) continue;
          const S d = x(i) - x(j);
          acc += ck * gg.geo.t(i, j, l) * (d * d - x(k) * x(l) + S(1)) /
                 (x(i) * x(j));
        }
      m(k, l) = acc;
      m(l, k) = acc;
    }
  return m;
}

/// Outcome of the rigidity search: every converged multistart point, after
/// deduplication, together with the ordering certificate of each solution
/// (all x_k >= 1 and x_max^2 - 1 <= (x_min - x_max)^2, which jointly force
/// x = (1,...,1)).
struct RigidityReport {
  int trials = 0;
  int converged = 0;
  std::vector<Vec<double>> solutions;
  bool degenerate_abelian = false;
  bool hull_certified = true;
  double max_deviation_from_ones = 0;
};

inline RigidityReport verify_rigidity(const GroupGeometry<double>& gg, int trials,
                                      unsigned seed) {
  RigidityReport rep;
  rep.trials = trials;
  const int n = gg.geo.np;
  double tmax = 0;
  for (double t : gg.geo.t0) tmax = std::max(tmax, std::abs(t));
  if (tmax == 0) {
    rep.degenerate_abelian = true;
    return rep;
  }

  const auto equations = [&](const Vec<double>& x) {
    const Mat<double> e = brf_group_equations(gg, x);
    Vec<double> out(n * (n + 1) / 2);
    int at = 0;
    for (int k = 0; k < n; ++k)
      for (int l = k; l < n; ++l) out(at++) = e(k, l);
    return out;
  };

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> logbox(std::log(0.05), std::log(20.0));
  for (int trial = 0; trial < trials; ++trial) {
    Vec<double> u(n);
    for (int i = 0; i < n; ++i) u(i) = logbox(rng);
    Vec<double> x = u.array().exp().matrix();
    bool converged = false;
    double mu = 1e-3;
    for (int it = 0; it < 400; ++it) {
      const Vec<double> e = equations(x);
      if (!e.allFinite()) break;
      if (e.lpNorm<Eigen::Infinity>() < 1e-11) {
        converged = true;
        break;
      }
      Mat<double> jac(e.size(), n);
      for (int j = 0; j < n; ++j) {
        const double h = 1e-7 * std::max(1.0, std::abs(x(j)));
        Vec<double> xp = x, xm = x;
        xp(j) += h;
        xm(j) -= h;
        jac.col(j) = x(j) * (equations(xp) - equations(xm)) / (2 * h);
      }
      const Mat<double> jtj = jac.transpose() * jac;
      const Vec<double> grad = jac.transpose() * e;
      bool moved = false;
      for (int attempt = 0; attempt < 40 && mu < 1e14; ++attempt) {
        Mat<double> damped = jtj;
        for (int j = 0; j < n; ++j)
          damped(j, j) += mu * std::max(jtj(j, j), 1e-12);
        const Vec<double> du = damped.ldlt().solve(Vec<double>(-grad));
        const Vec<double> ucand = u + du;
        if (ucand.allFinite() && ucand.lpNorm<Eigen::Infinity>() < 60.0) {
          const Vec<double> xcand = ucand.array().exp().matrix();
          const Vec<double> ecand = equations(xcand);
          if (ecand.allFinite() && ecand.squaredNorm() < e.squaredNorm()) {
            u = ucand;
            x = xcand;
            mu = std::max(mu * 0.3, 1e-12);
            moved = true;
            break;
          }
        }
        mu *= 3;
      }
      if (!moved) break;
    }
    if (!converged) continue;
    ++rep.converged;
    bool seen = false;
    for (const auto& s : rep.solutions)
      if ((s - x).lpNorm<Eigen::Infinity>() < 1e-6 * std::max(1.0, s.lpNorm<Eigen::Infinity>())) {
        seen = true;
        break;
      }
    if (seen) continue;
    rep.solutions.push_back(x);
    Vec<double> sorted = x;
    std::sort(sorted.data(), sorted.data() + n);
    const double lo = sorted(0), hi = sorted(n - 1);
    rep.hull_certified = rep.hull_certified && lo >= 1 - 1e-7 &&
                         hi * hi - 1 <= (lo - hi) * (lo - hi) + 1e-7;
    for (int i = 0; i < n; ++i)
      rep.max_deviation_from_ones =
          std::max(rep.max_deviation_from_ones, std::abs(x(i) - 1));
  }
  return rep;
}

}  // namespace brf

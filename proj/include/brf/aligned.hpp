#pragma once

#include <string>
#include <utility>
#include <vector>

#include "brf/embeddings.hpp"

namespace brf {

/// z1-dependent scalar constants of the normalized metric section: the
/// normalization fixes z2 = 1/(c1 - 1), y1 = 1 and y2 = -1/(c1 - 1), which
/// makes Q vanish on k x k and collapses A3 to -z1.
template <class S>
struct SectionConstants {
  S c1, c2, z1, z2, y1, y2, A3, B3, B4, C3;
};

template <class S>
SectionConstants<S> section_constants(const S& c1, const S& z1) {
  SectionConstants<S> k;
  k.c1 = c1;
  k.c2 = c1 / (c1 - S(1));
  k.z1 = z1;
  k.z2 = S(1) / (c1 - S(1));
  k.y1 = S(1);
  k.y2 = S(-1) / (c1 - S(1));
  k.A3 = -(k.c2 * z1) / (c1 * k.z2);
  k.B3 = z1 / c1 + k.A3 * k.A3 * k.z2 / k.c2;
  k.B4 = z1 / c1 + k.z2 / k.c2;
  k.C3 = k.y1 / c1 + k.A3 * k.y2 / k.c2;
  return k;
}

/// One summand of k = k_0 + k_1 + ... + k_t: basis columns in k-coordinates
/// and the ratio lambda with B_k = lambda * B_g on the summand (0 on the
/// center).
template <class S>
struct IdealComponent {
  Mat<S> basis;
  S lambda;
};

namespace detail {

/// Entrywise ratio r with A = r * B; verifies proportionality.
template <class S>
S proportionality_ratio(const Mat<S>& A, const Mat<S>& B,
                        const std::string& what) {
  int i0 = 0, j0 = 0;
  double best = -1.0;
  for (int i = 0; i < B.rows(); ++i)
    for (int j = 0; j < B.cols(); ++j)
      if (std::abs(to_double(B(i, j))) > best) {
        best = std::abs(to_double(B(i, j)));
        i0 = i;
        j0 = j;
      }
  if (best == 0.0)
    throw UnsupportedSpaceError(what + ": reference form vanishes");
  S r = A(i0, j0) / B(i0, j0);
  Mat<S> resid = A - r * B;
  if constexpr (scalar_traits<S>::exact) {
    if (!is_exactly_zero(resid))
      throw UnsupportedSpaceError(what + ": forms are not proportional");
  } else {
    double scale = std::max(1.0, max_abs<S>(Mat<S>(r * B)));
    if (max_abs<S>(resid) > 1e-9 * scale)
      throw UnsupportedSpaceError(what + ": forms are not proportional");
  }
  return r;
}

/// Smallest ideal of k containing v: bracket closure of span{v}.
template <class S>
Mat<S> ideal_closure(const StructureAlgebra<S>& k, const Vec<S>& v) {
  const int n = k.dim();
  Mat<S> span(n, 1);
  span.col(0) = v;
  if constexpr (!scalar_traits<S>::exact) {
    span.col(0) /= std::sqrt(to_double(v.dot(v)));
  }
  for (int head = 0; head < span.cols(); ++head) {
    for (int i = 0; i < n; ++i) {
      Vec<S> e = Vec<S>::Zero(n);
      e(i) = S(1);
      Vec<S> w = k.bracket(e, span.col(head));
      Mat<S> aug(n, span.cols() + 1);
      aug.leftCols(span.cols()) = span;
      aug.col(span.cols()) = w;
      if (rank_of(aug) > span.cols()) {
        if constexpr (!scalar_traits<S>::exact) {
          aug.col(span.cols()) /= std::sqrt(to_double(w.dot(w)));
        }
        span = std::move(aug);
      }
    }
  }
  return span;
}

}  // namespace detail

/// Splits k into its center followed by B_g-orthogonal ideals, each carrying
/// a well-defined Killing ratio lambda.  bg_k is B_g restricted to k in the
/// same basis the structure constants refer to.
template <class S>
std::vector<IdealComponent<S>> decompose_ideals(const StructureAlgebra<S>& k,
                                                const Mat<S>& bg_k) {
  const int n = k.dim();
  std::vector<IdealComponent<S>> out;
  Mat<S> center = kernel_basis(k.killing());
  out.push_back({center, S(0)});
  if (center.cols() == n) return out;

  Mat<S> rem;
  if (center.cols() == 0) {
    rem = Mat<S>::Identity(n, n);
  } else {
    rem = kernel_basis(Mat<S>(center.transpose() * bg_k));
  }
  while (rem.cols() > 0) {
    Mat<S> best;
    for (int j = 0; j < rem.cols(); ++j) {
      Mat<S> cand = detail::ideal_closure(k, Vec<S>(rem.col(j)));
      if (best.cols() == 0 || cand.cols() < best.cols()) best = cand;
      if (best.cols() == 1) break;
    }
    // Killing ratio on the component certifies the split.
    Mat<S> kk = best.transpose() * k.killing() * best;
    Mat<S> bg = best.transpose() * bg_k * best;
    S lambda = detail::proportionality_ratio(kk, bg, "ideal decomposition");
    out.push_back({best, lambda});
    if (best.cols() == rem.cols()) break;
    rem = Mat<S>(rem * kernel_basis(Mat<S>(best.transpose() * bg_k * rem)));
  }

  // Cross brackets between distinct components must vanish.
  int total = 0;
  for (const auto& comp : out) total += static_cast<int>(comp.basis.cols());
  if (total != n)
    throw UnsupportedSpaceError("ideal decomposition: components do not fill k");
  for (size_t a = 0; a + 1 < out.size(); ++a)
    for (size_t b = a + 1; b < out.size(); ++b)
      for (Eigen::Index i = 0; i < out[a].basis.cols(); ++i)
        for (Eigen::Index j = 0; j < out[b].basis.cols(); ++j) {
          Vec<S> w = k.bracket(out[a].basis.col(i), out[b].basis.col(j));
          bool zero = scalar_traits<S>::exact ? is_exactly_zero(Mat<S>(w))
                                              : max_abs<S>(Mat<S>(w)) < 1e-10;
          if (!zero)
            throw UnsupportedSpaceError(
                "ideal decomposition: components are not commuting ideals");
        }
  return out;
}

/// Certificate of the alignment checks, kept for reporting.
template <class S>
struct AlignmentCertificate {
  S c1, c2;
  bool swapped = false;
  int center_dim = 0;
  std::vector<S> lambdas;  // per non-central ideal
};

/// An aligned homogeneous space: two compact factors, a common subalgebra k
/// with B_{g_i} = (1/c_i) B_g on k, the ideal split of k, the reductive
/// modules p1, p2, and the isotropy Casimir operators.
template <class S>
class AlignedSpace {
public:
  static AlignedSpace build(Embedding<S> emb) {
    AlignedSpace sp(std::move(emb), false);
    if (needs_swap(sp.c1_, sp.c2_)) {
      AlignedSpace flipped(swap_factors(sp.emb_), true);
      return flipped;
    }
    return sp;
  }

  const Embedding<S>& embedding() const { return emb_; }
  const StructureAlgebra<S>& g() const { return emb_.g; }
  const StructureAlgebra<S>& k() const { return k_; }
  const std::string& name() const { return emb_.name; }
  bool swapped() const { return swapped_; }

  const S& c1() const { return c1_; }
  const S& c2() const { return c2_; }
  const std::vector<IdealComponent<S>>& ideals() const { return ideals_; }
  int center_dim() const { return static_cast<int>(ideals_[0].basis.cols()); }

  int dim_g() const { return emb_.g.dim(); }
  int dim_factor1() const { return emb_.factor1.algebra.dim(); }
  int dim_factor2() const { return emb_.factor2.algebra.dim(); }
  int dim_k() const { return k_.dim(); }
  int dim_p1() const { return static_cast<int>(p1_.cols()); }
  int dim_p2() const { return static_cast<int>(p2_.cols()); }
  int dim_m() const { return dim_p1() + dim_p2() + dim_k(); }

  /// Bases in direct-sum coordinates (columns).
  const Mat<S>& k_basis() const { return emb_.k_basis; }
  const Mat<S>& p1_basis() const { return p1_; }
  const Mat<S>& p2_basis() const { return p2_; }

  /// Inner product <.,.> = -B_g restricted to k (basis of k_basis columns).
  const Mat<S>& ip_k() const { return ip_k_; }

  /// Isotropy Casimir operators on p1 and p2, with respect to -B_{g_i}
  /// restricted to pi_i(k); matrices in the p1/p2 basis coordinates.
  const Mat<S>& cas1() const { return cas1_; }
  const Mat<S>& cas2() const { return cas2_; }
  bool cas1_scalar() const { return cas1_scalar_; }
  bool cas2_scalar() const { return cas2_scalar_; }
  /// Scalar Casimir values; only meaningful when the matching flag is set.
  const S& kappa1() const { return kappa1_; }
  const S& kappa2() const { return kappa2_; }

  SectionConstants<S> constants(const S& z1) const {
    return section_constants(c1_, z1);
  }

  AlignmentCertificate<S> certificate() const {
    AlignmentCertificate<S> cert;
    cert.c1 = c1_;
    cert.c2 = c2_;
    cert.swapped = swapped_;
    cert.center_dim = center_dim();
    for (size_t l = 1; l < ideals_.size(); ++l)
      cert.lambdas.push_back(ideals_[l].lambda);
    return cert;
  }

  /// Casimir of the isotropy action of k on the module spanned by P, with
  /// respect to the given inner product on k (in k_basis coordinates).
  Mat<S> module_casimir(const Mat<S>& P, const Mat<S>& gram) const {
    const int m = static_cast<int>(P.cols());
    Eigen::FullPivLU<Mat<S>> lu(P);
    Representation<S> rep;
    rep.space_dim = m;
    for (Eigen::Index a = 0; a < emb_.k_basis.cols(); ++a) {
      Mat<S> img = emb_.g.ad(emb_.k_basis.col(a)) * P;
      Mat<S> coords = lu.solve(img);
      Mat<S> resid = P * coords - img;
      if constexpr (scalar_traits<S>::exact) {
        if (!is_exactly_zero(resid))
          throw VerificationError(emb_.name + ": module is not k-invariant");
      } else {
        if (max_abs<S>(resid) > 1e-9)
          throw VerificationError(emb_.name + ": module is not k-invariant");
      }
      rep.matrices.push_back(std::move(coords));
    }
    return casimir(rep, gram);
  }

private:
  static bool needs_swap(const S& c1, const S& c2) {
    if constexpr (scalar_traits<S>::exact) return c1 > c2;
    return to_double(c1) > to_double(c2) + 1e-9;
  }

  explicit AlignedSpace(Embedding<S> emb, bool swapped)
      : emb_(std::move(emb)), swapped_(swapped) {
    const int d1 = dim_factor1(), d2 = dim_factor2();
    const Mat<S>& K1 = emb_.factor1.algebra.killing();
    const Mat<S>& K2 = emb_.factor2.algebra.killing();
    Mat<S> kb1 = emb_.k_basis.topRows(d1);
    Mat<S> kb2 = emb_.k_basis.bottomRows(d2);
    if (rank_of(kb1) != emb_.k_basis.cols() ||
        rank_of(kb2) != emb_.k_basis.cols())
      throw UnsupportedSpaceError(
          emb_.name + ": projection of k to a factor is not injective");

    Mat<S> b1k = kb1.transpose() * K1 * kb1;
    Mat<S> b2k = kb2.transpose() * K2 * kb2;
    Mat<S> bgk = b1k + b2k;
    S r1 = detail::proportionality_ratio(b1k, bgk, emb_.name + ": factor 1");
    S r2 = detail::proportionality_ratio(b2k, bgk, emb_.name + ": factor 2");
    if constexpr (scalar_traits<S>::exact) {
      if (r1 + r2 != S(1))
        throw UnsupportedSpaceError(emb_.name + ": 1/c1 + 1/c2 != 1");
    } else {
      if (std::abs(to_double(r1 + r2) - 1.0) > 1e-9)
        throw UnsupportedSpaceError(emb_.name + ": 1/c1 + 1/c2 != 1");
    }
    c1_ = S(1) / r1;
    c2_ = S(1) / r2;
    ip_k_ = -bgk;

    k_ = subalgebra_structure(emb_.g, emb_.k_basis, emb_.name + ".k");
    ideals_ = decompose_ideals(k_, bgk);
    for (size_t l = 1; l < ideals_.size(); ++l) {
      bool ok1, ok2;
      if constexpr (scalar_traits<S>::exact) {
        ok1 = c1_ * ideals_[l].lambda < S(1);
        ok2 = c2_ * ideals_[l].lambda < S(1);
      } else {
        ok1 = to_double(c1_ * ideals_[l].lambda) < 1.0 - 1e-12;
        ok2 = to_double(c2_ * ideals_[l].lambda) < 1.0 - 1e-12;
      }
      if (!ok1 || !ok2)
        throw UnsupportedSpaceError(emb_.name +
                                    ": Killing ratio c_i lambda_l is not < 1");
    }

    // Reductive modules: B_{g_i}-orthogonal complements of the projected k.
    Mat<S> ker1 = kernel_basis(Mat<S>(kb1.transpose() * K1));
    Mat<S> ker2 = kernel_basis(Mat<S>(kb2.transpose() * K2));
    p1_ = Mat<S>::Zero(d1 + d2, ker1.cols());
    p1_.topRows(d1) = ker1;
    p2_ = Mat<S>::Zero(d1 + d2, ker2.cols());
    p2_.bottomRows(d2) = ker2;

    cas1_ = module_casimir(p1_, Mat<S>(-b1k));
    cas2_ = module_casimir(p2_, Mat<S>(-b2k));
    std::tie(cas1_scalar_, kappa1_) = scalar_part(cas1_);
    std::tie(cas2_scalar_, kappa2_) = scalar_part(cas2_);
  }

  static std::pair<bool, S> scalar_part(const Mat<S>& m) {
    S v = m(0, 0);
    Mat<S> resid = m - v * Mat<S>::Identity(m.rows(), m.cols());
    if constexpr (scalar_traits<S>::exact) {
      return {is_exactly_zero(resid), v};
    } else {
      return {max_abs<S>(resid) < 1e-10, v};
    }
  }

  Embedding<S> emb_;
  bool swapped_ = false;
  StructureAlgebra<S> k_;
  S c1_{}, c2_{};
  Mat<S> ip_k_;
  std::vector<IdealComponent<S>> ideals_;
  Mat<S> p1_, p2_;
  Mat<S> cas1_, cas2_;
  bool cas1_scalar_ = false, cas2_scalar_ = false;
  S kappa1_{}, kappa2_{};
};

/// Frames adapted to g_b = z1 (-B_1) + z2 (-B_2): g_b-orthonormal bases of
/// p1, p2, the twisted module p3 = {(Z_1, A3 Z_2)} and k itself, all as
/// direct-sum coordinate columns.  Intended for floating-point scalars; the
/// rational instantiation throws unless every norm is a perfect square.
template <class S>
struct AdaptedFrame {
  SectionConstants<S> cst;
  Mat<S> e1, e2, e3, e4;
  Mat<S> gb;  // form matrix of g_b on direct-sum coordinates
  Mat<S> q0;  // form matrix of Q = y1 B_1 + y2 B_2
  std::vector<std::pair<int, int>> k_ranges;  // ideal ranges within e3/e4

  int n1() const { return static_cast<int>(e1.cols()); }
  int n2() const { return static_cast<int>(e2.cols()); }
  int n3() const { return static_cast<int>(e3.cols()); }

  /// Frame of the tangent space p = p1 + p2 + p3.
  Mat<S> p_frame() const {
    Mat<S> f(e1.rows(), n1() + n2() + n3());
    f.leftCols(n1()) = e1;
    f.middleCols(n1(), n2()) = e2;
    f.rightCols(n3()) = e3;
    return f;
  }
};

template <class S>
AdaptedFrame<S> build_adapted_frame(const AlignedSpace<S>& sp, const S& z1) {
  AdaptedFrame<S> fr;
  fr.cst = sp.constants(z1);
  const int d1 = sp.dim_factor1(), d2 = sp.dim_factor2();
  const Mat<S>& K1 = sp.embedding().factor1.algebra.killing();
  const Mat<S>& K2 = sp.embedding().factor2.algebra.killing();
  const int d = d1 + d2;

  fr.gb = Mat<S>::Zero(d, d);
  fr.gb.topLeftCorner(d1, d1) = -fr.cst.z1 * K1;
  fr.gb.bottomRightCorner(d2, d2) = -fr.cst.z2 * K2;
  fr.q0 = Mat<S>::Zero(d, d);
  fr.q0.topLeftCorner(d1, d1) = fr.cst.y1 * K1;
  fr.q0.bottomRightCorner(d2, d2) = fr.cst.y2 * K2;

  Mat<S> ip_g = Mat<S>::Zero(d, d);  // <.,.> = -B_g
  ip_g.topLeftCorner(d1, d1) = -K1;
  ip_g.bottomRightCorner(d2, d2) = -K2;

  // k basis orthonormalized for <.,.> ideal by ideal (ideals are
  // automatically <.,.>-orthogonal to each other).
  const auto& ideals = sp.ideals();
  Mat<S> z = Mat<S>::Zero(d, sp.dim_k());
  int at = 0;
  for (const auto& comp : ideals) {
    const int m = static_cast<int>(comp.basis.cols());
    if (m == 0) continue;
    Mat<S> vecs = sp.k_basis() * comp.basis;
    z.middleCols(at, m) = orthonormalize(vecs, ip_g);
    fr.k_ranges.push_back({at, at + m});
    at += m;
  }

  const S rb3 = scalar_traits<S>::sqrt(fr.cst.B3);
  const S rb4 = scalar_traits<S>::sqrt(fr.cst.B4);
  fr.e4 = z / rb4;
  fr.e3 = Mat<S>::Zero(d, sp.dim_k());
  fr.e3.topRows(d1) = z.topRows(d1) / rb3;
  fr.e3.bottomRows(d2) = (fr.cst.A3 / rb3) * z.bottomRows(d2);

  fr.e1 = orthonormalize(Mat<S>(sp.p1_basis()), fr.gb);
  fr.e2 = orthonormalize(Mat<S>(sp.p2_basis()), fr.gb);

  // The full frame must be g_b-orthonormal.
  Mat<S> f(d, fr.n1() + fr.n2() + 2 * fr.n3());
  f.leftCols(fr.n1()) = fr.e1;
  f.middleCols(fr.n1(), fr.n2()) = fr.e2;
  f.middleCols(fr.n1() + fr.n2(), fr.n3()) = fr.e3;
  f.rightCols(fr.n3()) = fr.e4;
  Mat<S> gram = f.transpose() * fr.gb * f;
  Mat<S> dev = gram - Mat<S>::Identity(f.cols(), f.cols());
  if constexpr (scalar_traits<S>::exact) {
    if (!is_exactly_zero(dev))
      throw VerificationError(sp.name() + ": adapted frame is not orthonormal");
  } else {
    if (max_abs<S>(dev) > 1e-9)
      throw VerificationError(sp.name() + ": adapted frame is not orthonormal");
  }

  // Q pairs e4 with e3 diagonally: Q(e4_a, e3_b) = -delta_ab C3/sqrt(B3 B4).
  Mat<S> pair = fr.e4.transpose() * fr.q0 * fr.e3;
  Mat<S> want = Mat<S>::Identity(fr.n3(), fr.n3()) * (-fr.cst.C3 / (rb3 * rb4));
  Mat<S> qdev = pair - want;
  if constexpr (scalar_traits<S>::exact) {
    if (!is_exactly_zero(qdev))
      throw VerificationError(sp.name() + ": Q pairing has unexpected shape");
  } else {
    if (max_abs<S>(qdev) > 1e-9)
      throw VerificationError(sp.name() + ": Q pairing has unexpected shape");
  }
  return fr;
}

}  // namespace brf

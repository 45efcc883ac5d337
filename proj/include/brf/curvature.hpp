#pragma once

#include <vector>

#include "brf/aligned.hpp"
#include "brf/errors.hpp"
#include "brf/linalg.hpp"

namespace brf {

/// Diagonal invariant metric g = (x1, x2, x3)_{g_b} on an aligned space.
template <class S>
struct DiagonalMetric {
  S x1{1}, x2{1}, x3{1};
};

/// Which formula to use for the p3 part of (H_Q)^2_g. The historical
/// variant differs by a factor sqrt(B_4) inside the p3-cubed contribution
/// and agrees with the corrected one exactly when B_4 = 1.
enum class TorsionFormula { corrected, legacy };

/// Coefficients of the Ricci operator per irreducible block:
/// Ric|p_k = id_k I + cs_k cas_{chi_k} (k = 1, 2) and Ric|p3^l = r3[l] I.
template <class S>
struct RicciCoefficients {
  S id1{}, cs1{}, id2{}, cs2{};
  std::vector<S> r3;
};

template <class S>
RicciCoefficients<S> ricci_coefficients(const SectionConstants<S>& c,
                                        const std::vector<S>& lambdas,
                                        const DiagonalMetric<S>& m) {
  RicciCoefficients<S> r;
  r.id1 = S(1) / (S(4) * m.x1 * c.z1);
  r.cs1 = (S(1) / (S(2) * m.x1)) * (S(1) / c.z1 - m.x3 / (m.x1 * c.c1 * c.B3));
  r.id2 = S(1) / (S(4) * m.x2 * c.z2);
  r.cs2 = (S(1) / (S(2) * m.x2)) *
          (S(1) / c.z2 - m.x3 * c.A3 * c.A3 / (m.x2 * c.c2 * c.B3));

  const S a2 = c.A3 * c.A3;
  const S t1 = (S(2) * m.x1 * m.x1 - m.x3 * m.x3) / (m.x1 * m.x1);
  const S t2 = (S(2) * m.x2 * m.x2 - m.x3 * m.x3) * a2 / (m.x2 * m.x2);
  const S t3 = ((S(1) + c.A3) / c.B3) * (c.z1 / c.c1 + c.A3 * a2 * c.z2 / c.c2);
  const S t4 = S(2) * (S(1) / c.c1 + a2 / c.c2);
  const S pre = S(1) / (S(4) * m.x3 * c.B3);
  for (const S& lambda : lambdas)
    r.r3.push_back(pre * lambda * (t1 + t2 - t3) +
                   pre * (t4 - t1 / c.c1 - t2 / c.c2));
  return r;
}

/// Coefficients of (H_Q)^2_g as a g_b-symmetric operator per block:
/// op|p_k = id_k I + cs_k cas_{chi_k} and op|p3^l = h3[l] I, so that
/// (H_Q)^2_g(X, Y) = g_b(op X, Y).
template <class S>
struct TorsionSquareCoefficients {
  S id1{}, cs1{}, id2{}, cs2{};
  std::vector<S> h3;
};

template <class S>
TorsionSquareCoefficients<S> h_squared_coefficients(const SectionConstants<S>& c,
                                                    const std::vector<S>& lambdas,
                                                    const DiagonalMetric<S>& m,
                                                    TorsionFormula variant) {
  TorsionSquareCoefficients<S> h;
  const S u1 = c.y1 / c.z1 + c.C3 / c.B4;
  const S u2 = c.A3 * c.y2 / c.z2 + c.C3 / c.B4;
  const S s1 = u1 * u1 / (m.x3 * c.B3);
  const S s2 = u2 * u2 / (m.x3 * c.B3);
  const S z1c = c.z1 * c.z1 * c.z1;
  const S z2c = c.z2 * c.z2 * c.z2;
  h.id1 = c.y1 * c.y1 / (m.x1 * m.x1 * z1c);
  h.cs1 = S(2) * s1 / (m.x1 * c.c1) - S(2) * h.id1;
  h.id2 = c.y2 * c.y2 / (m.x2 * m.x2 * z2c);
  h.cs2 = S(2) * s2 / (m.x2 * c.c2) - S(2) * h.id2;

  const S d = variant == TorsionFormula::corrected
                  ? c.B4
                  : c.B4 * scalar_traits<S>::sqrt(c.B4);
  const S w = c.y1 / c.c1 + c.A3 * c.A3 * c.A3 * c.y2 / c.c2 +
              (S(3) * c.C3 / d) * (c.z1 / c.c1 + c.A3 * c.A3 * c.z2 / c.c2);
  const S b3c = c.B3 * c.B3 * c.B3;
  for (const S& lambda : lambdas) {
    const S v = u1 * u1 * (S(1) - c.c1 * lambda) / (m.x1 * m.x1 * c.B3 * c.c1) +
                u2 * u2 * (S(1) - c.c2 * lambda) / (m.x2 * m.x2 * c.B3 * c.c2) +
                lambda * w * w / (m.x3 * m.x3 * b3c);
    h.h3.push_back(v);
  }
  return h;
}

/// Frame-level closed-form evaluation context: adapted frame together with
/// the isotropy Casimir operators expressed in frame coordinates and the
/// per-ideal eigenvalues laid out in frame order.
template <class S>
struct ClosedFormContext {
  AdaptedFrame<S> fr;
  Mat<S> cas1_frame, cas2_frame;
  std::vector<S> lambdas;                     // one per nonempty ideal
  std::vector<std::pair<int, int>> p3_ranges; // within the p3 block
};

template <class S>
ClosedFormContext<S> closed_form_context(const AlignedSpace<S>& sp, const S& z1) {
  ClosedFormContext<S> ctx;
  ctx.fr = build_adapted_frame(sp, z1);
  ctx.cas1_frame = sp.module_casimir(ctx.fr.e1, Mat<S>(sp.ip_k() / sp.c1()));
  ctx.cas2_frame = sp.module_casimir(ctx.fr.e2, Mat<S>(sp.ip_k() / sp.c2()));
  for (const auto& comp : sp.ideals())
    if (comp.basis.cols() > 0) ctx.lambdas.push_back(comp.lambda);
  ctx.p3_ranges = ctx.fr.k_ranges;
  if (ctx.lambdas.size() != ctx.p3_ranges.size())
    throw NumericalError("closed_form_context: ideal layout mismatch");
  return ctx;
}

/// Ricci curvature of g = (x1,x2,x3)_{g_b} as a bilinear form on the
/// adapted frame, assembled from the closed per-block formulas.
template <class S>
Mat<S> ricci_closed_form(const ClosedFormContext<S>& ctx, const DiagonalMetric<S>& m) {
  const auto& fr = ctx.fr;
  const auto co = ricci_coefficients(fr.cst, ctx.lambdas, m);
  const int n1 = fr.n1(), n2 = fr.n2(), n3 = fr.n3();
  Mat<S> r = Mat<S>::Zero(n1 + n2 + n3, n1 + n2 + n3);
  r.topLeftCorner(n1, n1) =
      m.x1 * (co.id1 * Mat<S>::Identity(n1, n1) + co.cs1 * ctx.cas1_frame);
  r.block(n1, n1, n2, n2) =
      m.x2 * (co.id2 * Mat<S>::Identity(n2, n2) + co.cs2 * ctx.cas2_frame);
  for (std::size_t l = 0; l < ctx.p3_ranges.size(); ++l) {
    const auto [lo, hi] = ctx.p3_ranges[l];
    for (int i = lo; i < hi; ++i) r(n1 + n2 + i, n1 + n2 + i) = m.x3 * co.r3[l];
  }
  return r;
}

/// (H_Q)^2_g of g = (x1,x2,x3)_{g_b} as a bilinear form on the adapted
/// frame, assembled from the closed per-block formulas.
template <class S>
Mat<S> h_squared_closed_form(const ClosedFormContext<S>& ctx, const DiagonalMetric<S>& m,
                             TorsionFormula variant = TorsionFormula::corrected) {
  const auto& fr = ctx.fr;
  const auto co = h_squared_coefficients(fr.cst, ctx.lambdas, m, variant);
  const int n1 = fr.n1(), n2 = fr.n2(), n3 = fr.n3();
  Mat<S> h = Mat<S>::Zero(n1 + n2 + n3, n1 + n2 + n3);
  h.topLeftCorner(n1, n1) =
      co.id1 * Mat<S>::Identity(n1, n1) + co.cs1 * ctx.cas1_frame;
  h.block(n1, n1, n2, n2) =
      co.id2 * Mat<S>::Identity(n2, n2) + co.cs2 * ctx.cas2_frame;
  for (std::size_t l = 0; l < ctx.p3_ranges.size(); ++l) {
    const auto [lo, hi] = ctx.p3_ranges[l];
    for (int i = lo; i < hi; ++i) h(n1 + n2 + i, n1 + n2 + i) = co.h3[l];
  }
  return h;
}

/// Eigenvalues of the Ricci operator of the canonical metric together with
/// their multiplicities: 1/4 on p1, (c1-1)/4 on p2 and c1 (1 - lambda_l)/4
/// on each p3^l.
template <class S>
std::vector<std::pair<S, int>> canonical_ricci_spectrum(const AlignedSpace<S>& sp) {
  std::vector<std::pair<S, int>> spec;
  spec.push_back({S(1) / S(4), sp.dim_p1()});
  spec.push_back({(sp.c1() - S(1)) / S(4), sp.dim_p2()});
  for (const auto& comp : sp.ideals())
    if (comp.basis.cols() > 0)
      spec.push_back({sp.c1() * (S(1) - comp.lambda) / S(4),
                      static_cast<int>(comp.basis.cols())});
  return spec;
}

}  // namespace brf

#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "brf/linalg.hpp"

namespace brf {

/// A finite-dimensional real Lie algebra given by structure constants with
/// respect to a fixed basis.  The Killing form is always computed as the
/// double trace of structure constants, never taken from a table.
template <class S>
class StructureAlgebra {
public:
  using Entry = std::pair<int, S>;  // (basis index, coefficient)

  StructureAlgebra() = default;

  StructureAlgebra(std::string name, std::vector<std::string> labels,
                   std::vector<std::vector<std::vector<Entry>>> c,
                   std::vector<std::pair<int, int>> ideal_ranges = {})
      : name_(std::move(name)),
        labels_(std::move(labels)),
        c_(std::move(c)),
        ideal_ranges_(std::move(ideal_ranges)) {
    if (ideal_ranges_.empty()) ideal_ranges_.push_back({0, dim()});
    compute_killing();
  }

  int dim() const { return static_cast<int>(labels_.size()); }
  const std::string& name() const { return name_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<std::pair<int, int>>& ideal_ranges() const {
    return ideal_ranges_;
  }

  const std::vector<Entry>& bracket_basis(int i, int j) const {
    return c_[i][j];
  }

  /// [u, v] for coordinate vectors.
  Vec<S> bracket(const Vec<S>& u, const Vec<S>& v) const {
    Vec<S> w = Vec<S>::Zero(dim());
    for (int i = 0; i < dim(); ++i) {
      if (u(i) == S(0)) continue;
      for (int j = 0; j < dim(); ++j) {
        if (v(j) == S(0)) continue;
        for (const auto& [k, coef] : c_[i][j]) w(k) += u(i) * v(j) * coef;
      }
    }
    return w;
  }

  /// Dense matrix of ad(u) acting on coordinates.
  Mat<S> ad(const Vec<S>& u) const {
    Mat<S> m = Mat<S>::Zero(dim(), dim());
    for (int i = 0; i < dim(); ++i) {
      if (u(i) == S(0)) continue;
      for (int j = 0; j < dim(); ++j)
        for (const auto& [k, coef] : c_[i][j]) m(k, j) += u(i) * coef;
    }
    return m;
  }

  const Mat<S>& killing() const { return killing_; }

  /// Max-norm of the Jacobi identity defect over all basis triples.
  double jacobi_residual() const {
    double worst = 0;
    const int n = dim();
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
          Vec<S> r = bracket_of_bracket(i, j, k) + bracket_of_bracket(j, k, i) +
                     bracket_of_bracket(k, i, j);
          for (int a = 0; a < n; ++a)
            worst = std::max(worst, std::abs(to_double(r(a))));
        }
    return worst;
  }

private:
  Vec<S> bracket_of_bracket(int i, int j, int k) const {
    // [[e_i, e_j], e_k]
    Vec<S> w = Vec<S>::Zero(dim());
    for (const auto& [m, coef] : c_[i][j])
      for (const auto& [p, coef2] : c_[m][k]) w(p) += coef * coef2;
    return w;
  }

  void compute_killing() {
    const int n = dim();
    killing_ = Mat<S>::Zero(n, n);
    // B_ij = tr(ad e_i ad e_j) = sum_a <[e_i, [e_j, e_a]], e_a-coefficient>
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        S acc(0);
        for (int a = 0; a < n; ++a)
          for (const auto& [b, beta] : c_[j][a])
            for (const auto& [k, alpha] : c_[i][b])
              if (k == a) acc += alpha * beta;
        killing_(i, j) = acc;
        killing_(j, i) = acc;
      }
  }

  std::string name_;
  std::vector<std::string> labels_;
  std::vector<std::vector<std::vector<Entry>>> c_;
  std::vector<std::pair<int, int>> ideal_ranges_;
  Mat<S> killing_;
};

/// Matrix realization produced by the classical builders: the i-th basis
/// element as a complex matrix (real part / imaginary part pair).
template <class S>
struct BuiltAlgebra {
  StructureAlgebra<S> algebra;
  std::vector<CMat<S>> matrices;  // defining representation of each basis vector
  int matrix_size = 0;
};

namespace detail {

/// Structure constants from a list of matrices: brackets are expanded in the
/// given basis via the (positive-definite) inner product -Re tr(AB).
template <class S>
std::vector<std::vector<std::vector<std::pair<int, S>>>> matrix_structure(
    const std::vector<CMat<S>>& basis) {
  const int n = static_cast<int>(basis.size());
  Mat<S> gram(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      S v = -CMat<S>::trace_prod_re(basis[i], basis[j]);
      gram(i, j) = v;
      gram(j, i) = v;
    }
  Eigen::FullPivLU<Mat<S>> lu(gram);
  std::vector<std::vector<std::vector<std::pair<int, S>>>> c(
      n, std::vector<std::vector<std::pair<int, S>>>(n));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      CMat<S> m = CMat<S>::commutator(basis[i], basis[j]);
      Vec<S> t(n);
      for (int a = 0; a < n; ++a)
        t(a) = -CMat<S>::trace_prod_re(basis[a], m);
      Vec<S> x = lu.solve(t);
      // verify expansion (the basis must span the commutator)
      CMat<S> recon(m.rows(), m.cols());
      for (int a = 0; a < n; ++a)
        if (x(a) != S(0)) recon = recon + basis[a].scaled(x(a));
      if (!(recon - m).is_zero()) {
        if constexpr (scalar_traits<S>::exact)
          throw NumericalError("matrix_structure: bracket not in span");
        Mat<S> dre = recon.re - m.re, dim_ = recon.im - m.im;
        if (max_abs<S>(dre) > 1e-9 || max_abs<S>(dim_) > 1e-9)
          throw NumericalError("matrix_structure: bracket not in span");
      }
      for (int a = 0; a < n; ++a)
        if (x(a) != S(0)) {
          c[i][j].push_back({a, x(a)});
          c[j][i].push_back({a, S(-x(a))});
        }
    }
  return c;
}

inline std::string idx_label(const std::string& p, int j, int k) {
  return p + std::to_string(j + 1) + "_" + std::to_string(k + 1);
}
inline std::string idx_label(const std::string& p, int j) {
  return p + std::to_string(j + 1);
}

}  // namespace detail

/// Basis index of E_{jk} - E_{kj} (j < k, 0-based) in the so(n) builder.
inline int so_basis_index(int n, int j, int k) {
  // pairs enumerated (0,1), (0,2), ..., (0,n-1), (1,2), ...
  return j * n - j * (j + 1) / 2 + (k - j - 1);
}

/// su(n): E_jk - E_kj, i(E_jk + E_kj) for j < k, then i(E_jj - E_{j+1,j+1}).
template <class S>
BuiltAlgebra<S> build_su(int n) {
  if (n < 2) throw ParameterError("build_su: n must be >= 2");
  std::vector<CMat<S>> basis;
  std::vector<std::string> labels;
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      CMat<S> a(n, n);
      a.re(j, k) = S(1);
      a.re(k, j) = S(-1);
      basis.push_back(a);
      labels.push_back(detail::idx_label("a", j, k));
      CMat<S> s(n, n);
      s.im(j, k) = S(1);
      s.im(k, j) = S(1);
      basis.push_back(s);
      labels.push_back(detail::idx_label("s", j, k));
    }
  for (int j = 0; j + 1 < n; ++j) {
    CMat<S> d(n, n);
    d.im(j, j) = S(1);
    d.im(j + 1, j + 1) = S(-1);
    basis.push_back(d);
    labels.push_back(detail::idx_label("d", j));
  }
  auto c = detail::matrix_structure(basis);
  return {StructureAlgebra<S>("su" + std::to_string(n), std::move(labels),
                              std::move(c)),
          std::move(basis), n};
}

/// so(n): E_jk - E_kj for j < k.
template <class S>
BuiltAlgebra<S> build_so(int n) {
  if (n < 3) throw ParameterError("build_so: n must be >= 3");
  std::vector<CMat<S>> basis;
  std::vector<std::string> labels;
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      CMat<S> a(n, n);
      a.re(j, k) = S(1);
      a.re(k, j) = S(-1);
      basis.push_back(a);
      labels.push_back(detail::idx_label("l", j, k));
    }
  auto c = detail::matrix_structure(basis);
  return {StructureAlgebra<S>("so" + std::to_string(n), std::move(labels),
                              std::move(c)),
          std::move(basis), n};
}

namespace detail {

/// sp(n) element in u(2n) block form [[A, B], [-conj(B), conj(A)]].
template <class S>
CMat<S> sp_block(int n, const CMat<S>& A, const CMat<S>& B) {
  CMat<S> m(2 * n, 2 * n);
  m.re.topLeftCorner(n, n) = A.re;
  m.im.topLeftCorner(n, n) = A.im;
  m.re.topRightCorner(n, n) = B.re;
  m.im.topRightCorner(n, n) = B.im;
  m.re.bottomLeftCorner(n, n) = -B.re;
  m.im.bottomLeftCorner(n, n) = B.im;
  m.re.bottomRightCorner(n, n) = A.re;
  m.im.bottomRightCorner(n, n) = -A.im;
  return m;
}

}  // namespace detail

/// sp(n) inside u(2n): A ranges over u(n) (anti-Hermitian), B over complex
/// symmetric matrices.
template <class S>
BuiltAlgebra<S> build_sp(int n) {
  if (n < 1) throw ParameterError("build_sp: n must be >= 1");
  std::vector<CMat<S>> basis;
  std::vector<std::string> labels;
  CMat<S> zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      CMat<S> a(n, n);
      a.re(j, k) = S(1);
      a.re(k, j) = S(-1);
      basis.push_back(detail::sp_block(n, a, zero));
      labels.push_back(detail::idx_label("a", j, k));
      CMat<S> s(n, n);
      s.im(j, k) = S(1);
      s.im(k, j) = S(1);
      basis.push_back(detail::sp_block(n, s, zero));
      labels.push_back(detail::idx_label("s", j, k));
    }
  for (int j = 0; j < n; ++j) {
    CMat<S> t(n, n);
    t.im(j, j) = S(1);
    basis.push_back(detail::sp_block(n, t, zero));
    labels.push_back(detail::idx_label("t", j));
  }
  for (int j = 0; j < n; ++j)
    for (int k = j; k < n; ++k) {
      CMat<S> u(n, n);
      u.re(j, k) += S(1);
      u.re(k, j) += S(1);
      if (j == k) u.re(j, j) = S(1);
      basis.push_back(detail::sp_block(n, zero, u));
      labels.push_back(detail::idx_label("u", j, k));
      CMat<S> v(n, n);
      v.im(j, k) += S(1);
      v.im(k, j) += S(1);
      if (j == k) v.im(j, j) = S(1);
      basis.push_back(detail::sp_block(n, zero, v));
      labels.push_back(detail::idx_label("v", j, k));
    }
  auto c = detail::matrix_structure(basis);
  return {StructureAlgebra<S>("sp" + std::to_string(n), std::move(labels),
                              std::move(c)),
          std::move(basis), 2 * n};
}

namespace detail {

/// Triple (a<b<c) enumeration for Lambda^3 R^n.
inline int triple_index(int n, int a, int b, int c) {
  auto pairs_before = [n](int x) {
    // number of triples with smallest entry < x
    int s = 0;
    for (int t = 0; t < x; ++t) s += (n - t - 1) * (n - t - 2) / 2;
    return s;
  };
  return pairs_before(a) + (b - a - 1) * (2 * n - a - b - 2) / 2 + (c - b - 1);
}

/// Coefficients of a 3-form with value lookup on arbitrary index order.
template <class S>
struct ThreeFormCoeffs {
  int n;
  Vec<S> vals;  // indexed by triple_index
  S get(int a, int b, int c) const {
    std::array<int, 3> idx{a, b, c};
    int sign = 1;
    if (idx[0] > idx[1]) { std::swap(idx[0], idx[1]); sign = -sign; }
    if (idx[1] > idx[2]) { std::swap(idx[1], idx[2]); sign = -sign; }
    if (idx[0] > idx[1]) { std::swap(idx[0], idx[1]); sign = -sign; }
    if (idx[0] == idx[1] || idx[1] == idx[2]) return S(0);
    return S(sign) * vals(triple_index(n, idx[0], idx[1], idx[2]));
  }
};

inline int triple_count(int n) { return n * (n - 1) * (n - 2) / 6; }

/// Coefficient vector of the derivative action X . phi of an so(n) element,
/// (X.phi)(u,v,w) = -phi(Xu,v,w) - phi(u,Xv,w) - phi(u,v,Xw).
template <class S>
Vec<S> threeform_apply(const Mat<S>& X, const ThreeFormCoeffs<S>& phi) {
  const int n = phi.n;
  Vec<S> out = Vec<S>::Zero(triple_count(n));
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) {
        S v(0);
        for (int d = 0; d < n; ++d) {
          if (X(d, a) != S(0)) v -= X(d, a) * phi.get(d, b, c);
          if (X(d, b) != S(0)) v -= X(d, b) * phi.get(a, d, c);
          if (X(d, c) != S(0)) v -= X(d, c) * phi.get(a, b, d);
        }
        out(triple_index(n, a, b, c)) = v;
      }
  return out;
}

}  // namespace detail

/// Stabilizer subalgebra of a 3-form inside so(n), realized by its matrices.
template <class S>
BuiltAlgebra<S> threeform_stabilizer(const detail::ThreeFormCoeffs<S>& phi,
                                     const std::string& name,
                                     int expected_dim) {
  const int n = phi.n;
  BuiltAlgebra<S> son = build_so<S>(n);
  const int so_dim = son.algebra.dim();
  Mat<S> act(detail::triple_count(n), so_dim);
  for (int m = 0; m < so_dim; ++m)
    act.col(m) = detail::threeform_apply(son.matrices[m].re, phi);
  Mat<S> ker = kernel_basis(act);
  if (ker.cols() != expected_dim)
    throw VerificationError(name + ": stabilizer dimension is not " +
                            std::to_string(expected_dim));
  std::vector<CMat<S>> basis;
  std::vector<std::string> labels;
  for (int i = 0; i < ker.cols(); ++i) {
    CMat<S> m(n, n);
    for (int a = 0; a < so_dim; ++a)
      if (ker(a, i) != S(0)) m = m + son.matrices[a].scaled(ker(a, i));
    basis.push_back(std::move(m));
    labels.push_back("x" + std::to_string(i + 1));
  }
  auto c = detail::matrix_structure(basis);
  return {StructureAlgebra<S>(name, std::move(labels), std::move(c)),
          std::move(basis), n};
}

/// g2 realized as the stabilizer in so(7) of the associative 3-form
/// phi0 = e123 + e145 + e167 + e246 - e257 - e347 - e356.
/// Returns the 14 basis vectors as 7x7 real matrices; structure constants are
/// exact rationals for S = Rational.
template <class S>
BuiltAlgebra<S> build_g2() {
  const int n = 7;
  detail::ThreeFormCoeffs<S> phi{n, Vec<S>::Zero(detail::triple_count(n))};
  auto set = [&](int a, int b, int c, int v) {
    phi.vals(detail::triple_index(n, a - 1, b - 1, c - 1)) = S(v);
  };
  set(1, 2, 3, 1);
  set(1, 4, 5, 1);
  set(1, 6, 7, 1);
  set(2, 4, 6, 1);
  set(2, 5, 7, -1);
  set(3, 4, 7, -1);
  set(3, 5, 6, -1);
  return threeform_stabilizer(phi, "g2", 14);
}

/// Dispatcher used by the CLI space-spec loader.
template <class S>
BuiltAlgebra<S> build_classical(const std::string& family, int n) {
  if (family == "su") return build_su<S>(n);
  if (family == "so") return build_so<S>(n);
  if (family == "sp") return build_sp<S>(n);
  if (family == "g2") return build_g2<S>();
  throw ParameterError("build_classical: unknown family '" + family + "'");
}

/// Direct sum with shifted indices; records the summand ranges as ideals.
template <class S>
StructureAlgebra<S> direct_sum(const StructureAlgebra<S>& a,
                               const StructureAlgebra<S>& b) {
  const int na = a.dim(), nb = b.dim(), n = na + nb;
  std::vector<std::string> labels;
  labels.reserve(n);
  for (const auto& l : a.labels()) labels.push_back("g1." + l);
  for (const auto& l : b.labels()) labels.push_back("g2." + l);
  std::vector<std::vector<std::vector<std::pair<int, S>>>> c(
      n, std::vector<std::vector<std::pair<int, S>>>(n));
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j) c[i][j] = a.bracket_basis(i, j);
  for (int i = 0; i < nb; ++i)
    for (int j = 0; j < nb; ++j) {
      for (const auto& [k, coef] : b.bracket_basis(i, j))
        c[na + i][na + j].push_back({na + k, coef});
    }
  return StructureAlgebra<S>(a.name() + "+" + b.name(), std::move(labels),
                             std::move(c), {{0, na}, {na, n}});
}

/// Structure constants of the span of `vectors` (columns, parent
/// coordinates); throws if the span is not bracket-closed.
template <class S>
StructureAlgebra<S> subalgebra_structure(const StructureAlgebra<S>& parent,
                                         const Mat<S>& vectors,
                                         const std::string& name) {
  const int m = static_cast<int>(vectors.cols());
  Eigen::FullPivLU<Mat<S>> lu(vectors);
  std::vector<std::vector<std::vector<std::pair<int, S>>>> c(
      m, std::vector<std::vector<std::pair<int, S>>>(m));
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      Vec<S> w = parent.bracket(vectors.col(i), vectors.col(j));
      Vec<S> x = lu.solve(w);
      Mat<S> resid = vectors * x - w;
      if constexpr (scalar_traits<S>::exact) {
        if (!is_exactly_zero(resid))
          throw NumericalError("subalgebra_structure: span not closed");
      } else {
        if (max_abs<S>(resid) > 1e-9)
          throw NumericalError("subalgebra_structure: span not closed");
      }
      for (int k = 0; k < m; ++k)
        if (x(k) != S(0)) {
          c[i][j].push_back({k, x(k)});
          c[j][i].push_back({k, S(-x(k))});
        }
    }
  std::vector<std::string> labels;
  for (int i = 0; i < m; ++i) labels.push_back("k" + std::to_string(i + 1));
  return StructureAlgebra<S>(name, std::move(labels), std::move(c));
}

/// A representation: matrices of the acting basis on a module.
template <class S>
struct Representation {
  std::vector<Mat<S>> matrices;
  int space_dim = 0;
};

/// Casimir operator of a representation with respect to an invariant inner
/// product on the acting algebra, given by its Gram matrix in the same basis
/// the representation matrices refer to:
///   cas = -sum_{a,b} (G^{-1})_{ab} rho_a rho_b.
/// The Gram-inverse form avoids orthonormalizing the acting basis, keeping
/// the computation exact for rational scalars.
template <class S>
Mat<S> casimir(const Representation<S>& rep, const Mat<S>& gram) {
  const int n = static_cast<int>(rep.matrices.size());
  Eigen::FullPivLU<Mat<S>> lu(gram);
  if (lu.rank() != n)
    throw ParameterError("casimir: inner product is degenerate");
  Mat<S> ginv = lu.inverse();
  Mat<S> cas = Mat<S>::Zero(rep.space_dim, rep.space_dim);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (ginv(a, b) == S(0)) continue;
      cas -= ginv(a, b) * (rep.matrices[a] * rep.matrices[b]);
    }
  return cas;
}

/// Dimension of the space of intertwiners Hom(V_A, V_B)^g, i.e. solutions of
/// T rho_A(v) = rho_B(v) T for all basis elements v of the acting algebra.
template <class S>
int intertwiner_dim(const Representation<S>& A, const Representation<S>& B) {
  if (A.matrices.size() != B.matrices.size())
    throw ParameterError("intertwiner_dim: mismatched acting bases");
  const int da = A.space_dim, db = B.space_dim, nv = da * db;
  if (nv > 4096)
    throw UnsupportedSpaceError("intertwiner_dim: problem too large");
  // K spans the current candidate space of vec(T); refine per generator.
  Mat<S> K = Mat<S>::Identity(nv, nv);
  for (size_t g = 0; g < A.matrices.size(); ++g) {
    // Sylvester operator: vec(T rho_A - rho_B T), column-major vec with
    // T of size db x da: vec index (row r in [0,db), col c in [0,da)).
    Mat<S> syl = Mat<S>::Zero(nv, nv);
    const Mat<S>& ra = A.matrices[g];
    const Mat<S>& rb = B.matrices[g];
    for (int c = 0; c < da; ++c)
      for (int r = 0; r < db; ++r) {
        const int row = c * db + r;
        // (T rho_A)_{r,c} = sum_m T_{r,m} (ra)_{m,c}
        for (int m = 0; m < da; ++m)
          if (ra(m, c) != S(0)) syl(row, m * db + r) += ra(m, c);
        // (rho_B T)_{r,c} = sum_m (rb)_{r,m} T_{m,c}
        for (int m = 0; m < db; ++m)
          if (rb(r, m) != S(0)) syl(row, c * db + m) -= rb(r, m);
      }
    Mat<S> restricted = syl * K;
    Mat<S> ker = kernel_basis(restricted);
    if (ker.cols() == 0) return 0;
    K = K * ker;
  }
  return static_cast<int>(K.cols());
}

}  // namespace brf

#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "brf/aligned.hpp"
#include "brf/embeddings.hpp"
#include "brf/errors.hpp"
#include "brf/group_brf.hpp"
#include "brf/scalar.hpp"

namespace brf {

/// Exact rational literal used by the catalog tables.
struct CatalogRational {
  long long num = 0;
  long long den = 1;

  template <class S>
  S value() const {
    return scalar_traits<S>::fraction(static_cast<long>(num),
                                      static_cast<long>(den));
  }

  std::string str() const {
    return den == 1 ? std::to_string(num)
                    : std::to_string(num) + "/" + std::to_string(den);
  }
};

enum class CatalogKind { aligned_space, aligned_space_float_only, group_case };

/// One built-in space together with the constants it must reproduce when
/// constructed.  Factors are ordered so that c1 <= c2; lambda values are
/// listed per non-central isotropy ideal; kappa values are present exactly
/// when the corresponding isotropy Casimir is scalar.
struct SpaceCatalogEntry {
  std::string id;
  std::string description;
  CatalogKind kind = CatalogKind::aligned_space;
  long p = 0;
  long q = 0;
  CatalogRational c1;
  CatalogRational c2;
  std::vector<CatalogRational> lambdas;
  std::optional<CatalogRational> kappa1;
  std::optional<CatalogRational> kappa2;
  int dim_g = 0;
  int dim_k = 0;
  /// The quoted constants await independent confirmation; a mismatch is
  /// reported as a discrepancy between the quoted and computed values
  /// instead of a construction defect.
  bool confirm_on_load = false;
};

/// Built-in catalog.  Aligned entries cover the diagonal circle families,
/// the diagonal subgroup cosets and the mixed-embedding spaces; the two
/// group entries carry their bi-invariant metrics.
inline const std::vector<SpaceCatalogEntry>& catalog() {
  static const std::vector<SpaceCatalogEntry> entries{
      {.id = "su2xsu2_s1_11",
       .description = "SU(2) x SU(2) / S1, circle embedded with weights (1, 1)",
       .kind = CatalogKind::aligned_space,
       .p = 1,
       .q = 1,
       .c1 = {2, 1},
       .c2 = {2, 1},
       .lambdas = {},
       .kappa1 = CatalogRational{1, 2},
       .kappa2 = CatalogRational{1, 2},
       .dim_g = 6,
       .dim_k = 1},
      {.id = "su2xsu2_s1_21",
       .description = "SU(2) x SU(2) / S1, circle embedded with weights (2, 1)",
       .kind = CatalogKind::aligned_space,
       .p = 2,
       .q = 1,
       .c1 = {5, 4},
       .c2 = {5, 1},
       .lambdas = {},
       .kappa1 = CatalogRational{1, 2},
       .kappa2 = CatalogRational{1, 2},
       .dim_g = 6,
       .dim_k = 1},
      {.id = "su2xsu3_s1",
       .description = "SU(2) x SU(3) / S1, weighted circle embedding",
       .kind = CatalogKind::aligned_space,
       .c1 = {5, 3},
       .c2 = {5, 2},
       .lambdas = {},
       .kappa1 = std::nullopt,
       .kappa2 = CatalogRational{1, 2},
       .dim_g = 11,
       .dim_k = 1},
      {.id = "su3xsu3_so3",
       .description = "SU(3) x SU(3) / SO(3), diagonal maximal so(3)",
       .kind = CatalogKind::aligned_space,
       .c1 = {2, 1},
       .c2 = {2, 1},
       .lambdas = {{1, 12}},
       .kappa1 = CatalogRational{1, 2},
       .kappa2 = CatalogRational{1, 2},
       .dim_g = 16,
       .dim_k = 3},
      {.id = "su4xsu4_sp2",
       .description = "SU(4) x SU(4) / Sp(2), diagonal symplectic subalgebra",
       .kind = CatalogKind::aligned_space,
       .c1 = {2, 1},
       .c2 = {2, 1},
       .lambdas = {{3, 8}},
       .kappa1 = CatalogRational{1, 2},
       .kappa2 = CatalogRational{1, 2},
       .dim_g = 30,
       .dim_k = 10},
      {.id = "so8xso7_g2",
       .description = "SO(8) x SO(7) / G2, adapted G2 inside both factors",
       .kind = CatalogKind::aligned_space,
       .c1 = {11, 6},
       .c2 = {11, 5},
       .lambdas = {{4, 11}},
       .kappa1 = CatalogRational{1, 3},
       .kappa2 = CatalogRational{2, 5},
       .dim_g = 49,
       .dim_k = 14},
      {.id = "so10xsu4_sp2",
       .description =
           "SO(10) x SU(4) / Sp(2), adjoint embedding paired with the "
           "defining one",
       .kind = CatalogKind::aligned_space,
       .c1 = {7, 6},
       .c2 = {7, 1},
       .lambdas = {{3, 28}},
       .kappa1 = CatalogRational{1, 4},
       .kappa2 = CatalogRational{1, 2},
       .dim_g = 60,
       .dim_k = 10},
      {.id = "su7xso8_so7",
       .description =
           "SU(7) x SO(8) / SO(7), defining embedding paired with the "
           "corner one",
       .kind = CatalogKind::aligned_space,
       .c1 = {10, 7},
       .c2 = {10, 3},
       .lambdas = {{1, 4}},
       .kappa1 = CatalogRational{1, 2},
       .kappa2 = CatalogRational{1, 2},
       .dim_g = 76,
       .dim_k = 21},
      {.id = "g2xsp2_su2",
       .description =
           "G2 x Sp(2) / SU(2), principal spin-3 and spin-3/2 pair; "
           "floating-point constructor only",
       .kind = CatalogKind::aligned_space_float_only,
       .c1 = {71, 56},
       .c2 = {71, 15},
       .lambdas = {{1, 71}},
       .kappa1 = CatalogRational{15, 56},
       .kappa2 = CatalogRational{2, 5},
       .dim_g = 24,
       .dim_k = 3,
       .confirm_on_load = true},
      {.id = "su2",
       .description = "compact group su(2) with its bi-invariant metric",
       .kind = CatalogKind::group_case,
       .dim_g = 3,
       .dim_k = 0},
      {.id = "su2su2",
       .description =
           "compact group su(2) + su(2) with its bi-invariant metric",
       .kind = CatalogKind::group_case,
       .dim_g = 6,
       .dim_k = 0},
  };
  return entries;
}

inline const SpaceCatalogEntry& catalog_entry(const std::string& id) {
  for (const auto& e : catalog())
    if (e.id == id) return e;
  throw ParameterError("unknown catalog space: " + id);
}

/// Constructs the embedding behind an aligned catalog entry.
template <class S>
Embedding<S> catalog_embedding(const SpaceCatalogEntry& e) {
  if (e.kind == CatalogKind::group_case)
    throw ParameterError(e.id + ": group entries have no coset embedding");
  if (e.id.rfind("su2xsu2_s1_", 0) == 0) return make_su2xsu2_s1<S>(e.p, e.q);
  if (e.id == "su2xsu3_s1") return make_su2xsu3_s1<S>();
  if (e.id == "su3xsu3_so3") return make_su3xsu3_so3<S>();
  if (e.id == "su4xsu4_sp2") return make_su4xsu4_sp2<S>();
  if (e.id == "so8xso7_g2") return make_so8xso7_g2<S>();
  if (e.id == "so10xsu4_sp2") return make_so10xsu4_sp2<S>();
  if (e.id == "su7xso8_so7") return make_su7xso8_so7<S>();
  if (e.id == "g2xsp2_su2") return make_g2xsp2_su2<S>();
  throw ParameterError("no constructor registered for " + e.id);
}

template <class S>
AlignedSpace<S> build_catalog_space(const std::string& id) {
  return AlignedSpace<S>::build(catalog_embedding<S>(catalog_entry(id)));
}

/// Group entries carry the bi-invariant metric given by minus the Killing
/// form on every simple ideal.
template <class S>
GroupGeometry<S> build_catalog_group(const std::string& id) {
  const auto& e = catalog_entry(id);
  if (e.kind != CatalogKind::group_case)
    throw ParameterError(id + ": not a group entry");
  if (e.id == "su2") {
    auto su2 = build_su<S>(2);
    return group_geometry(su2.algebra, std::vector<S>{S(1)});
  }
  if (e.id == "su2su2") {
    auto su2 = build_su<S>(2);
    auto sum = direct_sum(su2.algebra, su2.algebra);
    return group_geometry(sum, std::vector<S>{S(1), S(1)});
  }
  throw ParameterError("no constructor registered for " + e.id);
}

/// Outcome of validating one catalog entry against its quoted constants.
struct CatalogCheck {
  std::string id;
  bool passed = true;
  std::vector<std::string> failures;
  std::vector<std::string> discrepancies;
};

namespace detail {

template <class S>
bool catalog_match(const S& computed, const CatalogRational& expected) {
  if constexpr (scalar_traits<S>::exact)
    return computed == expected.template value<S>();
  else
    return std::abs(to_double(computed) -
                    to_double(expected.template value<double>())) < 1e-10;
}

template <class S>
std::string catalog_value_str(const S& v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", to_double(v));
  return buf;
}

}  // namespace detail

/// Rebuilds the entry and compares every quoted constant with the computed
/// one.  Mismatches on an entry marked confirm_on_load are recorded as
/// discrepancies; everything else is a failure.
template <class S>
CatalogCheck check_catalog_entry(const SpaceCatalogEntry& e) {
  CatalogCheck res;
  res.id = e.id;
  const auto complain = [&](const std::string& msg) {
    res.passed = false;
    if (e.confirm_on_load)
      res.discrepancies.push_back(msg);
    else
      res.failures.push_back(msg);
  };
  const auto broken = [&](const std::string& msg) {
    res.passed = false;
    res.failures.push_back(msg);
  };
  try {
    if (e.kind == CatalogKind::group_case) {
      const auto gg = build_catalog_group<S>(e.id);
      if (gg.geo.np != e.dim_g)
        broken("dim: computed " + std::to_string(gg.geo.np) + " but the "
               "table lists " + std::to_string(e.dim_g));
      const Vec<S> ones = Vec<S>::Ones(gg.geo.np);
      const Mat<S> defect = hb_squared(gg, ones) + gg.geo.killing_p;
      if (to_double(max_abs(defect)) > 1e-10)
        broken("structure constants do not reproduce the Killing form");
      return res;
    }
    const auto sp = build_catalog_space<S>(e.id);
    if (sp.dim_g() != e.dim_g || sp.dim_k() != e.dim_k)
      broken("dims: computed (" + std::to_string(sp.dim_g()) + ", " +
             std::to_string(sp.dim_k()) + ") but the table lists (" +
             std::to_string(e.dim_g) + ", " + std::to_string(e.dim_k) + ")");
    if (!detail::catalog_match(sp.c1(), e.c1))
      complain("c1: computed " + detail::catalog_value_str(sp.c1()) +
               " but the table lists " + e.c1.str());
    if (!detail::catalog_match(sp.c2(), e.c2))
      complain("c2: computed " + detail::catalog_value_str(sp.c2()) +
               " but the table lists " + e.c2.str());
    const auto& ideals = sp.ideals();
    if (ideals.size() != e.lambdas.size() + 1) {
      broken("lambda: computed " + std::to_string(ideals.size() - 1) +
             " non-central ideals but the table lists " +
             std::to_string(e.lambdas.size()));
    } else {
      for (size_t l = 1; l < ideals.size(); ++l)
        if (!detail::catalog_match(ideals[l].lambda, e.lambdas[l - 1]))
          complain("lambda[" + std::to_string(l - 1) + "]: computed " +
                   detail::catalog_value_str(ideals[l].lambda) +
                   " but the table lists " + e.lambdas[l - 1].str());
    }
    const auto check_kappa = [&](const char* label, bool scalar, const S& got,
                                 const std::optional<CatalogRational>& want) {
      if (want.has_value()) {
        if (!scalar)
          complain(std::string(label) + ": the Casimir is not scalar but "
                   "the table lists " + want->str());
        else if (!detail::catalog_match(got, *want))
          complain(std::string(label) + ": computed " +
                   detail::catalog_value_str(got) + " but the table lists " +
                   want->str());
      } else if (scalar) {
        complain(std::string(label) + ": the Casimir is scalar (" +
                 detail::catalog_value_str(got) + ") but the table lists "
                 "no value");
      }
    };
    check_kappa("kappa1", sp.cas1_scalar(), sp.kappa1(), e.kappa1);
    check_kappa("kappa2", sp.cas2_scalar(), sp.kappa2(), e.kappa2);
  } catch (const Error& err) {
    broken(std::string("construction failed: ") + err.what());
  }
  return res;
}

/// Validates the whole catalog.  Float-only constructors and the group
/// entries are always checked in double precision; the remaining aligned
/// entries use the requested scalar type.
template <class S>
std::vector<CatalogCheck> check_catalog() {
  std::vector<CatalogCheck> out;
  out.reserve(catalog().size());
  for (const auto& e : catalog()) {
    if (e.kind == CatalogKind::aligned_space)
      out.push_back(check_catalog_entry<S>(e));
    else
      out.push_back(check_catalog_entry<double>(e));
  }
  return out;
}

}  // namespace brf

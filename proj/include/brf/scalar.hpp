#pragma once

#include <gmpxx.h>

#include <Eigen/Core>
#include <cmath>
#include <cstdio>
#include <string>

#include "brf/errors.hpp"

namespace Eigen {

/// Exact rational scalar support.  epsilon() == 0 makes pivoting decisions
/// in the LU/QR family exact (any nonzero pivot is acceptable).
template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  typedef mpq_class Real;
  typedef mpq_class NonInteger;
  typedef mpq_class Nested;
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
};

}  // namespace Eigen

namespace brf {

using Rational = mpq_class;

inline double to_double(double v) { return v; }
inline double to_double(const Rational& v) { return v.get_d(); }

/// Exact square root of a non-negative rational; throws NumericalError if the
/// canonicalized numerator or denominator is not a perfect square.
inline Rational exact_sqrt(const Rational& v) {
  if (sgn(v) < 0) throw NumericalError("exact_sqrt: negative argument");
  Rational c = v;
  c.canonicalize();
  const mpz_class num = c.get_num(), den = c.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) ||
      !mpz_perfect_square_p(den.get_mpz_t()))
    throw NumericalError("exact_sqrt: argument is not a perfect square: " +
                         c.get_str());
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  return Rational(rn) / Rational(rd);
}

template <typename S>
struct scalar_traits;

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static double sqrt(double v) {
    if (v < 0) throw NumericalError("sqrt of negative value");
    return std::sqrt(v);
  }
  static double fraction(long num, long den) {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  static bool is_zero(double v, double tol) { return std::abs(v) <= tol; }
};

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static Rational sqrt(const Rational& v) { return exact_sqrt(v); }
  static Rational fraction(long num, long den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  static bool is_zero(const Rational& v, double /*tol*/) { return sgn(v) == 0; }
};

/// Parse "p/q" or "p" or a decimal string into a rational.
inline Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      Rational r(text, 10);
      r.canonicalize();
      return r;
    }
    const auto dot = text.find('.');
    if (dot == std::string::npos) {
      Rational r(text, 10);
      r.canonicalize();
      return r;
    }
    // decimal: digits.digits -> scale by a power of ten
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    const size_t frac_len = text.size() - dot - 1;
    mpz_class num(digits, 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
    Rational r(num, den);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw ParameterError("cannot parse rational from '" + text + "'");
  }
}

inline std::string rational_str(const Rational& v) { return v.get_str(); }

}  // namespace brf

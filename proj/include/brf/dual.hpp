#pragma once

#include "brf/scalar.hpp"

namespace brf {

/// Forward-mode scalar carrying two partial derivatives.  Used to obtain
/// exact partials of curve quantities with respect to (x3, z1) when S is
/// rational, and fast derivatives in double mode.
template <class S>
struct Dual2 {
  S v{}, dx{}, dz{};

  Dual2() = default;
  Dual2(S value) : v(std::move(value)), dx(0), dz(0) {}
  Dual2(S value, S d_x, S d_z)
      : v(std::move(value)), dx(std::move(d_x)), dz(std::move(d_z)) {}

  static Dual2 var_x(S value) { return Dual2(std::move(value), S(1), S(0)); }
  static Dual2 var_z(S value) { return Dual2(std::move(value), S(0), S(1)); }

  Dual2 operator-() const { return {S(-v), S(-dx), S(-dz)}; }

  friend Dual2 operator+(const Dual2& a, const Dual2& b) {
    return {a.v + b.v, a.dx + b.dx, a.dz + b.dz};
  }
  friend Dual2 operator-(const Dual2& a, const Dual2& b) {
    return {a.v - b.v, a.dx - b.dx, a.dz - b.dz};
  }
  friend Dual2 operator*(const Dual2& a, const Dual2& b) {
    return {a.v * b.v, a.dx * b.v + a.v * b.dx, a.dz * b.v + a.v * b.dz};
  }
  friend Dual2 operator/(const Dual2& a, const Dual2& b) {
    S w2 = b.v * b.v;
    return {a.v / b.v, (a.dx * b.v - a.v * b.dx) / w2,
            (a.dz * b.v - a.v * b.dz) / w2};
  }

  friend Dual2 operator+(const Dual2& a, const S& c) { return a + Dual2(c); }
  friend Dual2 operator+(const S& c, const Dual2& a) { return Dual2(c) + a; }
  friend Dual2 operator-(const Dual2& a, const S& c) { return a - Dual2(c); }
  friend Dual2 operator-(const S& c, const Dual2& a) { return Dual2(c) - a; }
  friend Dual2 operator*(const Dual2& a, const S& c) { return a * Dual2(c); }
  friend Dual2 operator*(const S& c, const Dual2& a) { return Dual2(c) * a; }
  friend Dual2 operator/(const Dual2& a, const S& c) { return a / Dual2(c); }
  friend Dual2 operator/(const S& c, const Dual2& a) { return Dual2(c) / a; }
};

template <class S>
inline Dual2<S> dual_sqrt(const Dual2<S>& a) {
  S r = scalar_traits<S>::sqrt(a.v);
  S half_inv = S(1) / (S(2) * r);
  return {r, a.dx * half_inv, a.dz * half_inv};
}

template <class S>
inline Dual2<S> dual_pow2(const Dual2<S>& a) {
  return a * a;
}

}  // namespace brf

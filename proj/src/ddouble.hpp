#pragma once

// Double-double arithmetic (unevaluated sums hi + lo) for the phase
// polynomial. Only the operations the summation kernel needs.

#include <cmath>
#include <complex>

namespace gtheta::detail {

struct dd {
  double hi = 0.0;
  double lo = 0.0;

  constexpr dd() = default;
  constexpr dd(double h) : hi(h) {}
  constexpr dd(double h, double l) : hi(h), lo(l) {}

  double value() const noexcept { return hi + lo; }
};

inline dd quick_two_sum(double a, double b) noexcept {
  const double s = a + b;
  return {s, b - (s - a)};
}

inline dd two_sum(double a, double b) noexcept {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline dd two_prod(double a, double b) noexcept {
  const double p = a * b;
#ifdef __FMA__
  return {p, std::fma(a, b, -p)};
#else
  constexpr double splitter = 134217729.0;  // 2^27 + 1
  const double ta = splitter * a;
  const double ah = ta - (ta - a);
  const double al = a - ah;
  const double tb = splitter * b;
  const double bh = tb - (tb - b);
  const double bl = b - bh;
  return {p, ((ah * bh - p) + ah * bl + al * bh) + al * bl};
#endif
}

inline dd operator+(const dd& x, const dd& y) noexcept {
  dd s = two_sum(x.hi, y.hi);
  const dd t = two_sum(x.lo, y.lo);
  s.lo += t.hi;
  s = quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline dd operator-(const dd& x) noexcept { return {-x.hi, -x.lo}; }
inline dd operator-(const dd& x, const dd& y) noexcept { return x + (-y); }

inline dd operator*(const dd& x, const dd& y) noexcept {
  dd p = two_prod(x.hi, y.hi);
  p.lo += x.hi * y.lo + x.lo * y.hi;
  return quick_two_sum(p.hi, p.lo);
}

inline dd operator/(const dd& x, double k) noexcept {
  const double q1 = x.hi / k;
  const dd p = two_prod(q1, k);
  const dd r = x - p;
  const double q2 = r.hi / k;
  return quick_two_sum(q1, q2);
}

struct ddc {
  dd re;
  dd im;
};

inline ddc operator+(const ddc& a, const ddc& b) noexcept { return {a.re + b.re, a.im + b.im}; }
inline ddc operator*(const ddc& a, const ddc& b) noexcept {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

}  // namespace gtheta::detail

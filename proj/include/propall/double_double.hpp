#pragma once

#include <cmath>

namespace propall {

// Compensated double-double value: hi + lo with |lo| <= ulp(hi)/2.
// Roughly 106 bits of mantissa; used only by the verification oracles.
struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  DoubleDouble() = default;
  DoubleDouble(double h) : hi(h) {}
  DoubleDouble(double h, double l) : hi(h), lo(l) {}

  double to_double() const { return hi + lo; }
};

namespace dd {

inline DoubleDouble two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

// Requires |a| >= |b| (or a == 0).
inline DoubleDouble quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

inline DoubleDouble two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline DoubleDouble add(const DoubleDouble& a, const DoubleDouble& b) {
  DoubleDouble s = two_sum(a.hi, b.hi);
  const DoubleDouble t = two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline DoubleDouble add(const DoubleDouble& a, double b) {
  DoubleDouble s = two_sum(a.hi, b);
  s.lo += a.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline DoubleDouble neg(const DoubleDouble& a) { return {-a.hi, -a.lo}; }

inline DoubleDouble sub(const DoubleDouble& a, const DoubleDouble& b) { return add(a, neg(b)); }
inline DoubleDouble sub(const DoubleDouble& a, double b) { return add(a, -b); }

inline DoubleDouble mul(const DoubleDouble& a, const DoubleDouble& b) {
  DoubleDouble p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

inline DoubleDouble mul(const DoubleDouble& a, double b) {
  DoubleDouble p = two_prod(a.hi, b);
  p.lo += a.lo * b;
  return quick_two_sum(p.hi, p.lo);
}

inline DoubleDouble div(const DoubleDouble& a, const DoubleDouble& b) {
  const double q1 = a.hi / b.hi;
  DoubleDouble r = sub(a, mul(b, q1));
  const double q2 = r.hi / b.hi;
  r = sub(r, mul(b, q2));
  const double q3 = r.hi / b.hi;
  DoubleDouble q = quick_two_sum(q1, q2);
  return add(q, q3);
}

inline DoubleDouble div(const DoubleDouble& a, double b) { return div(a, DoubleDouble(b)); }

inline DoubleDouble ldexp(const DoubleDouble& a, int n) {
  return {std::ldexp(a.hi, n), std::ldexp(a.lo, n)};
}

// exp(a). Accurate to ~1e-29 relative for |a| <= 709; returns 0 below the
// double underflow point.
DoubleDouble exp(const DoubleDouble& a);

// expm1(a), cancellation-free for small |a|.
DoubleDouble expm1(const DoubleDouble& a);

// log(a); a must be positive.
DoubleDouble log(const DoubleDouble& a);

// log(1 + a); a must exceed -1. Keeps full precision for tiny |a|.
DoubleDouble log1p(const DoubleDouble& a);

// log(1 + exp(r)) for a plain double logit.
DoubleDouble log1p_exp(double r);

}  // namespace dd

}  // namespace propall

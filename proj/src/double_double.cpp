#include "propall/double_double.hpp"

#include <limits>
#include <stdexcept>

namespace propall::dd {

namespace {

// ln(2) split across two doubles (sum is correct to ~1e-33).
const DoubleDouble kLn2{6.931471805599452862e-01, 2.319046813846299558e-17};

constexpr double kSeriesEps = 1e-35;

}  // namespace

DoubleDouble exp(const DoubleDouble& a) {
  if (a.hi > 709.8) return {std::numeric_limits<double>::infinity(), 0.0};
  if (a.hi < -745.2) return {0.0, 0.0};

  const double m = std::round(a.hi / kLn2.hi);
  const DoubleDouble r = sub(a, mul(kLn2, m));  // |r| <= ~0.347

  DoubleDouble term{1.0};
  DoubleDouble sum{1.0};
  for (int n = 1; n < 64; ++n) {
    term = div(mul(term, r), static_cast<double>(n));
    sum = add(sum, term);
    if (std::fabs(term.hi) < kSeriesEps * std::fabs(sum.hi)) break;
  }
  return ldexp(sum, static_cast<int>(m));
}

DoubleDouble expm1(const DoubleDouble& a) {
  if (a.hi > 0.5 || a.hi < -0.5) return sub(exp(a), 1.0);
  DoubleDouble term = a;
  DoubleDouble sum = a;
  for (int n = 2; n < 64; ++n) {
    term = div(mul(term, a), static_cast<double>(n));
    sum = add(sum, term);
    if (std::fabs(term.hi) < kSeriesEps * std::fabs(sum.hi) + 1e-320) break;
  }
  return sum;
}

DoubleDouble log(const DoubleDouble& a) {
  if (!(a.hi > 0.0)) throw std::domain_error("dd::log: argument must be positive");
  int e = 0;
  const double f = std::frexp(a.hi, &e);  // a = (f + lo*2^-e) * 2^e, f in [0.5, 1)
  const DoubleDouble fa{f, std::ldexp(a.lo, -e)};

  // Newton iteration on y -> y + f*exp(-y) - 1, seeded from double log.
  DoubleDouble y{std::log(f)};
  for (int i = 0; i < 2; ++i) {
    y = add(y, sub(mul(fa, exp(neg(y))), 1.0));
  }
  return add(y, mul(kLn2, static_cast<double>(e)));
}

DoubleDouble log1p(const DoubleDouble& a) {
  if (a.hi >= 0.5 || a.hi <= -0.375) return log(add(a, 1.0));
  // atanh form: log1p(x) = 2*(u + u^3/3 + u^5/5 + ...), u = x/(2+x), |u| <= 0.24.
  const DoubleDouble u = div(a, add(a, 2.0));
  const DoubleDouble u2 = mul(u, u);
  DoubleDouble term = u;
  DoubleDouble sum = u;
  for (int n = 3; n < 200; n += 2) {
    term = mul(term, u2);
    const DoubleDouble c = div(term, static_cast<double>(n));
    sum = add(sum, c);
    if (std::fabs(c.hi) < kSeriesEps * std::fabs(sum.hi) + 1e-320) break;
  }
  return mul(sum, 2.0);
}

DoubleDouble log1p_exp(double r) {
  if (r <= 0.0) return log1p(exp(DoubleDouble(r)));
  return add(log1p(exp(DoubleDouble(-r))), r);
}

}  // namespace propall::dd

#include "malsched/bracket.hpp"

#include <stdexcept>

namespace malsched {

namespace {

// Enclosure of atanh(z) for 0 <= z < 1 from the odd power series
// sum z^(2k+1)/(2k+1), truncated once the tail bound
// z^(2K+1) / ((2K+1)(1 - z^2)) drops below half_width.
Interval atanh_bracket(const Rational& z, const Rational& half_width) {
  Interval out{Rational(0), Rational(0)};
  if (z.is_zero()) return out;
  const Rational z2 = z * z;
  const Rational geom = Rational(1) / (Rational(1) - z2);
  Rational sum(0);
  Rational zp = z;  // z^(2K+1) for the next unadded term
  long k = 0;
  while (true) {
    Rational tail = zp * geom / Rational(2 * k + 1);
    if (tail <= half_width) {
      out.lo = sum;
      out.hi = sum + tail;
      return out;
    }
    sum += zp / Rational(2 * k + 1);
    zp *= z2;
    ++k;
  }
}

// ln of m in [1, 2) via ln m = 2 atanh((m-1)/(m+1)).
Interval ln_mantissa(const Rational& m, const Rational& width) {
  Rational z = (m - Rational(1)) / (m + Rational(1));
  Interval a = atanh_bracket(z, width / Rational(4));
  return Interval{a.lo + a.lo, a.hi + a.hi};
}

}  // namespace

Interval ln_bracket(const Rational& x, const Rational& width) {
  if (x.sign() <= 0) throw std::domain_error("ln_bracket: argument must be positive");
  if (width.sign() <= 0) throw std::domain_error("ln_bracket: width must be positive");
  if (x == Rational(1)) return Interval{Rational(0), Rational(0)};
  if (x < Rational(1)) {
    Interval b = ln_bracket(Rational(1) / x, width);
    return Interval{-b.hi, -b.lo};
  }
  // x = m * 2^e with m in [1, 2); ln x = e ln 2 + ln m.
  Rational m = x;
  long e = 0;
  while (m >= Rational(2)) {
    m /= Rational(2);
    ++e;
  }
  if (e == 0) return ln_mantissa(m, width);
  Interval l2 = ln_mantissa(Rational(2), width / Rational(2 * e));
  Interval lm = ln_mantissa(m, width / Rational(2));
  Rational fe(e);
  return Interval{fe * l2.lo + lm.lo, fe * l2.hi + lm.hi};
}

Interval sqrt_bracket(const Rational& x, const Rational& width) {
  if (x.sign() < 0) throw std::domain_error("sqrt_bracket: argument must be non-negative");
  if (width.sign() <= 0) throw std::domain_error("sqrt_bracket: width must be positive");
  if (x.is_zero()) return Interval{Rational(0), Rational(0)};
  // sqrt(a/b) = sqrt(a b k^2) / (b k); an integer square root of the scaled
  // numerator gives an enclosure of width 1/(b k).
  const mpz_class a = x.raw().get_num();
  const mpz_class b = x.raw().get_den();
  const mpz_class wn = width.raw().get_num();
  const mpz_class wd = width.raw().get_den();
  mpz_class k;
  mpz_cdiv_q(k.get_mpz_t(), wd.get_mpz_t(), mpz_class(wn * b).get_mpz_t());
  if (k < 1) k = 1;
  mpz_class scaled = a * b * k * k;
  mpz_class r = sqrt(scaled);  // floor square root
  mpz_class den = b * k;
  Rational lo{mpq_class(r, den)};
  if (r * r == scaled) return Interval{lo, lo};
  return Interval{lo, Rational(mpq_class(r + 1, den))};
}

Interval add(const Interval& a, const Interval& b) {
  return Interval{a.lo + b.lo, a.hi + b.hi};
}

Interval mul_pos(const Interval& a, const Interval& b) {
  if (a.lo.sign() < 0 || b.lo.sign() < 0)
    throw std::domain_error("mul_pos: operands must be non-negative");
  return Interval{a.lo * b.lo, a.hi * b.hi};
}

Interval div_pos(const Interval& a, const Interval& b) {
  if (a.lo.sign() < 0 || b.lo.sign() <= 0)
    throw std::domain_error("div_pos: operands must be positive");
  return Interval{a.lo / b.hi, a.hi / b.lo};
}

Rational alpha_for(unsigned long n) {
  if (n < 16) return Rational(1, 2);
  const Rational w = Rational(1, 1000000000);  // 1e-9 per component
  Interval ln_n = ln_bracket(Rational(static_cast<long>(n)), w);
  // ln is increasing, so ln(ln n) lies between ln of the two endpoints.
  Interval lo_part = ln_bracket(ln_n.lo, w);
  Interval hi_part = ln_bracket(ln_n.hi, w);
  Interval lnln{lo_part.lo, hi_part.hi};  // positive: n >= 16 => ln n > e
  Interval alpha = div_pos(mul_pos(lnln, lnln), ln_n);
  Rational mid = (alpha.lo + alpha.hi) / Rational(2);
  // Round to denominator 1e7: any rational near the bracket works (the
  // inequalities hold for every alpha in (0,1)); a small denominator keeps
  // downstream exact arithmetic light.
  const Rational grid(10000000);
  Rational rounded = (mid * grid + Rational(1, 2)).floor() / grid;
  if (rounded.sign() <= 0 || rounded >= Rational(1))
    throw std::logic_error("alpha_for: computed alpha left (0,1)");
  return rounded;
}

long seq_multiplier(unsigned long n, const Rational& alpha) {
  if (alpha.sign() <= 0 || alpha >= Rational(1))
    throw std::domain_error("seq_multiplier: alpha must be in (0,1)");
  Rational acc(static_cast<long>(n));
  long m = 0;
  while (acc >= Rational(1)) {
    acc *= alpha;
    ++m;
  }
  return m < 1 ? 1 : m;
}

Interval seq_multiplier_bracket(unsigned long n, const Rational& alpha,
                                const Rational& width) {
  if (n < 2) throw std::domain_error("seq_multiplier_bracket: n must be >= 2");
  if (alpha.sign() <= 0 || alpha >= Rational(1))
    throw std::domain_error("seq_multiplier_bracket: alpha must be in (0,1)");
  Rational w = width / Rational(4);
  while (true) {
    Interval num = ln_bracket(Rational(static_cast<long>(n)), w);
    Interval den = ln_bracket(Rational(1) / alpha, w);
    Interval q = div_pos(num, den);
    if (q.width() <= width) return q;
    w /= Rational(4);
  }
}

}  // namespace malsched

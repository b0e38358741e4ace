#pragma once

#include "malsched/rational.hpp"

namespace malsched {

// Rational enclosure [lo, hi] of an irrational value. All checks against
// irrational constants (ln n, sqrt 3, ...) go through such brackets so every
// assertion in the project stays an exact rational comparison.
struct Interval {
  Rational lo, hi;
  Rational width() const { return hi - lo; }
};

// Enclosure of ln(x) with hi - lo <= width; x > 0, width > 0. Computed from
// the atanh series with an explicit remainder bound (no floating point).
Interval ln_bracket(const Rational& x, const Rational& width);

// Enclosure of sqrt(x) with hi - lo <= width; x >= 0, width > 0. Computed via
// integer square roots of a scaled numerator.
Interval sqrt_bracket(const Rational& x, const Rational& width);

// Interval arithmetic helpers (operands assumed positive where division or
// multiplication signs would otherwise flip the endpoints).
Interval add(const Interval& a, const Interval& b);
Interval mul_pos(const Interval& a, const Interval& b);
Interval div_pos(const Interval& a, const Interval& b);

// The working alpha for an n-job set: a rational stand-in for
// (ln ln n)^2 / ln n (bracket midpoint rounded to denominator 1e7), clamped
// to 1/2 for n < 16 where that expression leaves (0, 1). Always in (0, 1).
Rational alpha_for(unsigned long n);

// Smallest integer m >= 1 with alpha^m * n < 1, i.e. the exact step count of
// the shrink-by-alpha counting argument: ceil(ln n / ln(1/alpha)) bumped by
// one when n is exactly a power of 1/alpha. Exact rational arithmetic only.
long seq_multiplier(unsigned long n, const Rational& alpha);

// Bracket of ln n / ln(1/alpha) (the real-number multiplier in the bound
// |A| <= (ln n / ln(1/alpha)) * seq), with hi - lo <= width. n >= 2.
Interval seq_multiplier_bracket(unsigned long n, const Rational& alpha,
                                const Rational& width);

}  // namespace malsched

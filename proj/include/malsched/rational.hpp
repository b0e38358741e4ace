#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>

namespace malsched {

// Exact arbitrary-precision rational, the only number type used by the
// simulator. Thin wrapper over GMP's mpq_class pinning the canonical form
// (lowest terms, positive denominator) and the text format shared by every
// file format of this project: "7", "-3/4", "1/27".
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}  // NOLINT: implicit by design, mirrors int literals
  Rational(long num, long den);
  explicit Rational(mpq_class q) : v_(std::move(q)) { v_.canonicalize(); }

  // Parses "num" or "num/den" with optional leading '-'. Throws
  // std::invalid_argument on malformed text or zero denominator.
  static Rational parse(const std::string& text);

  // Canonical text form; parse(str()) round-trips bit-exactly.
  std::string str() const;

  // Decimal rendering with `significant` digits (round half away from zero),
  // for human-facing CSV columns. Never used for computation.
  std::string decimal(int significant = 12) const;

  std::string numerator_str() const;
  std::string denominator_str() const;

  bool is_zero() const { return mpq_sgn(v_.get_mpq_t()) == 0; }
  int sign() const { return mpq_sgn(v_.get_mpq_t()); }
  bool is_integer() const { return v_.get_den() == 1; }

  Rational abs() const;
  // Largest integer <= value / smallest integer >= value, as Rationals.
  Rational floor() const;
  Rational ceil() const;
  // Integer power (exponent may be negative; value must be nonzero then).
  Rational pow(long exponent) const;

  // Exact conversion to a machine integer; throws std::domain_error if the
  // value is not an integer or does not fit.
  long to_long() const;

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { Rational r; r.v_ = -a.v_; return r; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

  const mpq_class& raw() const { return v_; }

 private:
  mpq_class v_;
};

inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace malsched

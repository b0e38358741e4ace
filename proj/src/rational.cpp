#include "malsched/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace malsched {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  v_ /= o.v_;
  return *this;
}

Rational Rational::parse(const std::string& text) {
  std::string s = text;
  bool negative = false;
  if (!s.empty() && s[0] == '-') {
    negative = true;
    s.erase(0, 1);
  }
  std::string num = s;
  std::string den = "1";
  if (auto slash = s.find('/'); slash != std::string::npos) {
    num = s.substr(0, slash);
    den = s.substr(slash + 1);
  }
  if (!all_digits(num) || !all_digits(den))
    throw std::invalid_argument("Rational: malformed text '" + text + "'");
  mpz_class n(num), d(den);
  if (d == 0) throw std::invalid_argument("Rational: zero denominator in '" + text + "'");
  Rational r;
  r.v_ = mpq_class(negative ? mpz_class(-n) : n, d);
  r.v_.canonicalize();
  return r;
}

std::string Rational::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::string Rational::numerator_str() const { return v_.get_num().get_str(); }
std::string Rational::denominator_str() const { return v_.get_den().get_str(); }

Rational Rational::abs() const {
  Rational r;
  r.v_ = ::abs(v_);
  return r;
}

Rational Rational::floor() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
  Rational r;
  r.v_ = mpq_class(q);
  return r;
}

Rational Rational::ceil() const {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
  Rational r;
  r.v_ = mpq_class(q);
  return r;
}

Rational Rational::pow(long exponent) const {
  if (exponent == 0) return Rational(1);
  bool invert = exponent < 0;
  unsigned long e = invert ? static_cast<unsigned long>(-exponent)
                           : static_cast<unsigned long>(exponent);
  if (invert && is_zero()) throw std::domain_error("Rational: 0 to a negative power");
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), v_.get_num().get_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), v_.get_den().get_mpz_t(), e);
  Rational r;
  r.v_ = invert ? mpq_class(den, num) : mpq_class(num, den);
  r.v_.canonicalize();
  return r;
}

long Rational::to_long() const {
  if (!is_integer()) throw std::domain_error("Rational: " + str() + " is not an integer");
  if (!v_.get_num().fits_slong_p())
    throw std::domain_error("Rational: " + str() + " exceeds long range");
  return v_.get_num().get_si();
}

std::string Rational::decimal(int significant) const {
  if (significant < 1) significant = 1;
  if (is_zero()) return "0";
  mpz_class num = ::abs(v_.get_num());
  const mpz_class& den = v_.get_den();

  // Decimal exponent e with 10^e <= |value| < 10^(e+1).
  long e = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 10));
  auto cmp_pow10 = [&](long k) {
    // compares |value| against 10^k
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(k >= 0 ? k : -k));
    return k >= 0 ? cmp(num, den * p) : cmp(num * p, den);
  };
  while (cmp_pow10(e) < 0) --e;
  while (cmp_pow10(e + 1) >= 0) ++e;

  // Round |value| * 10^(significant-1-e) to an integer, half away from zero.
  long shift = significant - 1 - e;
  mpz_class sn = num, sd = den;
  if (shift >= 0) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(shift));
    sn *= p;
  } else {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(-shift));
    sd *= p;
  }
  mpz_class q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), sn.get_mpz_t(), sd.get_mpz_t());
  if (r * 2 >= sd) q += 1;
  std::string digits = q.get_str();
  if (static_cast<int>(digits.size()) > significant) {  // rounding carried over
    ++e;
    digits.pop_back();  // carry yields a trailing zero; drop it
  }
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();

  std::string out;
  if (sign() < 0) out += '-';
  if (e >= 0 && e < significant + 3 && e <= 20) {
    // plain notation
    if (e + 1 >= static_cast<long>(digits.size())) {
      out += digits;
      out.append(static_cast<size_t>(e + 1 - digits.size()), '0');
    } else {
      out += digits.substr(0, static_cast<size_t>(e + 1));
      out += '.';
      out += digits.substr(static_cast<size_t>(e + 1));
    }
  } else if (e < 0 && e >= -4) {
    out += "0.";
    out.append(static_cast<size_t>(-e - 1), '0');
    out += digits;
  } else {
    out += digits.substr(0, 1);
    if (digits.size() > 1) {
      out += '.';
      out += digits.substr(1);
    }
    out += 'e';
    out += (e < 0 ? "-" : "+") + std::to_string(e < 0 ? -e : e);
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace malsched

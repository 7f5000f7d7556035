#include "wg/rational.hh"

#include <cmath>

#include "wg/errors.hh"

namespace wg {

namespace mp = boost::multiprecision;

Rational::Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
  if (den_ == 0) throw domain_error("Rational: zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

Rational Rational::from_decimal(const std::string& s) {
  if (s.empty()) throw domain_error("Rational::from_decimal: empty string");
  std::string t = s;
  long exp10 = 0;
  auto epos = t.find_first_of("eE");
  if (epos != std::string::npos) {
    exp10 = std::stol(t.substr(epos + 1));
    t = t.substr(0, epos);
  }
  bool neg = false;
  size_t i = 0;
  if (t[0] == '+' || t[0] == '-') {
    neg = t[0] == '-';
    i = 1;
  }
  BigInt mant = 0;
  long frac_digits = 0;
  bool seen_dot = false, seen_digit = false;
  for (; i < t.size(); ++i) {
    char c = t[i];
    if (c == '.') {
      if (seen_dot) throw domain_error("Rational::from_decimal: bad literal " + s);
      seen_dot = true;
    } else if (c >= '0' && c <= '9') {
      mant = mant * 10 + (c - '0');
      if (seen_dot) ++frac_digits;
      seen_digit = true;
    } else {
      throw domain_error("Rational::from_decimal: bad literal " + s);
    }
  }
  if (!seen_digit) throw domain_error("Rational::from_decimal: bad literal " + s);
  if (neg) mant = -mant;
  long e = exp10 - frac_digits;
  BigInt num = mant, den = 1;
  if (e > 0)
    num *= mp::pow(BigInt(10), static_cast<unsigned>(e));
  else if (e < 0)
    den = mp::pow(BigInt(10), static_cast<unsigned>(-e));
  return Rational(std::move(num), std::move(den));
}

Rational& Rational::operator+=(const Rational& o) {
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ *= o.den_;
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  num_ = num_ * o.den_ - o.num_ * den_;
  den_ *= o.den_;
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw domain_error("Rational: division by zero");
  num_ *= o.den_;
  den_ *= o.num_;
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  return *this;
}

Rational Rational::operator-() const {
  Rational r = *this;
  r.num_ = -r.num_;
  return r;
}

int Rational::cmp(const Rational& o) const {
  BigInt lhs = num_ * o.den_;
  BigInt rhs = o.num_ * den_;
  if (lhs < rhs) return -1;
  if (lhs > rhs) return 1;
  return 0;
}

int Rational::sign() const { return num_ == 0 ? 0 : (num_ < 0 ? -1 : 1); }

Rational Rational::pow(unsigned e) const {
  Rational r(1);
  Rational base = *this;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

Rational Rational::inverse() const {
  if (num_ == 0) throw domain_error("Rational: inverse of zero");
  return Rational(den_, num_);
}

Rational& Rational::reduce() {
  BigInt g = mp::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
  return *this;
}

double Rational::to_double() const {
  if (num_ == 0) return 0.0;
  // Scale so the quotient keeps ~80 significant bits, then ldexp back.
  long nb = static_cast<long>(mp::msb(num_ < 0 ? BigInt(-num_) : num_));
  long db = static_cast<long>(mp::msb(den_));
  long shift = 80 - (nb - db);
  BigInt scaled;
  if (shift >= 0)
    scaled = (num_ << static_cast<unsigned>(shift)) / den_;
  else
    scaled = num_ / (den_ << static_cast<unsigned>(-shift));
  return std::ldexp(scaled.convert_to<double>(), static_cast<int>(-shift));
}

std::string Rational::to_decimal(int digits) const {
  if (digits < 0) throw domain_error("to_decimal: negative digit count");
  bool neg = num_ < 0;
  BigInt n = neg ? BigInt(-num_) : num_;
  BigInt scale = mp::pow(BigInt(10), static_cast<unsigned>(digits));
  BigInt scaled = n * scale;
  BigInt q = scaled / den_, r = scaled % den_;
  // Round half to even on the dropped remainder.
  BigInt twice = r * 2;
  if (twice > den_ || (twice == den_ && (q % 2) != 0)) ++q;
  std::string ds = q.str();
  std::string out;
  if (digits == 0) {
    out = ds;
  } else {
    while (ds.size() <= static_cast<size_t>(digits)) ds.insert(ds.begin(), '0');
    out = ds.substr(0, ds.size() - digits) + "." + ds.substr(ds.size() - digits);
  }
  if (neg && q != 0) out.insert(out.begin(), '-');
  return out;
}

std::string Rational::to_string() const {
  Rational r = *this;
  r.reduce();
  if (r.den_ == 1) return r.num_.str();
  return r.num_.str() + "/" + r.den_.str();
}

}  // namespace wg

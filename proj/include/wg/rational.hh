#ifndef WG_RATIONAL_HH
#define WG_RATIONAL_HH

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace wg {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational that does NOT normalize on every operation.  Euler-product
// accumulation at P = 10^5 multiplies ~10^4 factors into numbers of ~10^5
// digits; a gcd per operation (cpp_rational behavior) is quadratically slow
// there.  Invariant: den > 0.  reduce() is available when a canonical form
// is wanted.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long v) : num_(v), den_(1) {}
  Rational(BigInt n) : num_(std::move(n)), den_(1) {}
  Rational(BigInt n, BigInt d);

  static Rational from_decimal(const std::string& s);  // "0.25", "-3", "1e-3"

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const;

  // Sign of *this - o, by cross multiplication.
  int cmp(const Rational& o) const;
  friend bool operator<(const Rational& a, const Rational& b) { return a.cmp(b) < 0; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.cmp(b) <= 0; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.cmp(b) > 0; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.cmp(b) >= 0; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.cmp(b) == 0; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.cmp(b) != 0; }

  int sign() const;
  Rational pow(unsigned e) const;
  Rational inverse() const;
  Rational& reduce();

  // Nearest double; works for operands far beyond double range.
  double to_double() const;

  // Round-half-even decimal string with the given number of fractional digits.
  std::string to_decimal(int digits) const;

  std::string to_string() const;  // "num/den", reduced

 private:
  BigInt num_, den_;
};

}  // namespace wg

#endif  // WG_RATIONAL_HH

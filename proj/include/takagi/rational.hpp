#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace takagi {

using Int = boost::multiprecision::cpp_int;

// Exact rational number in canonical form: gcd(num, den) == 1, den >= 1,
// sign carried by the numerator.  Zero is 0/1.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}        // NOLINT(google-explicit-constructor)
  Rational(const Int& n) : num_(n), den_(1) {}       // NOLINT(google-explicit-constructor)
  Rational(Int n, Int d);

  const Int& num() const { return num_; }
  const Int& den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return num_ == 0 ? 0 : (num_ < 0 ? -1 : 1); }

  Int floor() const;
  Int ceil() const;
  // x - floor(x), always in [0, 1)
  Rational frac_mod1() const;
  Rational abs() const;

  double to_double() const;

  // "p/q" with the "/q" omitted when q == 1
  std::string str() const;
  // accepts "p" or "p/q" with optional sign; throws std::invalid_argument
  static Rational parse(std::string_view s);
  // exact binary expansion of a finite double
  static Rational from_double(double x);

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.num_ * b.den_ < b.num_ * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  void normalize();
  Int num_, den_;
};

inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

// base^e for e >= 0
Int pow_int(const Int& base, unsigned long e);

// A double together with a certified absolute error radius: the represented
// quantity lies in [value - error_bound, value + error_bound].
struct BoundedValue {
  double value = 0.0;
  double error_bound = 0.0;
};

}  // namespace takagi

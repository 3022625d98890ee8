#include "takagi/rational.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <ostream>

namespace takagi {

namespace mp = boost::multiprecision;

Rational::Rational(Int n, Int d) : num_(std::move(n)), den_(std::move(d)) {
  if (den_ == 0) throw std::invalid_argument("rational: zero denominator");
  normalize();
}

void Rational::normalize() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_ == 0) {
    den_ = 1;
    return;
  }
  Int g = mp::gcd(num_ < 0 ? Int(-num_) : num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Int Rational::floor() const {
  if (num_ >= 0) return num_ / den_;
  return -((-num_ + den_ - 1) / den_);
}

Int Rational::ceil() const { return -(-*this).floor(); }

Rational Rational::frac_mod1() const {
  Rational r = *this;
  r -= Rational(floor());
  return r;
}

Rational Rational::abs() const { return num_ < 0 ? -*this : *this; }

double Rational::to_double() const {
  mp::cpp_rational q(num_, den_);
  return q.convert_to<double>();
}

std::string Rational::str() const {
  std::string s = num_.str();
  if (den_ != 1) {
    s += '/';
    s += den_.str();
  }
  return s;
}

Rational Rational::parse(std::string_view s) {
  auto bad = [&] { throw std::invalid_argument("rational: cannot parse '" + std::string(s) + "'"); };
  if (s.empty()) bad();
  auto slash = s.find('/');
  auto parse_int = [&](std::string_view t) -> Int {
    if (t.empty()) bad();
    std::size_t i = 0;
    if (t[0] == '+' || t[0] == '-') i = 1;
    if (i == t.size()) bad();
    for (std::size_t j = i; j < t.size(); ++j)
      if (t[j] < '0' || t[j] > '9') bad();
    return Int(std::string(t));
  };
  if (slash == std::string_view::npos) return Rational(parse_int(s));
  Int p = parse_int(s.substr(0, slash));
  Int q = parse_int(s.substr(slash + 1));
  if (q == 0) throw std::invalid_argument("rational: zero denominator");
  return Rational(p, q);
}

Rational Rational::from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("rational: non-finite double");
  if (x == 0.0) return Rational();
  int e = 0;
  double fr = std::frexp(x, &e);                       // x = fr * 2^e, |fr| in [0.5, 1)
  auto mant = static_cast<long long>(std::ldexp(fr, 53));  // exact 53-bit integer
  e -= 53;
  Int n(mant);
  if (e >= 0) return Rational(n * pow_int(2, static_cast<unsigned long>(e)));
  return Rational(n, pow_int(2, static_cast<unsigned long>(-e)));
}

Rational Rational::operator-() const {
  Rational r = *this;
  r.num_ = -r.num_;
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ *= o.den_;
  normalize();
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  num_ = num_ * o.den_ - o.num_ * den_;
  den_ *= o.den_;
  normalize();
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  normalize();
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw std::invalid_argument("rational: division by zero");
  num_ *= o.den_;
  den_ *= o.num_;
  normalize();
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Int pow_int(const Int& base, unsigned long e) {
  Int r = 1;
  Int b = base;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

}  // namespace takagi

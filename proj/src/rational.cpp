#include "smg/rational.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>

namespace smg {

namespace {
BigInt big_gcd(BigInt a, BigInt b) { return boost::multiprecision::gcd(a, b); }
}  // namespace

Rational::Rational(long long v) : num_(v), den_(1) {
  if (v < 0) throw std::invalid_argument("Rational: negative value");
}

Rational::Rational(long long num, long long den) : Rational(BigInt(num), BigInt(den)) {}

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_ == 0) throw std::invalid_argument("Rational: zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_ < 0) throw std::invalid_argument("Rational: negative value");
  normalize();
}

void Rational::normalize() {
  if (num_ == 0) {
    den_ = 1;
    return;
  }
  BigInt g = big_gcd(num_, den_);
  num_ /= g;
  den_ /= g;
}

Rational Rational::parse(std::string_view s) {
  auto r = try_parse(s);
  if (!r) throw std::invalid_argument("Rational: cannot parse '" + std::string(s) + "'");
  return *r;
}

std::optional<Rational> Rational::try_parse(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::string nums, dens = "1";
  auto slash = s.find('/');
  if (slash == std::string_view::npos) {
    nums = std::string(s);
  } else {
    nums = std::string(s.substr(0, slash));
    dens = std::string(s.substr(slash + 1));
  }
  auto digits = [](const std::string& t) {
    if (t.empty()) return false;
    for (char c : t)
      if (c < '0' || c > '9') return false;
    return true;
  };
  if (!digits(nums) || !digits(dens)) return std::nullopt;
  BigInt n(nums), d(dens);
  if (d == 0) return std::nullopt;
  return Rational(n, d);
}

std::string Rational::str() const {
  return num_.str() + "/" + den_.str();
}

double Rational::approx() const {
  return static_cast<double>(boost::multiprecision::cpp_rational(num_) /
                             boost::multiprecision::cpp_rational(den_));
}

Rational& Rational::operator+=(const Rational& o) {
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ *= o.den_;
  normalize();
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  BigInt n = num_ * o.den_ - o.num_ * den_;
  if (n < 0) throw std::domain_error("Rational: subtraction would be negative");
  num_ = n;
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
  if (o.num_ == 0) throw std::domain_error("Rational: division by zero");
  num_ *= o.den_;
  den_ *= o.num_;
  normalize();
  return *this;
}

std::strong_ordering Rational::operator<=>(const Rational& o) const {
  BigInt lhs = num_ * o.den_;
  BigInt rhs = o.num_ * den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rational avg(const Rational& a, const Rational& b) {
  return (a + b) / Rational(2);
}

Rational pow(const Rational& base, unsigned exp) {
  Rational r(1);
  for (unsigned i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace smg

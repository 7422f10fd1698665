#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace smg {

using BigInt = boost::multiprecision::cpp_int;

// Exact nonnegative rational, always in canonical form (gcd(p,q)=1, q>=1).
// Capital in the game is never negative, so subtraction is partial and
// construction of a negative value throws.
class Rational {
 public:
  Rational() = default;
  Rational(long long v);
  Rational(long long num, long long den);
  Rational(BigInt num, BigInt den);

  // Parses canonical or non-canonical "p/q" (or bare "p"); normalizes.
  static Rational parse(std::string_view s);
  static std::optional<Rational> try_parse(std::string_view s);

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  std::string str() const;  // canonical "p/q"; zero renders as "0/1"
  double approx() const;    // display only, never used for decisions

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);  // throws if the result would be negative
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);  // throws on division by zero

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  std::strong_ordering operator<=>(const Rational& o) const;
  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }

 private:
  void normalize();
  BigInt num_ = 0;
  BigInt den_ = 1;
};

Rational avg(const Rational& a, const Rational& b);
Rational pow(const Rational& base, unsigned exp);

}  // namespace smg

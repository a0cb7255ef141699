#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace hyperspectra {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational number in reduced form with a positive denominator.
// Densities, alpha values and every closed-form bound are carried as Rational.
class Rational {
 public:
  Rational() = default;
  Rational(long long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  explicit Rational(const BigInt& value) : value_(value) {}
  Rational(const BigInt& numerator, const BigInt& denominator);

  // Accepts "p/q", integers, and finite decimals ("2.5", "-0.125"). Decimals are
  // converted exactly over a power-of-ten denominator; `was_decimal` reports it.
  static Rational parse(std::string_view text, bool* was_decimal = nullptr);

  BigInt numerator() const;
  BigInt denominator() const;

  bool is_zero() const { return value_ == 0; }
  bool is_integer() const { return denominator() == 1; }
  int sign() const { return value_.sign(); }

  // Always "p/q", also for integers ("2/1").
  std::string str() const;
  double to_double() const;
  long double to_long_double() const;

  Rational reciprocal() const;

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(0) - a; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (a.value_ > b.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  boost::multiprecision::cpp_rational value_{0};
};

// Convenience for exact literals in code and tests.
inline Rational ratio(long long numerator, long long denominator) {
  return Rational(BigInt(numerator), BigInt(denominator));
}

BigInt binomial(long long n, long long k);
BigInt power(const BigInt& base, unsigned exponent);

}  // namespace hyperspectra

#include "hyperspectra/rational.hpp"

#include <cctype>

#include "hyperspectra/errors.hpp"

namespace hyperspectra {

namespace {

BigInt parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw ParseError("malformed number '" + std::string(whole) + "'");
  BigInt out = 0;
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw ParseError("malformed number '" + std::string(whole) + "'");
    }
    out = out * 10 + (c - '0');
  }
  return out;
}

}  // namespace

Rational::Rational(const BigInt& numerator, const BigInt& denominator) {
  if (denominator == 0) throw DomainError("rational with zero denominator");
  value_ = boost::multiprecision::cpp_rational(numerator, denominator);
}

Rational Rational::parse(std::string_view text, bool* was_decimal) {
  if (was_decimal) *was_decimal = false;
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational out;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(body.substr(0, slash), text);
    BigInt den = parse_integer(body.substr(slash + 1), text);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    out = Rational(num, den);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = body.substr(0, dot);
    std::string_view frac_part = body.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) {
      throw ParseError("malformed number '" + std::string(text) + "'");
    }
    BigInt whole = int_part.empty() ? BigInt(0) : parse_integer(int_part, text);
    BigInt frac = frac_part.empty() ? BigInt(0) : parse_integer(frac_part, text);
    BigInt scale = power(BigInt(10), static_cast<unsigned>(frac_part.size()));
    out = Rational(whole * scale + frac, scale);
    if (was_decimal) *was_decimal = true;
  } else {
    out = Rational(parse_integer(body, text));
  }
  return negative ? -out : out;
}

BigInt Rational::numerator() const { return boost::multiprecision::numerator(value_); }
BigInt Rational::denominator() const { return boost::multiprecision::denominator(value_); }

std::string Rational::str() const {
  return numerator().str() + "/" + denominator().str();
}

double Rational::to_double() const { return static_cast<double>(to_long_double()); }

long double Rational::to_long_double() const {
  return value_.convert_to<long double>();
}

Rational Rational::reciprocal() const {
  if (is_zero()) throw DomainError("reciprocal of zero");
  return Rational(denominator(), numerator());
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  value_ /= o.value_;
  return *this;
}

BigInt binomial(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt out = 1;
  for (long long i = 1; i <= k; ++i) {
    out *= (n - k + i);
    out /= i;
  }
  return out;
}

BigInt power(const BigInt& base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

}  // namespace hyperspectra

#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace lshsel {

/// Exact fraction with arbitrary-precision numerator and denominator.
/// Always held in lowest terms with a positive denominator.
class Rational {
 public:
  using Integer = boost::multiprecision::cpp_int;

  Rational() = default;
  Rational(std::int64_t value);  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t numerator, std::int64_t denominator);
  Rational(const Integer& numerator, const Integer& denominator);

  /// Parses "n/d" or "n".
  static Rational parse(std::string_view text);

  Integer numerator() const;
  Integer denominator() const;

  /// "numerator/denominator" in decimal; integers are written as "n/1".
  std::string to_string() const;
  double to_double() const;

  bool is_zero() const;

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  Rational operator-() const;

  friend bool operator==(const Rational& lhs, const Rational& rhs) { return lhs.value_ == rhs.value_; }
  friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs);

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  explicit Rational(boost::multiprecision::cpp_rational value) : value_(std::move(value)) {}


  boost::multiprecision::cpp_rational value_;
};

Rational pow(const Rational& base, unsigned exponent);

/// C(n, k) as an exact integer; zero when k < 0 or k > n.
Rational binomial(int n, int k);

}  // namespace lshsel

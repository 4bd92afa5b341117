#include "lshsel/rational.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace lshsel {

using boost::multiprecision::cpp_rational;

Rational::Rational(std::int64_t value) : value_(value) {}

Rational::Rational(std::int64_t numerator, std::int64_t denominator)
    : Rational(Integer(numerator), Integer(denominator)) {}

Rational::Rational(const Integer& numerator, const Integer& denominator) {
  if (denominator == 0) throw std::domain_error("Rational: zero denominator");
  if (denominator < 0) {
    value_ = cpp_rational(Integer(-numerator), Integer(-denominator));
  } else {
    value_ = cpp_rational(numerator, denominator);
  }
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) {
      return Rational(Integer(std::string(text)), Integer(1));
    }
    return Rational(Integer(std::string(text.substr(0, slash))),
                    Integer(std::string(text.substr(slash + 1))));
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("not a fraction: '" + std::string(text) + "'");
  }
}

Rational::Integer Rational::numerator() const { return boost::multiprecision::numerator(value_); }

Rational::Integer Rational::denominator() const { return boost::multiprecision::denominator(value_); }

std::string Rational::to_string() const {
  return numerator().str() + "/" + denominator().str();
}

double Rational::to_double() const { return value_.convert_to<double>(); }

bool Rational::is_zero() const { return value_ == 0; }

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.value_ == 0) throw std::domain_error("Rational: division by zero");
  value_ /= rhs.value_;
  return *this;
}

Rational Rational::operator-() const { return Rational(cpp_rational(-value_)); }

std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
  if (lhs.value_ < rhs.value_) return std::strong_ordering::less;
  if (lhs.value_ > rhs.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

Rational pow(const Rational& base, unsigned exponent) {
  Rational result(1);
  Rational factor = base;
  while (exponent > 0) {
    if (exponent & 1U) result *= factor;
    exponent >>= 1U;
    if (exponent > 0) factor *= factor;
  }
  return result;
}

Rational binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return Rational(0);
  k = std::min(k, n - k);
  Rational::Integer c = 1;
  for (int i = 1; i <= k; ++i) {
    c *= n - k + i;
    c /= i;
  }
  return Rational(c, 1);
}

}  // namespace lshsel

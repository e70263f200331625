#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace hjale {

/// Exact rational number, always in lowest terms with a positive denominator.
class Fraction {
 public:
  Fraction() = default;
  Fraction(std::int64_t value);  // NOLINT: integers embed implicitly
  Fraction(std::int64_t num, std::int64_t den);
  Fraction(const mpz_class& num, const mpz_class& den);
  explicit Fraction(mpq_class value);

  /// Parses "p/q", "n", or "-p/q". Throws std::invalid_argument on malformed
  /// text or a zero denominator.
  static Fraction parse(std::string_view text);

  /// Exact value of a decimal literal such as "2.5" or "-1e-3".
  static Fraction from_decimal(std::string_view text);

  mpz_class num() const { return value_.get_num(); }
  mpz_class den() const { return value_.get_den(); }
  const mpq_class& raw() const { return value_; }

  /// Numerator/denominator as int64; throws std::overflow_error if they do not fit.
  std::int64_t num_i64() const;
  std::int64_t den_i64() const;

  double to_double() const { return value_.get_d(); }
  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return value_.get_den() == 1; }

  /// "p/q", or "n" when the denominator is one.
  std::string str() const;

  Fraction operator-() const { return Fraction(mpq_class(-value_)); }
  Fraction& operator+=(const Fraction& o);
  Fraction& operator-=(const Fraction& o);
  Fraction& operator*=(const Fraction& o);
  Fraction& operator/=(const Fraction& o);

  friend Fraction operator+(Fraction a, const Fraction& b) { return a += b; }
  friend Fraction operator-(Fraction a, const Fraction& b) { return a -= b; }
  friend Fraction operator*(Fraction a, const Fraction& b) { return a *= b; }
  friend Fraction operator/(Fraction a, const Fraction& b) { return a /= b; }

  friend bool operator==(const Fraction& a, const Fraction& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_{0};
};

Fraction abs(const Fraction& f);

std::ostream& operator<<(std::ostream& os, const Fraction& f);

}  // namespace hjale

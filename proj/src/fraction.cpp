#include "hjale/fraction.hpp"

#include <cctype>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace hjale {

namespace {

bool is_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  if (!is_integer_text(s)) {
    throw std::invalid_argument("malformed fraction '" + std::string(whole) + "'");
  }
  std::string digits(s[0] == '+' ? s.substr(1) : s);
  return mpz_class(digits, 10);
}

std::int64_t to_i64(const mpz_class& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits");
  static_assert(sizeof(long) == sizeof(std::int64_t));
  return z.get_si();
}

}  // namespace

Fraction::Fraction(std::int64_t value) : value_(mpz_class(static_cast<long>(value))) {}

Fraction::Fraction(std::int64_t num, std::int64_t den)
    : Fraction(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den))) {}

Fraction::Fraction(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Fraction::Fraction(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Fraction Fraction::parse(std::string_view text) {
  const std::string_view s = trim(text);
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return Fraction(parse_integer(s, text), mpz_class(1));
  const mpz_class num = parse_integer(trim(s.substr(0, slash)), text);
  const mpz_class den = parse_integer(trim(s.substr(slash + 1)), text);
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Fraction(num, den);
}

Fraction Fraction::from_decimal(std::string_view text) {
  const std::string_view s = trim(text);
  std::string mantissa;
  long exponent = 0;
  std::size_t i = 0;
  bool negative = false;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) negative = s[i++] == '-';
  bool seen_digit = false;
  bool seen_point = false;
  for (; i < s.size(); ++i) {
    const char ch = s[i];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      mantissa.push_back(ch);
      seen_digit = true;
      if (seen_point) --exponent;
    } else if (ch == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') {
      throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
    }
    const std::string_view exp_text = s.substr(i + 1);
    if (!is_integer_text(exp_text)) {
      throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
    }
    exponent += std::stol(std::string(exp_text));
  }
  mpz_class num(mantissa, 10);
  if (negative) num = -num;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  return exponent < 0 ? Fraction(num, scale) : Fraction(num * scale, mpz_class(1));
}

std::int64_t Fraction::num_i64() const { return to_i64(value_.get_num()); }
std::int64_t Fraction::den_i64() const { return to_i64(value_.get_den()); }

std::string Fraction::str() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Fraction& Fraction::operator+=(const Fraction& o) {
  value_ += o.value_;
  return *this;
}
Fraction& Fraction::operator-=(const Fraction& o) {
  value_ -= o.value_;
  return *this;
}
Fraction& Fraction::operator*=(const Fraction& o) {
  value_ *= o.value_;
  return *this;
}
Fraction& Fraction::operator/=(const Fraction& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  value_ /= o.value_;
  return *this;
}

Fraction abs(const Fraction& f) { return f.sign() < 0 ? -f : f; }

std::ostream& operator<<(std::ostream& os, const Fraction& f) { return os << f.str(); }

}  // namespace hjale

#include "hjale/cfrac.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace hjale {

namespace {

std::vector<Approximant> generate(std::span<const std::int64_t> digits) {
  std::vector<Approximant> out;
  out.reserve(digits.size() + 3);
  out.push_back({0, -1});
  out.push_back({1, 0});
  for (std::size_t j = 1; j <= digits.size(); ++j) {
    const std::int64_t e = digits[j - 1];
    out.push_back({e * out[j].m - out[j - 1].m, e * out[j].n - out[j - 1].n});
  }
  out.push_back({0, 1});
  return out;
}

}  // namespace

HJExpansion hj_expand(std::int64_t p, std::int64_t q) {
  if (!(0 < p && p < q)) {
    throw std::invalid_argument("HJ expansion needs 0 < p < q, got p=" + std::to_string(p) +
                                " q=" + std::to_string(q));
  }
  if (std::gcd(p, q) != 1) {
    throw std::invalid_argument("HJ expansion needs coprime p, q, got p=" + std::to_string(p) +
                                " q=" + std::to_string(q));
  }
  HJExpansion exp{p, q, {}, {}};
  // q/p = e - (e p - q)/p with e = ceil(q/p); continue on p/(e p - q).
  std::int64_t a = q;
  std::int64_t b = p;
  while (b > 0) {
    const std::int64_t e = (a + b - 1) / b;
    exp.digits.push_back(e);
    const std::int64_t next = e * b - a;
    a = b;
    b = next;
  }
  exp.approximants = generate(exp.digits);
  return exp;
}

Fraction eval_negative_cfrac(std::span<const std::int64_t> digits) {
  if (digits.empty()) throw std::invalid_argument("empty continued fraction");
  for (auto e : digits) {
    if (e < 2) throw std::invalid_argument("continued fraction digit below 2");
  }
  // The last approximant of the recurrence is (q, p) with value q/p.
  const auto chain = generate(digits);
  const Approximant& last = chain[digits.size() + 1];
  return Fraction(last.m, last.n);
}

std::vector<Approximant> approximant_pairs(const HJExpansion& exp) { return generate(exp.digits); }

std::int64_t approximant_determinant(std::span<const Approximant> chain, std::size_t j) {
  if (j + 1 >= chain.size()) throw std::out_of_range("approximant index out of range");
  return chain[j].m * chain[j + 1].n - chain[j + 1].m * chain[j].n;
}

bool satisfies_invariants(const HJExpansion& exp) {
  const std::size_t k = exp.digits.size();
  const auto& a = exp.approximants;
  if (k == 0 || a.size() != k + 3) return false;
  if (std::gcd(exp.p, exp.q) != 1 || !(0 < exp.p && exp.p < exp.q)) return false;
  for (auto e : exp.digits) {
    if (e < 2) return false;
  }
  if (a[0] != Approximant{0, -1} || a[1] != Approximant{1, 0} || a[k + 2] != Approximant{0, 1}) {
    return false;
  }
  for (std::size_t j = 1; j <= k; ++j) {
    const std::int64_t e = exp.digits[j - 1];
    if (a[j + 1].m != e * a[j].m - a[j - 1].m || a[j + 1].n != e * a[j].n - a[j - 1].n) return false;
  }
  for (std::size_t j = 0; j <= k; ++j) {
    if (approximant_determinant(a, j) != 1) return false;
  }
  if (a[k + 1] != Approximant{exp.q, exp.p}) return false;
  for (std::size_t j = 1; j <= k + 1; ++j) {
    if (a[j].m <= 0) return false;
    if (j > 1 && a[j].m <= a[j - 1].m) return false;
  }
  return true;
}

}  // namespace hjale

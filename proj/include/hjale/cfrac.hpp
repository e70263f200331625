#pragma once

// Hirzebruch-Jung (negative-regular) continued fractions.
//
// For coprime 0 < p < q the expansion
//
//     q/p = e_1 - 1/(e_2 - 1/(... - 1/e_k)),   e_j >= 2,
//
// is unique. Its approximants (m_j, n_j), j = 0..k+2, are generated by
//
//     (m_0, n_0) = (0, -1),  (m_1, n_1) = (1, 0),
//     m_{j+1} = e_j m_j - m_{j-1},  n_{j+1} = e_j n_j - n_{j-1}   (j = 1..k),
//     (m_{k+2}, n_{k+2}) = (0, 1),
//
// so that (m_{k+1}, n_{k+1}) = (q, p) and n_{j+1}/m_{j+1} is the value of the
// truncated fraction 1/(e_1 - 1/(... - 1/e_j)).  Consecutive approximants are
// unimodular, m_j n_{j+1} - m_{j+1} n_j = 1 for j = 0..k; the closing pair
// (q, p), (0, 1) has determinant q.

#include <cstdint>
#include <span>
#include <vector>

#include "hjale/fraction.hpp"

namespace hjale {

struct Approximant {
  std::int64_t m = 0;
  std::int64_t n = 0;
  friend bool operator==(const Approximant&, const Approximant&) = default;
};

struct HJExpansion {
  std::int64_t p = 0;
  std::int64_t q = 0;
  std::vector<std::int64_t> digits;        // e_1..e_k
  std::vector<Approximant> approximants;   // j = 0..k+2

  std::size_t length() const { return digits.size(); }
  const Approximant& approximant(std::size_t j) const { return approximants.at(j); }
};

/// Expansion of q/p by iterated ceiling division. Throws std::invalid_argument
/// unless gcd(p, q) = 1 and 0 < p < q.
HJExpansion hj_expand(std::int64_t p, std::int64_t q);

/// Exact value of e_1 - 1/(e_2 - ... - 1/e_k). Requires a non-empty sequence
/// with every entry >= 2.
Fraction eval_negative_cfrac(std::span<const std::int64_t> digits);

/// Approximant sequence (m_j, n_j), j = 0..k+2, regenerated from the digits.
std::vector<Approximant> approximant_pairs(const HJExpansion& exp);

/// m_j n_{j+1} - m_{j+1} n_j.
std::int64_t approximant_determinant(std::span<const Approximant> chain, std::size_t j);

/// True when every invariant of the expansion holds (digits >= 2, boundary
/// pairs, recurrence, unimodularity for j = 0..k, final pair (q, p),
/// positivity and strict growth of m_1..m_{k+1}).
bool satisfies_invariants(const HJExpansion& exp);

}  // namespace hjale

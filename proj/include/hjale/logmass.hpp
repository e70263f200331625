#pragma once

// Log-term coefficient and mass of the toric scalar-flat Kähler ALE metrics
// built from a chain of integer labels (m_j, n_j).
//
// Monopole data: levels y_0 > y_1 > ... > y_{k+1} = 0 (y_0 may be +inf) and
// pairs (a_j, b_j) = (m_j - m_{j+1}, n_j - n_{j+1}). With c_j = 1/y_j
// (c_0 = 0 when y_0 = inf) and c_{-1} = c_{k+1} = 0:
//
//     q a = sum_{j=0}^{k+1} (c_j - c_{j-1}) m_j
//     q b = sum_{j=0}^{k+1} (c_j - c_{j-1}) (p m_j - q n_j)
//
// and in terms of u_j = m_j (c_j - c_{j-1}) > 0,
//
//     mu = a + b = sum_{j=1}^{k} (p/q - n_j/m_j + 1/q - 1/m_j) u_j.
//
// Here (q, p) = (m_{k+1}, n_{k+1}). Everything is exact.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hjale/cfrac.hpp"
#include "hjale/fraction.hpp"

namespace hjale {

/// A level y on the boundary of the half-plane: a non-negative rational or +inf.
class Level {
 public:
  Level(Fraction value);  // NOLINT: rationals embed implicitly
  Level(std::int64_t value) : Level(Fraction(value)) {}  // NOLINT
  static Level infinity();

  /// Accepts "inf", "infinity", "∞", "p/q", integers, and decimals. Decimal
  /// input is converted exactly and flagged through `was_decimal`.
  static Level parse(std::string_view text, bool* was_decimal = nullptr);

  bool is_infinite() const { return infinite_; }
  const Fraction& value() const;
  double to_double() const;
  std::string str() const;

  /// 1/y, with 1/inf = 0. Requires y > 0.
  Fraction reciprocal() const;

  friend bool operator==(const Level& a, const Level& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend bool operator<(const Level& a, const Level& b) {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.value_ < b.value_;
  }
  friend bool operator>(const Level& a, const Level& b) { return b < a; }

 private:
  Level() = default;
  Fraction value_;
  bool infinite_ = false;
};

struct LabelPair {
  std::int64_t a = 0;
  std::int64_t b = 0;
  friend bool operator==(const LabelPair&, const LabelPair&) = default;
};

using LabelChain = std::vector<Approximant>;

struct MonopoleData {
  std::vector<Level> levels;        // y_0 .. y_{k+1}
  std::vector<LabelPair> pairs;     // (a_j, b_j), j = 0..k+1
  std::optional<LabelChain> chain;  // (m_j, n_j), j = 0..k+2

  std::size_t k() const { return levels.size() - 2; }
};

struct LogTerm {
  Fraction coefficient;  // p/q - n_j/m_j + 1/q - 1/m_j
  Fraction u;            // m_j (c_j - c_{j-1})
};

struct LogCoefficients {
  std::optional<Fraction> a;  // absent when only u-space data was given
  std::optional<Fraction> b;
  Fraction mu;
  std::vector<LogTerm> per_term;  // j = 1..k
};

enum class MassSign { Negative, Zero, Positive };
std::string to_string(MassSign sign);

struct MassVerdict {
  Fraction mu;
  MassSign sign = MassSign::Zero;
  bool crepant = false;
};

/// Throws std::invalid_argument unless the chain starts (0,-1), (1,0), ends
/// (0,1), is unimodular at j = 0..k and has m_j > 0 for j = 1..k+1.
void validate_label_chain(std::span<const Approximant> chain);

/// The standard HJ chain of p/q.
LabelChain hj_label_chain(std::int64_t p, std::int64_t q);

/// Levels k+1, k, ..., 1, 0.
std::vector<Level> default_levels(std::size_t k);

MonopoleData monopole_from_chain(LabelChain chain, std::vector<Level> levels);
MonopoleData monopole_from_fraction(std::int64_t p, std::int64_t q, std::vector<Level> levels);

/// k = 0, y_0 = inf: the flat metric on C^2.
MonopoleData flat_monopole();

/// Route through the level sums (q a, q b above). Requires the chain.
LogCoefficients log_coeffs_from_levels(const MonopoleData& data);

/// Independent route through the r^{-2} coefficient of v_1:
/// a (q, p) - b (0, 1) = sum_{j=0}^{k} c_j (a_j, b_j), with q = a_{k+1} and
/// p = b_{k+1} + 1 read off the pairs. Does not need the chain.
LogCoefficients asymptotic_coeffs_from_pairs(const MonopoleData& data);

/// mu from u-space data for the HJ chain of p/q; u must have k positive entries.
LogCoefficients mu_from_u(std::int64_t p, std::int64_t q, std::span<const Fraction> u);

/// mu from u-space data for an arbitrary valid label chain (for instance after
/// blowup_insert); u must have k positive entries.
LogCoefficients mu_from_chain(std::span<const Approximant> chain, std::span<const Fraction> u);

/// p/q - n_j/m_j + 1/q - 1/m_j for the HJ chain of p/q, 1 <= j <= k.
Fraction mu_coefficient(std::int64_t p, std::int64_t q, std::size_t j);

/// Same coefficient for an arbitrary chain.
Fraction chain_mu_coefficient(std::span<const Approximant> chain, std::size_t j);

/// Inserts the label (m_j + m_{j+1}, n_j + n_{j+1}) after index `position`,
/// i.e. blows up the common endpoint y_position of the two adjacent intervals.
/// Valid positions are 1..k; throws std::out_of_range otherwise.
LabelChain blowup_insert_chain(std::span<const Approximant> chain, std::size_t position);

/// Level-aware insertion: y_position stays, the new lower endpoint is
/// `inserted` or, by default, the midpoint of y_position and y_{position+1}.
MonopoleData blowup_insert(const MonopoleData& data, std::size_t position,
                           std::optional<Level> inserted = std::nullopt);

MassVerdict mass_verdict(std::int64_t p, std::int64_t q, std::span<const Fraction> u);
MassVerdict mass_verdict(std::span<const Approximant> chain, std::span<const Fraction> u);

}  // namespace hjale

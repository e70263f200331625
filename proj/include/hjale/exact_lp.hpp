#pragma once

// Small dense rational matrices: rank and the positive-kernel test
// (∃ w with M w = 0 and every w_i > 0), both exact.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hjale/fraction.hpp"

namespace hjale {

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);
  /// Rows must all have the same length; `cols` fixes the width when `data`
  /// is empty or has empty rows.
  static RationalMatrix from_rows(std::vector<std::vector<Fraction>> data, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Fraction& operator()(std::size_t i, std::size_t j) { return data_.at(i * cols_ + j); }
  const Fraction& operator()(std::size_t i, std::size_t j) const { return data_.at(i * cols_ + j); }

  std::vector<Fraction> row(std::size_t i) const;
  std::vector<Fraction> apply(const std::vector<Fraction>& w) const;
  RationalMatrix negated() const;
  std::string str() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Fraction> data_;
};

std::size_t rank(const RationalMatrix& m);

/// A strictly positive w with M w = 0, or nullopt. A matrix without rows
/// admits (1, ..., 1), possibly of length zero; a matrix with rows but no
/// columns admits nothing.
///
/// Solved as phase one of a simplex method with Bland's rule on
/// M v = -M 1, v >= 0, since the kernel is a cone: it meets the open positive
/// orthant iff it contains some w >= 1.
std::optional<std::vector<Fraction>> positive_kernel_vector(const RationalMatrix& m);

}  // namespace hjale

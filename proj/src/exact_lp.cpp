#include "hjale/exact_lp.hpp"

#include <stdexcept>

namespace hjale {

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

RationalMatrix RationalMatrix::from_rows(std::vector<std::vector<Fraction>> data, std::size_t cols) {
  RationalMatrix m(data.size(), cols);
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data[i].size() != cols) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = std::move(data[i][j]);
  }
  return m;
}

std::vector<Fraction> RationalMatrix::row(std::size_t i) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

std::vector<Fraction> RationalMatrix::apply(const std::vector<Fraction>& w) const {
  if (w.size() != cols_) throw std::invalid_argument("vector length does not match column count");
  std::vector<Fraction> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * w[j];
  }
  return out;
}

RationalMatrix RationalMatrix::negated() const {
  RationalMatrix m = *this;
  for (auto& x : m.data_) x = -x;
  return m;
}

std::string RationalMatrix::str() const {
  std::string out;
  for (std::size_t i = 0; i < rows_; ++i) {
    out += "(";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) out += ", ";
      out += (*this)(i, j).str();
    }
    out += ")";
    if (i + 1 < rows_) out += "\n";
  }
  return out;
}

std::size_t rank(const RationalMatrix& m) {
  RationalMatrix a = m;
  std::size_t r = 0;
  for (std::size_t col = 0; col < a.cols() && r < a.rows(); ++col) {
    std::size_t pivot = r;
    while (pivot < a.rows() && a(pivot, col).is_zero()) ++pivot;
    if (pivot == a.rows()) continue;
    if (pivot != r) {
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(pivot, j), a(r, j));
    }
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (a(i, col).is_zero()) continue;
      const Fraction f = a(i, col) / a(r, col);
      for (std::size_t j = col; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

std::optional<std::vector<Fraction>> positive_kernel_vector(const RationalMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t n = m.cols();
  if (rows == 0) return std::vector<Fraction>(n, Fraction(1));
  if (n == 0) return std::nullopt;

  // Tableau over columns [v_0..v_{n-1}, a_0..a_{rows-1} | rhs], rhs >= 0.
  const std::size_t width = n + rows;
  std::vector<std::vector<Fraction>> t(rows, std::vector<Fraction>(width + 1));
  for (std::size_t i = 0; i < rows; ++i) {
    Fraction rhs;
    for (std::size_t j = 0; j < n; ++j) rhs -= m(i, j);
    const bool flip = rhs.sign() < 0;
    for (std::size_t j = 0; j < n; ++j) t[i][j] = flip ? -m(i, j) : m(i, j);
    t[i][n + i] = Fraction(1);
    t[i][width] = flip ? -rhs : rhs;
  }
  std::vector<std::size_t> basis(rows);
  for (std::size_t i = 0; i < rows; ++i) basis[i] = n + i;

  // Reduced costs of "minimize the sum of artificials".
  std::vector<Fraction> cost(width + 1);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < n; ++j) cost[j] -= t[i][j];
    cost[width] -= t[i][width];
  }

  for (;;) {
    std::size_t enter = width;
    for (std::size_t j = 0; j < width; ++j) {
      if (cost[j].sign() < 0) {
        enter = j;
        break;
      }
    }
    if (enter == width) break;

    std::size_t leave = rows;
    Fraction best;
    for (std::size_t i = 0; i < rows; ++i) {
      if (t[i][enter].sign() <= 0) continue;
      const Fraction ratio = t[i][width] / t[i][enter];
      if (leave == rows || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    // Phase one is bounded below by zero, so some row always qualifies.
    if (leave == rows) throw std::logic_error("unbounded phase-one problem");

    const Fraction piv = t[leave][enter];
    for (auto& x : t[leave]) x /= piv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == leave || t[i][enter].is_zero()) continue;
      const Fraction f = t[i][enter];
      for (std::size_t j = 0; j <= width; ++j) t[i][j] -= f * t[leave][j];
    }
    if (!cost[enter].is_zero()) {
      const Fraction f = cost[enter];
      for (std::size_t j = 0; j <= width; ++j) cost[j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }

  if (!cost[width].is_zero()) return std::nullopt;

  std::vector<Fraction> w(n, Fraction(1));
  for (std::size_t i = 0; i < rows; ++i) {
    if (basis[i] < n) w[basis[i]] += t[i][width];
  }
  return w;
}

}  // namespace hjale

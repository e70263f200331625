#pragma once

// Forward-mode dual numbers with N independent directions.

#include <array>
#include <cmath>

namespace hjale {

template <int N>
struct Dual {
  double v = 0.0;
  std::array<double, N> d{};

  Dual() = default;
  Dual(double value) : v(value) {}  // NOLINT: constants promote implicitly

  static Dual variable(double value, int index) {
    Dual x(value);
    x.d[index] = 1.0;
    return x;
  }

  Dual& operator+=(const Dual& o) {
    v += o.v;
    for (int i = 0; i < N; ++i) d[i] += o.d[i];
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    v -= o.v;
    for (int i = 0; i < N; ++i) d[i] -= o.d[i];
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    for (int i = 0; i < N; ++i) d[i] = d[i] * o.v + v * o.d[i];
    v *= o.v;
    return *this;
  }
  Dual& operator/=(const Dual& o) {
    const double inv = 1.0 / o.v;
    for (int i = 0; i < N; ++i) d[i] = (d[i] - v * inv * o.d[i]) * inv;
    v *= inv;
    return *this;
  }

  friend Dual operator+(Dual a, const Dual& b) { return a += b; }
  friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
  friend Dual operator*(Dual a, const Dual& b) { return a *= b; }
  friend Dual operator/(Dual a, const Dual& b) { return a /= b; }
  friend Dual operator-(Dual a) {
    a.v = -a.v;
    for (auto& x : a.d) x = -x;
    return a;
  }
};

template <int N>
Dual<N> sqrt(const Dual<N>& a) {
  Dual<N> out(std::sqrt(a.v));
  const double k = 0.5 / out.v;
  for (int i = 0; i < N; ++i) out.d[i] = k * a.d[i];
  return out;
}

template <int N>
Dual<N> sin(const Dual<N>& a) {
  Dual<N> out(std::sin(a.v));
  const double k = std::cos(a.v);
  for (int i = 0; i < N; ++i) out.d[i] = k * a.d[i];
  return out;
}

template <int N>
Dual<N> cos(const Dual<N>& a) {
  Dual<N> out(std::cos(a.v));
  const double k = -std::sin(a.v);
  for (int i = 0; i < N; ++i) out.d[i] = k * a.d[i];
  return out;
}

inline double value_of(double x) { return x; }
template <int N>
double value_of(const Dual<N>& x) {
  return x.v;
}

}  // namespace hjale

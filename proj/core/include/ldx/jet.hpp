#pragma once

// Truncated Taylor arithmetic. A Jet<N> carries the first N+1 normalised
// Taylor coefficients f(z), f'(z), f''(z)/2!, ... of a quantity that depends
// smoothly on one seed variable. Closed-form expressions written generically
// (templated on the scalar) evaluate to exact derivatives up to rounding.

#include <array>
#include <cmath>
#include <cstddef>

namespace ldx {

template <int N>
class Jet {
  static_assert(N >= 0);

 public:
  static constexpr int kOrder = N;

  constexpr Jet() = default;
  constexpr Jet(double constant) { c_[0] = constant; }  // NOLINT: implicit by design of generic code

  static constexpr Jet variable(double at) {
    Jet j(at);
    if constexpr (N >= 1) j.c_[1] = 1.0;
    return j;
  }

  constexpr double value() const { return c_[0]; }
  constexpr double coeff(int k) const { return c_[static_cast<std::size_t>(k)]; }
  constexpr double& coeff(int k) { return c_[static_cast<std::size_t>(k)]; }

  /// k-th derivative with respect to the seed variable.
  constexpr double derivative(int k) const {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return coeff(k) * f;
  }

  Jet operator-() const {
    Jet r;
    for (int k = 0; k <= N; ++k) r.c_[k] = -c_[k];
    return r;
  }
  Jet& operator+=(const Jet& o) {
    for (int k = 0; k <= N; ++k) c_[k] += o.c_[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (int k = 0; k <= N; ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }
  Jet& operator/=(const Jet& o) { return *this = *this / o; }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    for (int k = 0; k <= N; ++k) {
      double s = 0.0;
      for (int j = 0; j <= k; ++j) s += a.c_[j] * b.c_[k - j];
      r.c_[k] = s;
    }
    return r;
  }
  friend Jet operator*(Jet a, double s) {
    for (auto& v : a.c_) v *= s;
    return a;
  }
  friend Jet operator*(double s, Jet a) { return a * s; }
  friend Jet operator/(const Jet& a, const Jet& b) {
    Jet q;
    for (int k = 0; k <= N; ++k) {
      double s = a.c_[k];
      for (int j = 1; j <= k; ++j) s -= b.c_[j] * q.c_[k - j];
      q.c_[k] = s / b.c_[0];
    }
    return q;
  }
  friend Jet operator/(Jet a, double s) {
    for (auto& v : a.c_) v /= s;
    return a;
  }

  friend bool operator<(const Jet& a, const Jet& b) { return a.c_[0] < b.c_[0]; }
  friend bool operator>(const Jet& a, const Jet& b) { return a.c_[0] > b.c_[0]; }
  friend bool operator<=(const Jet& a, const Jet& b) { return a.c_[0] <= b.c_[0]; }
  friend bool operator>=(const Jet& a, const Jet& b) { return a.c_[0] >= b.c_[0]; }

  friend Jet exp(const Jet& a) {
    Jet e;
    e.c_[0] = std::exp(a.c_[0]);
    for (int k = 1; k <= N; ++k) {
      double s = 0.0;
      for (int j = 1; j <= k; ++j) s += j * a.c_[j] * e.c_[k - j];
      e.c_[k] = s / k;
    }
    return e;
  }

  friend Jet log(const Jet& a) {
    Jet l;
    l.c_[0] = std::log(a.c_[0]);
    for (int k = 1; k <= N; ++k) {
      double s = 0.0;
      for (int j = 1; j < k; ++j) s += j * l.c_[j] * a.c_[k - j];
      l.c_[k] = (a.c_[k] - s / k) / a.c_[0];
    }
    return l;
  }

  friend Jet sqrt(const Jet& a) {
    Jet r;
    r.c_[0] = std::sqrt(a.c_[0]);
    for (int k = 1; k <= N; ++k) {
      double s = a.c_[k];
      for (int j = 1; j < k; ++j) s -= r.c_[j] * r.c_[k - j];
      r.c_[k] = s / (2.0 * r.c_[0]);
    }
    return r;
  }

  friend void sincos(const Jet& a, Jet& s, Jet& c) {
    s = Jet();
    c = Jet();
    s.c_[0] = std::sin(a.c_[0]);
    c.c_[0] = std::cos(a.c_[0]);
    for (int k = 1; k <= N; ++k) {
      double ss = 0.0, cc = 0.0;
      for (int j = 1; j <= k; ++j) {
        ss += j * a.c_[j] * c.c_[k - j];
        cc += j * a.c_[j] * s.c_[k - j];
      }
      s.c_[k] = ss / k;
      c.c_[k] = -cc / k;
    }
  }
  friend Jet sin(const Jet& a) {
    Jet s, c;
    sincos(a, s, c);
    return s;
  }
  friend Jet cos(const Jet& a) {
    Jet s, c;
    sincos(a, s, c);
    return c;
  }
  friend Jet tan(const Jet& a) {
    Jet s, c;
    sincos(a, s, c);
    return s / c;
  }
  friend Jet abs(const Jet& a) { return a.c_[0] < 0.0 ? -a : a; }

 private:
  std::array<double, N + 1> c_{};
};

using Jet5 = Jet<5>;

inline double value_of(double x) { return x; }
template <int N>
double value_of(const Jet<N>& x) {
  return x.value();
}

}  // namespace ldx

#pragma once

// Forward-mode dual numbers. Dual<T> nests (Dual<Dual<double>>) to obtain
// mixed second partials.

#include <cmath>
#include <type_traits>

namespace herglotz {

template <class T>
struct Dual {
  T v{};  // value
  T d{};  // tangent

  constexpr Dual() = default;
  constexpr Dual(double c) : v(c), d(0.0) {}  // NOLINT: implicit lift of constants
  constexpr Dual(T value, T tangent) : v(value), d(tangent) {}
};

template <class T>
struct is_dual : std::false_type {};
template <class T>
struct is_dual<Dual<T>> : std::true_type {};

inline double primal(double x) { return x; }
template <class T>
double primal(const Dual<T>& x) {
  return primal(x.v);
}

inline bool primal_is_zero_all(double x) { return x == 0.0; }
template <class T>
bool primal_is_zero_all(const Dual<T>& x) {
  return primal_is_zero_all(x.v) && primal_is_zero_all(x.d);
}

// arithmetic

template <class T>
Dual<T> operator+(const Dual<T>& a, const Dual<T>& b) { return {a.v + b.v, a.d + b.d}; }
template <class T>
Dual<T> operator-(const Dual<T>& a, const Dual<T>& b) { return {a.v - b.v, a.d - b.d}; }
template <class T>
Dual<T> operator-(const Dual<T>& a) { return {-a.v, -a.d}; }
template <class T>
Dual<T> operator*(const Dual<T>& a, const Dual<T>& b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
template <class T>
Dual<T> operator/(const Dual<T>& a, const Dual<T>& b) {
  return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)};
}

template <class T>
Dual<T> operator+(const Dual<T>& a, double c) { return {a.v + c, a.d}; }
template <class T>
Dual<T> operator+(double c, const Dual<T>& a) { return {c + a.v, a.d}; }
template <class T>
Dual<T> operator-(const Dual<T>& a, double c) { return {a.v - c, a.d}; }
template <class T>
Dual<T> operator-(double c, const Dual<T>& a) { return {c - a.v, -a.d}; }
template <class T>
Dual<T> operator*(const Dual<T>& a, double c) { return {a.v * c, a.d * c}; }
template <class T>
Dual<T> operator*(double c, const Dual<T>& a) { return {c * a.v, c * a.d}; }
template <class T>
Dual<T> operator/(const Dual<T>& a, double c) { return {a.v / c, a.d / c}; }
template <class T>
Dual<T> operator/(double c, const Dual<T>& a) { return {c / a.v, -c * a.d / (a.v * a.v)}; }

template <class T>
bool operator<(const Dual<T>& a, double c) { return primal(a) < c; }
template <class T>
bool operator>(const Dual<T>& a, double c) { return primal(a) > c; }

// elementary functions

template <class T>
Dual<T> exp(const Dual<T>& a) {
  using std::exp;
  T e = exp(a.v);
  return {e, e * a.d};
}

template <class T>
Dual<T> log(const Dual<T>& a) {
  using std::log;
  return {log(a.v), a.d / a.v};
}

template <class T>
Dual<T> sin(const Dual<T>& a) {
  using std::cos;
  using std::sin;
  return {sin(a.v), cos(a.v) * a.d};
}

template <class T>
Dual<T> cos(const Dual<T>& a) {
  using std::cos;
  using std::sin;
  return {cos(a.v), -(sin(a.v) * a.d)};
}

template <class T>
Dual<T> sqrt(const Dual<T>& a) {
  using std::sqrt;
  T s = sqrt(a.v);
  return {s, a.d / (2.0 * s)};
}

template <class T>
Dual<T> pow(const Dual<T>& a, double p) {
  using std::pow;
  if (p == 0.0) return {T(1.0), T(0.0)};
  return {pow(a.v, p), p * pow(a.v, p - 1.0) * a.d};
}

template <class T>
Dual<T> pow(const Dual<T>& a, const Dual<T>& b) {
  using std::log;
  using std::pow;
  // constant exponent: power rule (valid for a <= 0 with integer p)
  if (primal_is_zero_all(b.d)) {
    T p = b.v;
    T val = pow(a.v, p);
    return {val, p * pow(a.v, p - 1.0) * a.d};
  }
  T val = pow(a.v, b.v);
  return {val, val * (b.d * log(a.v) + b.v * a.d / a.v)};
}

template <class T>
Dual<T> pow(double c, const Dual<T>& b) {
  return pow(Dual<T>(c), b);
}

/// Seeds a variable: value x, tangent 1.
template <class T>
Dual<T> seed(const T& x) {
  return {x, T(1.0)};
}

}  // namespace herglotz

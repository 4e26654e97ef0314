#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

namespace gradflow {

// Small fixed-dimension point/vector type. The solver is instantiated for
// d = 1 and d = 2.
template <std::size_t D>
using Vec = std::array<double, D>;

template <std::size_t D>
inline Vec<D> operator+(const Vec<D>& a, const Vec<D>& b) {
  Vec<D> r;
  for (std::size_t i = 0; i < D; ++i) r[i] = a[i] + b[i];
  return r;
}

template <std::size_t D>
inline Vec<D> operator-(const Vec<D>& a, const Vec<D>& b) {
  Vec<D> r;
  for (std::size_t i = 0; i < D; ++i) r[i] = a[i] - b[i];
  return r;
}

template <std::size_t D>
inline Vec<D> operator-(const Vec<D>& a) {
  Vec<D> r;
  for (std::size_t i = 0; i < D; ++i) r[i] = -a[i];
  return r;
}

template <std::size_t D>
inline Vec<D> operator*(double s, const Vec<D>& a) {
  Vec<D> r;
  for (std::size_t i = 0; i < D; ++i) r[i] = s * a[i];
  return r;
}

template <std::size_t D>
inline Vec<D>& operator+=(Vec<D>& a, const Vec<D>& b) {
  for (std::size_t i = 0; i < D; ++i) a[i] += b[i];
  return a;
}

template <std::size_t D>
inline Vec<D>& operator-=(Vec<D>& a, const Vec<D>& b) {
  for (std::size_t i = 0; i < D; ++i) a[i] -= b[i];
  return a;
}

template <std::size_t D>
inline double dot(const Vec<D>& a, const Vec<D>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < D; ++i) s += a[i] * b[i];
  return s;
}

template <std::size_t D>
inline double norm_sq(const Vec<D>& a) {
  return dot(a, a);
}

template <std::size_t D>
inline double norm(const Vec<D>& a) {
  return std::sqrt(norm_sq(a));
}

template <std::size_t D>
inline double max_abs(const Vec<D>& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < D; ++i) m = std::max(m, std::abs(a[i]));
  return m;
}

template <std::size_t D>
inline bool all_finite(const Vec<D>& a) {
  for (std::size_t i = 0; i < D; ++i)
    if (!std::isfinite(a[i])) return false;
  return true;
}

// sup norm over a point set
template <std::size_t D>
inline double max_abs(const std::vector<Vec<D>>& pts) {
  double m = 0.0;
  for (const auto& p : pts) m = std::max(m, max_abs(p));
  return m;
}

template <std::size_t D>
inline double max_abs_diff(const std::vector<Vec<D>>& a,
                           const std::vector<Vec<D>>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, max_abs(a[i] - b[i]));
  return m;
}

}  // namespace gradflow

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace dunklsq {

using Point = std::vector<double>;

inline double dot(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const Point& a) { return dot(a, a); }

inline double dist2(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

inline bool in_closed_orthant(const Point& x) {
  for (double v : x)
    if (v < 0.0) return false;
  return true;
}

/// Parameter vector alpha in [-1/2, infinity)^d.
class AlphaVector {
 public:
  explicit AlphaVector(std::vector<double> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw std::invalid_argument("AlphaVector: dimension must be >= 1");
    for (double a : entries_)
      if (a < -0.5) throw std::invalid_argument("AlphaVector: entries must be >= -1/2");
  }

  static AlphaVector constant(std::size_t d, double a) {
    return AlphaVector(std::vector<double>(d, a));
  }

  std::size_t dim() const { return entries_.size(); }
  double operator[](std::size_t j) const { return entries_[j]; }
  const std::vector<double>& entries() const { return entries_; }

  double sum() const {
    double s = 0.0;
    for (double a : entries_) s += a;
    return s;
  }

 private:
  std::vector<double> entries_;
};

/// Multi-index in N^d, with an explicit invalid state (m - e_j stepping below 0).
/// Every evaluation against an invalid index is 0 by convention.
class MultiIndex {
 public:
  explicit MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
    for (int m : entries_)
      if (m < 0) valid_ = false;
  }

  static MultiIndex zeros(std::size_t d) { return MultiIndex(std::vector<int>(d, 0)); }
  static MultiIndex invalid(std::size_t d) {
    MultiIndex m = zeros(d);
    m.valid_ = false;
    return m;
  }

  std::size_t dim() const { return entries_.size(); }
  bool valid() const { return valid_; }
  int operator[](std::size_t j) const { return entries_[j]; }
  const std::vector<int>& entries() const { return entries_; }

  /// |m| = sum of entries; 0 for the invalid state.
  int order() const {
    if (!valid_) return 0;
    int s = 0;
    for (int m : entries_) s += m;
    return s;
  }

  MultiIndex lowered(std::size_t j) const {
    std::vector<int> e = entries_;
    e[j] -= 1;
    return MultiIndex(std::move(e));
  }

  MultiIndex raised(std::size_t j) const {
    std::vector<int> e = entries_;
    e[j] += 1;
    return MultiIndex(std::move(e));
  }

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
    return a.valid_ == b.valid_ && a.entries_ == b.entries_;
  }
  friend bool operator<(const MultiIndex& a, const MultiIndex& b) {
    if (a.valid_ != b.valid_) return !a.valid_;
    return a.entries_ < b.entries_;
  }

 private:
  std::vector<int> entries_;
  bool valid_ = true;
};

/// Parity selector eps in {0,1}^d; defines the class N_eps of multi-indices
/// whose i-th entry is even iff eps_i = 0.
class EpsVector {
 public:
  explicit EpsVector(std::vector<int> entries) : entries_(std::move(entries)) {
    for (int e : entries_)
      if (e != 0 && e != 1) throw std::invalid_argument("EpsVector: entries must be 0 or 1");
  }

  static EpsVector zeros(std::size_t d) { return EpsVector(std::vector<int>(d, 0)); }
  static EpsVector unit(std::size_t d, std::size_t j) {
    std::vector<int> e(d, 0);
    e[j] = 1;
    return EpsVector(std::move(e));
  }

  /// All 2^d parity classes in lexicographic order.
  static std::vector<EpsVector> all(std::size_t d) {
    std::vector<EpsVector> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
      std::vector<int> e(d);
      for (std::size_t j = 0; j < d; ++j) e[j] = int((mask >> j) & 1u);
      out.emplace_back(std::move(e));
    }
    return out;
  }

  std::size_t dim() const { return entries_.size(); }
  int operator[](std::size_t j) const { return entries_[j]; }
  const std::vector<int>& entries() const { return entries_; }

  int order() const {
    int s = 0;
    for (int e : entries_) s += e;
    return s;
  }

  bool contains(const MultiIndex& m) const {
    if (!m.valid() || m.dim() != dim()) return false;
    for (std::size_t j = 0; j < dim(); ++j)
      if ((m[j] % 2) != entries_[j]) return false;
    return true;
  }

  friend bool operator==(const EpsVector& a, const EpsVector& b) { return a.entries_ == b.entries_; }

  std::string str() const {
    std::string s;
    for (int e : entries_) s += char('0' + e);
    return s;
  }

 private:
  std::vector<int> entries_;
};

/// Sign vector eta in {-1,1}^d acting by coordinatewise reflection.
class ReflectionSignature {
 public:
  explicit ReflectionSignature(std::vector<int> signs) : signs_(std::move(signs)) {
    for (int s : signs_)
      if (s != -1 && s != 1) throw std::invalid_argument("ReflectionSignature: signs must be +-1");
  }

  static std::vector<ReflectionSignature> all(std::size_t d) {
    std::vector<ReflectionSignature> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
      std::vector<int> s(d);
      for (std::size_t j = 0; j < d; ++j) s[j] = ((mask >> j) & 1u) ? -1 : 1;
      out.emplace_back(std::move(s));
    }
    return out;
  }

  std::size_t dim() const { return signs_.size(); }
  int operator[](std::size_t j) const { return signs_[j]; }

  /// eta^eps = prod eta_i^{eps_i}.
  int parity_sign(const EpsVector& eps) const {
    int s = 1;
    for (std::size_t j = 0; j < dim(); ++j)
      if (eps[j] == 1) s *= signs_[j];
    return s;
  }

  Point apply(const Point& x) const {
    Point y = x;
    for (std::size_t j = 0; j < dim(); ++j) y[j] *= signs_[j];
    return y;
  }

 private:
  std::vector<int> signs_;
};

/// Reflection sigma_j in the hyperplane orthogonal to e_j.
inline Point reflect(const Point& x, std::size_t j) {
  Point y = x;
  y[j] = -y[j];
  return y;
}

}  // namespace dunklsq

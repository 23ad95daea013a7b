#pragma once

// Polynomials and rational functions in u over a field K. Used where exact
// elimination over K(u) is unavoidable: small kernels and test oracles.

#include <utility>
#include <vector>

#include "omegalab/exact/laurent.hpp"

namespace omegalab {

template <class K>
class Poly {
 public:
  Poly() = default;
  Poly(const K& c) {  // NOLINT(google-explicit-constructor)
    if (!omegalab::is_zero(c)) c_.push_back(c);
  }
  explicit Poly(std::vector<K> c) : c_(std::move(c)) { trim(); }

  static Poly x_pow(int e, const K& c = K(1)) {
    std::vector<K> v(e + 1, K(0));
    v[e] = c;
    return Poly(std::move(v));
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const K& lead() const { return c_.back(); }
  const std::vector<K>& coeffs() const { return c_; }
  K coeff(int k) const { return k < static_cast<int>(c_.size()) ? c_[k] : K(0); }

  friend Poly operator+(const Poly& a, const Poly& b) { return combine(a, b, false); }
  friend Poly operator-(const Poly& a, const Poly& b) { return combine(a, b, true); }
  friend Poly operator-(Poly a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<K> r(a.c_.size() + b.c_.size() - 1, K(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (omegalab::is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(r));
  }
  Poly scaled(const K& k) const {
    std::vector<K> r(c_);
    for (auto& x : r) x = x * k;
    return Poly(std::move(r));
  }

  /// Quotient and remainder; b must be nonzero.
  friend std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.degree() < b.degree()) return {Poly(), a};
    K inv = K(1) / b.lead();
    std::vector<K> q(a.degree() - b.degree() + 1, K(0));
    std::vector<K>& r = a.c_;
    for (int k = a.degree(); k >= b.degree(); --k) {
      if (omegalab::is_zero(r[k])) continue;
      K f = r[k] * inv;
      q[k - b.degree()] = f;
      for (int j = 0; j <= b.degree(); ++j) r[k - b.degree() + j] -= f * b.c_[j];
    }
    a.trim();
    return {Poly(std::move(q)), std::move(a)};
  }

  Poly monic() const {
    if (is_zero()) return {};
    return scaled(K(1) / lead());
  }

  friend Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
      Poly r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  K eval(const K& t) const {
    K acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
    return acc;
  }

  friend bool operator==(const Poly& a, const Poly& b) { return (a - b).is_zero(); }

 private:
  static Poly combine(const Poly& a, const Poly& b, bool neg) {
    std::vector<K> r(std::max(a.c_.size(), b.c_.size()), K(0));
    for (std::size_t k = 0; k < a.c_.size(); ++k) r[k] = a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) {
      if (neg) r[k] -= b.c_[k];
      else r[k] += b.c_[k];
    }
    return Poly(std::move(r));
  }
  void trim() {
    while (!c_.empty() && omegalab::is_zero(c_.back())) c_.pop_back();
  }

  std::vector<K> c_;
};

template <class K>
bool is_zero(const Poly<K>& p) {
  return p.is_zero();
}

/// num/den with den monic and gcd(num, den) = 1.
template <class K>
class RatFunc {
 public:
  RatFunc() : den_(K(1)) {}
  RatFunc(const K& c) : num_(c), den_(K(1)) {}                  // NOLINT(google-explicit-constructor)
  RatFunc(int c) : RatFunc(K(c)) {}                              // NOLINT(google-explicit-constructor)
  RatFunc(Poly<K> n, Poly<K> d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }
  explicit RatFunc(const Laurent<K>& l) {
    Poly<K> p(l.coeffs());
    if (l.low() >= 0) {
      num_ = Poly<K>::x_pow(l.low()) * p;
      den_ = Poly<K>(K(1));
    } else {
      num_ = p;
      den_ = Poly<K>::x_pow(-l.low());
    }
    normalize();
  }

  const Poly<K>& num() const { return num_; }
  const Poly<K>& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(RatFunc a) {
    a.num_ = -a.num_;
    return a;
  }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw std::domain_error("rational function division by zero");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
  }
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }

  friend bool operator==(const RatFunc& a, const RatFunc& b) { return (a - b).is_zero(); }

 private:
  void normalize() {
    if (den_.is_zero()) throw std::domain_error("zero denominator");
    if (num_.is_zero()) {
      den_ = Poly<K>(K(1));
      return;
    }
    Poly<K> g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = divmod(num_, g).first;
      den_ = divmod(den_, g).first;
    }
    K l = den_.lead();
    if (!(l == K(1))) {
      K inv = K(1) / l;
      num_ = num_.scaled(inv);
      den_ = den_.scaled(inv);
    }
  }

  Poly<K> num_;
  Poly<K> den_;
};

template <class K>
bool is_zero(const RatFunc<K>& x) {
  return x.is_zero();
}

}  // namespace omegalab

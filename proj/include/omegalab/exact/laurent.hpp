#pragma once

// Laurent polynomials in one indeterminate u over a field K.

#include <string>
#include <vector>

#include "omegalab/exact/cyclotomic.hpp"

namespace omegalab {

template <class K>
class Laurent {
 public:
  Laurent() = default;
  Laurent(const K& c) {  // NOLINT(google-explicit-constructor)
    if (!omegalab::is_zero(c)) c_.push_back(c);
  }

  static Laurent monomial(const K& c, int e) {
    Laurent l(c);
    l.lo_ = e;
    return l;
  }
  /// The polynomial with coefficients c, lowest exponent lo.
  static Laurent from_coeffs(int lo, std::vector<K> c) {
    Laurent l;
    l.lo_ = lo;
    l.c_ = std::move(c);
    l.trim();
    return l;
  }

  bool is_zero() const { return c_.empty(); }
  int low() const { return lo_; }
  int high() const { return lo_ + static_cast<int>(c_.size()) - 1; }
  const std::vector<K>& coeffs() const { return c_; }
  K coeff(int e) const {
    int k = e - lo_;
    if (k < 0 || k >= static_cast<int>(c_.size())) return K(0);
    return c_[k];
  }

  Laurent& operator+=(const Laurent& o) { return add(o, false); }
  Laurent& operator-=(const Laurent& o) { return add(o, true); }
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator-(Laurent a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }

  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    if (a.is_zero() || b.is_zero()) return {};
    Laurent r;
    r.lo_ = a.lo_ + b.lo_;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, K(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (omegalab::is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        if (!omegalab::is_zero(b.c_[j])) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    r.trim();
    return r;
  }
  Laurent& operator*=(const Laurent& o) { return *this = *this * o; }

  Laurent scaled(const K& k) const {
    if (omegalab::is_zero(k)) return {};
    Laurent r = *this;
    for (auto& x : r.c_) x = x * k;
    r.trim();
    return r;
  }
  Laurent shifted(int e) const {
    Laurent r = *this;
    r.lo_ += e;
    return r;
  }

  /// Value at a nonzero t.
  K eval(const K& t) const {
    if (c_.empty()) return K(0);
    K acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
    if (lo_ > 0)
      for (int k = 0; k < lo_; ++k) acc = acc * t;
    if (lo_ < 0) {
      K inv = K(1) / t;
      for (int k = 0; k < -lo_; ++k) acc = acc * inv;
    }
    return acc;
  }
  K at_one() const {
    K acc(0);
    for (const auto& x : c_) acc += x;
    return acc;
  }

  /// Exact quotient by (u - 1); the value at 1 must vanish.
  Laurent div_u_minus_1() const {
    if (c_.empty()) return {};
    if (!omegalab::is_zero(at_one())) throw std::domain_error("not divisible by u - 1");
    std::vector<K> q(c_.size() - 1, K(0));
    K carry(0);
    for (std::size_t k = c_.size() - 1; k >= 1; --k) {
      carry += c_[k];
      q[k - 1] = carry;
    }
    return from_coeffs(lo_, std::move(q));
  }

  /// Image under u -> u^{-1}.
  Laurent inverted() const {
    std::vector<K> c(c_.rbegin(), c_.rend());
    return from_coeffs(-high(), std::move(c));
  }

  friend bool operator==(const Laurent& a, const Laurent& b) { return (a - b).is_zero(); }

  std::string str() const {
    std::string s;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (omegalab::is_zero(c_[k])) continue;
      if (!s.empty()) s += " + ";
      s += "(" + to_str(c_[k]) + ")";
      int e = lo_ + static_cast<int>(k);
      if (e) s += "u^" + std::to_string(e);
    }
    return s.empty() ? "0" : s;
  }

 private:
  static std::string to_str(const Rational& x) { return x.get_str(); }
  static std::string to_str(const Cyclo& x) { return x.str(); }

  Laurent& add(const Laurent& o, bool neg) {
    if (o.is_zero()) return *this;
    if (is_zero()) {
      *this = o;
      if (neg)
        for (auto& x : c_) x = -x;
      return *this;
    }
    int lo = std::min(lo_, o.lo_), hi = std::max(high(), o.high());
    if (lo < lo_) c_.insert(c_.begin(), lo_ - lo, K(0));
    lo_ = lo;
    if (static_cast<int>(c_.size()) < hi - lo + 1) c_.resize(hi - lo + 1, K(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) {
      auto& dst = c_[o.lo_ - lo_ + k];
      if (neg) dst -= o.c_[k];
      else dst += o.c_[k];
    }
    trim();
    return *this;
  }

  void trim() {
    std::size_t first = 0;
    while (first < c_.size() && omegalab::is_zero(c_[first])) ++first;
    if (first == c_.size()) {
      c_.clear();
      lo_ = 0;
      return;
    }
    std::size_t last = c_.size();
    while (omegalab::is_zero(c_[last - 1])) --last;
    c_.erase(c_.begin() + last, c_.end());
    c_.erase(c_.begin(), c_.begin() + first);
    lo_ += static_cast<int>(first);
  }

  int lo_ = 0;
  std::vector<K> c_;
};

template <class K>
bool is_zero(const Laurent<K>& x) {
  return x.is_zero();
}

/// The ring homomorphism u -> t applied entrywise.
template <class K>
std::vector<K> specialize(const std::vector<Laurent<K>>& v, const K& t) {
  std::vector<K> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.eval(t));
  return out;
}

template <class K>
std::vector<K> at_one(const std::vector<Laurent<K>>& v) {
  std::vector<K> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.at_one());
  return out;
}

}  // namespace omegalab

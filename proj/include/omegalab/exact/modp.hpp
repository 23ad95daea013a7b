#pragma once

// Reduction modulo a large prime. A ring map Z[zeta][u, 1/u] -> F_p never
// raises ranks, so ranks computed here are lower bounds for the ranks over
// Q(zeta)(u); that is how they are used.

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "omegalab/exact/laurent.hpp"
#include "omegalab/exact/matrix.hpp"

namespace omegalab {

class Fp {
 public:
  static constexpr bool kModular = true;

  Fp() = default;
  Fp(std::uint64_t v, std::uint64_t p) : v_(v % p), p_(p) {}
  template <std::integral I>
  Fp(I v) : v_(0), p_(0), pending_(static_cast<long long>(v)) {}  // NOLINT(google-explicit-constructor)

  std::uint64_t value() const { return v_; }
  std::uint64_t prime() const { return p_; }
  bool is_zero() const { return p_ ? v_ == 0 : pending_ == 0; }

  friend Fp operator+(Fp a, Fp b) {
    unify(a, b);
    std::uint64_t s = a.v_ + b.v_;
    if (s >= a.p_) s -= a.p_;
    return Fp(s, a.p_);
  }
  friend Fp operator-(Fp a, Fp b) {
    unify(a, b);
    return Fp(a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + a.p_ - b.v_, a.p_);
  }
  friend Fp operator-(Fp a) {
    if (!a.p_) return Fp(-a.pending_);
    return Fp(a.v_ ? a.p_ - a.v_ : 0, a.p_);
  }
  friend Fp operator*(Fp a, Fp b) {
    unify(a, b);
    return Fp(static_cast<std::uint64_t>(static_cast<unsigned __int128>(a.v_) * b.v_ % a.p_), a.p_);
  }
  friend Fp operator/(Fp a, Fp b) {
    unify(a, b);
    if (b.v_ == 0) throw std::domain_error("division by zero mod p");
    return a * b.pow(a.p_ - 2);
  }
  Fp& operator+=(Fp o) { return *this = *this + o; }
  Fp& operator-=(Fp o) { return *this = *this - o; }
  Fp& operator*=(Fp o) { return *this = *this * o; }

  Fp pow(std::uint64_t e) const {
    Fp r(1, p_), b = *this;
    while (e) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }

  friend bool operator==(Fp a, Fp b) {
    unify(a, b);
    return a.v_ == b.v_;
  }

 private:
  // integer constants created without a modulus adopt the other operand's
  static void unify(Fp& a, Fp& b) {
    if (!a.p_ && b.p_) a = Fp(lift(a.pending_, b.p_), b.p_);
    if (!b.p_ && a.p_) b = Fp(lift(b.pending_, a.p_), a.p_);
    if (!a.p_ && !b.p_) throw std::logic_error("Fp constants without a modulus");
  }
  static std::uint64_t lift(long long v, std::uint64_t p) {
    long long r = v % static_cast<long long>(p);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<long long>(p) : r);
  }

  std::uint64_t v_ = 0;
  std::uint64_t p_ = 0;
  long long pending_ = 0;
};

inline bool is_zero(const Fp& x) { return x.is_zero(); }

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
    if (n % p == 0) return n == p;
  std::uint64_t d = n - 1;
  int s = 0;
  while (!(d & 1)) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    Fp x = Fp(a, n).pow(d);
    if (x.value() == 1 || x.value() == n - 1) continue;
    bool comp = true;
    for (int r = 1; r < s && comp; ++r) {
      x *= x;
      if (x.value() == n - 1) comp = false;
    }
    if (comp) return false;
  }
  return true;
}

/// A prime p with a chosen image of zeta in F_p, giving a ring map from the
/// scalar ring of Scalars(order) to F_p.
class ModularImage {
 public:
  /// `salt` selects different primes for repeated attempts.
  ModularImage(std::optional<long long> order, int salt = 0) {
    std::uint64_t n = (order && *order >= 3) ? static_cast<std::uint64_t>(*order) : 2;
    p_ = nth_prime(n, salt);
    if (order && *order >= 3) {
      std::vector<std::uint64_t> primes;
      std::uint64_t m = n;
      for (std::uint64_t q = 2; q * q <= m; ++q)
        if (m % q == 0) {
          primes.push_back(q);
          while (m % q == 0) m /= q;
        }
      if (m > 1) primes.push_back(m);
      for (std::uint64_t g = 2;; ++g) {
        Fp w = Fp(g, p_).pow((p_ - 1) / n);
        bool ok = true;
        for (auto q : primes) ok = ok && w.pow(n / q).value() != 1;
        if (ok) {
          zeta_ = w;
          break;
        }
      }
    } else if (order && *order == 2) {
      zeta_ = Fp(p_ - 1, p_);
    } else if (order) {
      zeta_ = Fp(1, p_);
    } else {
      zeta_ = Fp(2, p_);
    }
  }

  std::uint64_t prime() const { return p_; }
  Fp zeta() const { return zeta_; }

  /// The salt-th prime p = 1 mod n below 2^61, counting downwards.
  static std::uint64_t nth_prime(std::uint64_t n, int salt) {
    static std::mutex mu;
    static std::map<std::uint64_t, std::vector<std::uint64_t>> found;
    std::lock_guard<std::mutex> lock(mu);
    auto& list = found[n];
    std::uint64_t k = list.empty() ? ((std::uint64_t{1} << 61) - 1) / n : (list.back() - 1) / n - 1;
    while (static_cast<int>(list.size()) <= salt) {
      std::uint64_t p = k * n + 1;
      if (is_prime_u64(p)) list.push_back(p);
      --k;
    }
    return list[salt];
  }
  Fp of(long long v) const {
    long long r = v % static_cast<long long>(p_);
    return Fp(static_cast<std::uint64_t>(r < 0 ? r + static_cast<long long>(p_) : r), p_);
  }

  Fp of(const Rational& q) const {
    Fp num(mpz_fdiv_ui(q.get_num_mpz_t(), p_), p_);
    Fp den(mpz_fdiv_ui(q.get_den_mpz_t(), p_), p_);
    if (den.is_zero()) throw std::domain_error("denominator vanishes mod p");
    return num / den;
  }

  /// Image of an element of Q[x]/Phi_N with x -> zeta (rational constants are
  /// accepted in any field).
  Fp of(const Cyclo& c) const {
    Fp acc(0, p_), pw(1, p_);
    for (const auto& x : c.coeffs()) {
      if (x != 0) acc += of(x) * pw;
      pw *= zeta_;
    }
    return acc;
  }

  Fp of(const Laurent<Cyclo>& l, Fp t) const {
    Fp acc(0, p_);
    const auto& c = l.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + of(*it);
    int lo = l.low();
    if (lo > 0) acc *= t.pow(static_cast<std::uint64_t>(lo));
    if (lo < 0) acc *= (Fp(1, p_) / t).pow(static_cast<std::uint64_t>(-lo));
    return acc;
  }

 private:
  std::uint64_t p_ = 0;
  Fp zeta_;
};

}  // namespace omegalab

#pragma once

// Cyclotomic fields Q(zeta_N) as Q[x]/Phi_N, and the scalar ring used by the
// braided algebras: a field together with a distinguished element zeta.

#include <concepts>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "omegalab/errors.hpp"

namespace omegalab {

using Rational = mpq_class;

/// Integer coefficients of the N-th cyclotomic polynomial, constant term first.
inline std::vector<long long> cyclotomic_poly(int n) {
  if (n < 1) throw InvalidDatum("cyclotomic_poly needs N >= 1");
  // x^n - 1 divided by Phi_d for every proper divisor d
  std::vector<long long> num(n + 1, 0);
  num[0] = -1;
  num[n] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d) continue;
    auto den = cyclotomic_poly(d);
    int dn = static_cast<int>(den.size()) - 1;
    int nn = static_cast<int>(num.size()) - 1;
    std::vector<long long> q(nn - dn + 1, 0);
    for (int k = nn; k >= dn; --k) {
      long long c = num[k];  // den is monic
      q[k - dn] = c;
      for (int j = 0; j <= dn; ++j) num[k - dn + j] -= c * den[j];
    }
    num = std::move(q);
  }
  return num;
}

inline int euler_phi(int n) {
  int r = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    r -= r / p;
  }
  if (n > 1) r -= r / n;
  return r;
}

/// Q(zeta_N) presented as Q[x]/Phi_N. Conductor 1 is the field Q itself.
class CycloField {
 public:
  /// Shared, never-freed instance for conductor n.
  static const CycloField* get(int n) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<CycloField>> registry;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = registry[n];
    if (!slot) slot.reset(new CycloField(n));
    return slot.get();
  }

  int conductor() const { return n_; }
  int degree() const { return deg_; }
  const std::vector<long long>& modulus() const { return phi_; }
  /// x^k reduced mod Phi_N, for deg <= k <= 2 deg - 2.
  const std::vector<Rational>& power(int k) const { return table_[k - deg_]; }

 private:
  explicit CycloField(int n) : n_(n) {
    if (n < 1) throw InvalidDatum("conductor must be positive");
    if (n == 1) {
      deg_ = 1;
      phi_ = {0, 1};  // x, so that x reduces to 0; unused for conductor 1
      return;
    }
    phi_ = cyclotomic_poly(n);
    deg_ = static_cast<int>(phi_.size()) - 1;
    std::vector<Rational> cur(deg_, 0);
    // x^deg = -sum phi_j x^j
    for (int j = 0; j < deg_; ++j) cur[j] = Rational(static_cast<long>(-phi_[j]));
    for (int k = deg_; k <= 2 * deg_ - 2; ++k) {
      table_.push_back(cur);
      // multiply by x
      Rational top = cur[deg_ - 1];
      for (int j = deg_ - 1; j > 0; --j) cur[j] = cur[j - 1];
      cur[0] = 0;
      for (int j = 0; j < deg_; ++j) cur[j] -= top * static_cast<long>(phi_[j]);
    }
  }

  int n_;
  int deg_ = 1;
  std::vector<long long> phi_;
  std::vector<std::vector<Rational>> table_;
};

/// An element of a cyclotomic field. A null field marks a rational constant,
/// which combines with elements of any field.
class Cyclo {
 public:
  Cyclo() : c_(1) {}
  template <std::integral I>
  Cyclo(I v) : c_{Rational(static_cast<long>(v))} {}  // NOLINT(google-explicit-constructor)
  Cyclo(const Rational& v) : c_{v} {}  // NOLINT(google-explicit-constructor)
  Cyclo(const CycloField* f, std::vector<Rational> c) : f_(f), c_(std::move(c)) {
    if (f_ && f_->degree() == 1) f_ = nullptr;
    if (static_cast<int>(c_.size()) != deg()) throw FieldMismatch("coefficient vector has wrong length");
  }

  /// The generator x of Q[x]/Phi_N.
  static Cyclo gen(const CycloField* f) {
    if (f->degree() == 1) throw FieldMismatch("Q has no distinguished generator");
    std::vector<Rational> c(f->degree(), 0);
    c[1] = 1;
    return Cyclo(f, std::move(c));
  }

  /// The rational v viewed in field f.
  static Cyclo constant(const CycloField* f, const Rational& v) {
    std::vector<Rational> c(f && f->degree() > 1 ? f->degree() : 1, 0);
    c[0] = v;
    return Cyclo(f, std::move(c));
  }

  const CycloField* field() const { return f_; }
  int conductor() const { return f_ ? f_->conductor() : 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  bool is_rational() const {
    for (std::size_t k = 1; k < c_.size(); ++k)
      if (c_[k] != 0) return false;
    return true;
  }
  const Rational& rational_part() const { return c_[0]; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }
  bool is_one() const { return c_[0] == 1 && is_rational(); }

  Cyclo& operator+=(const Cyclo& o) {
    align(o);
    if (o.f_ || deg() == 1) {
      for (int k = 0; k < deg(); ++k) c_[k] += o.c_[k];
    } else {
      c_[0] += o.c_[0];
    }
    return *this;
  }
  Cyclo& operator-=(const Cyclo& o) {
    align(o);
    if (o.f_ || deg() == 1) {
      for (int k = 0; k < deg(); ++k) c_[k] -= o.c_[k];
    } else {
      c_[0] -= o.c_[0];
    }
    return *this;
  }
  friend Cyclo operator+(Cyclo a, const Cyclo& b) { return a += b; }
  friend Cyclo operator-(Cyclo a, const Cyclo& b) { return a -= b; }
  friend Cyclo operator-(Cyclo a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }

  friend Cyclo operator*(const Cyclo& a, const Cyclo& b) {
    if (!b.f_) return a.scaled(b.c_[0]);
    if (!a.f_) return b.scaled(a.c_[0]);
    if (a.f_ != b.f_) throw FieldMismatch("product of elements of different cyclotomic fields");
    const CycloField* f = a.f_;
    int d = f->degree();
    std::vector<Rational> prod(2 * d - 1, 0);
    for (int i = 0; i < d; ++i) {
      if (a.c_[i] == 0) continue;
      for (int j = 0; j < d; ++j)
        if (b.c_[j] != 0) prod[i + j] += a.c_[i] * b.c_[j];
    }
    std::vector<Rational> out(prod.begin(), prod.begin() + d);
    for (int k = d; k < 2 * d - 1; ++k) {
      if (prod[k] == 0) continue;
      const auto& r = f->power(k);
      for (int j = 0; j < d; ++j) out[j] += prod[k] * r[j];
    }
    return Cyclo(f, std::move(out));
  }
  Cyclo& operator*=(const Cyclo& o) { return *this = *this * o; }

  Cyclo inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    if (!f_ || is_rational()) return constant(f_, 1 / c_[0]);
    // solve (multiplication by this) * x = 1 over Q
    int d = deg();
    std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d + 1, 0));
    for (int j = 0; j < d; ++j) {
      std::vector<Rational> e(d, 0);
      e[j] = 1;
      Cyclo col = *this * Cyclo(f_, std::move(e));
      for (int i = 0; i < d; ++i) m[i][j] = col.c_[i];
    }
    m[0][d] = 1;
    for (int c = 0; c < d; ++c) {
      int p = c;
      while (m[p][c] == 0) ++p;
      std::swap(m[p], m[c]);
      Rational inv = 1 / m[c][c];
      for (int j = c; j <= d; ++j) m[c][j] *= inv;
      for (int r = 0; r < d; ++r) {
        if (r == c || m[r][c] == 0) continue;
        Rational f = m[r][c];
        for (int j = c; j <= d; ++j) m[r][j] -= f * m[c][j];
      }
    }
    std::vector<Rational> x(d);
    for (int i = 0; i < d; ++i) x[i] = m[i][d];
    return Cyclo(f_, std::move(x));
  }
  friend Cyclo operator/(const Cyclo& a, const Cyclo& b) {
    if (!b.f_ || b.is_rational()) {
      if (b.c_[0] == 0) throw std::domain_error("division by zero");
      return a.scaled(1 / b.c_[0]);
    }
    return a * b.inverse();
  }
  Cyclo& operator/=(const Cyclo& o) { return *this = *this / o; }

  friend bool operator==(const Cyclo& a, const Cyclo& b) { return (a - b).is_zero(); }

  Cyclo scaled(const Rational& r) const {
    Cyclo out = *this;
    for (auto& x : out.c_) x *= r;
    return out;
  }

  std::string str() const {
    std::string s;
    for (int k = 0; k < deg(); ++k) {
      if (c_[k] == 0) continue;
      if (!s.empty()) s += " + ";
      s += c_[k].get_str();
      if (k == 1) s += "*z";
      if (k > 1) s += "*z^" + std::to_string(k);
    }
    return s.empty() ? "0" : s;
  }

 private:
  int deg() const { return f_ ? f_->degree() : 1; }

  void align(const Cyclo& o) {
    if (!o.f_ || f_ == o.f_) return;
    if (!f_) {
      Rational v = c_[0];
      f_ = o.f_;
      c_.assign(f_->degree(), 0);
      c_[0] = v;
      return;
    }
    throw FieldMismatch("sum of elements of different cyclotomic fields");
  }

  const CycloField* f_ = nullptr;
  std::vector<Rational> c_;
};

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero(const Cyclo& x) { return x.is_zero(); }

/// Coefficients for the braided algebras: the field together with zeta, a
/// primitive N-th root of unity. A non-torsion zeta is modelled by the
/// rational number 2.
class Scalars {
 public:
  explicit Scalars(std::optional<long long> order) : order_(order) {
    if (order_ && *order_ < 1) throw InvalidDatum("order must be positive");
    if (order_ && *order_ >= 3) {
      field_ = CycloField::get(static_cast<int>(*order_));
      zeta_ = Cyclo::gen(field_);
      Cyclo r = one();
      for (long long k = 0; k < *order_; ++k, r *= zeta_) powers_.push_back(r);
    } else if (order_ && *order_ == 2) {
      zeta_ = Cyclo(-1);
    } else if (order_) {
      zeta_ = Cyclo(1);
    } else {
      zeta_ = Cyclo(2);
    }
  }

  std::optional<long long> order() const { return order_; }
  const CycloField* field() const { return field_; }
  const Cyclo& zeta() const { return zeta_; }

  Cyclo zero() const { return lift(0); }
  Cyclo one() const { return lift(1); }
  Cyclo lift(const Rational& r) const { return Cyclo::constant(field_, r); }

  /// zeta^a for any integer a.
  Cyclo zeta_pow(long long a) const {
    if (order_) {
      long long n = *order_;
      a %= n;
      if (a < 0) a += n;
      if (n <= 2) return lift(n == 2 && a == 1 ? -1 : 1);
      return powers_[a];
    }
    mpz_class p = 1;
    p <<= static_cast<unsigned long>(a < 0 ? -a : a);
    return lift(a < 0 ? Rational(1, 1) / Rational(p) : Rational(p));
  }

 private:
  std::optional<long long> order_;
  const CycloField* field_ = nullptr;
  Cyclo zeta_;
  std::vector<Cyclo> powers_;
};

}  // namespace omegalab

#pragma once

// Restricted quadratic forms q = zeta * q_Z, with ord(zeta) = N.
//
// Values of q and b live in Z/N (or Z when N is infinite) and are stored as
// additive exponents of zeta.

#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "omegalab/rootdata.hpp"

namespace omegalab {

/// Torsion order: a positive integer, or nullopt for a non-torsion zeta.
using Order = std::optional<long long>;

inline std::string order_str(const Order& n) { return n ? std::to_string(*n) : "inf"; }

class QForm {
 public:
  /// The minimal integral W-invariant form: 1 on short coroots, d on long ones.
  static QForm minimal(const CartanDatum& cd, Order order) {
    std::vector<long long> qz(cd.norms().begin(), cd.norms().end());
    return QForm(cd, std::move(qz), order);
  }

  /// Explicit values q_Z(alpha_i); must define a W-invariant form.
  static QForm make(const CartanDatum& cd, std::vector<long long> qz, Order order) {
    return QForm(cd, std::move(qz), order);
  }

  const CartanDatum& datum() const { return cd_; }
  Order order() const { return order_; }
  bool finite() const { return order_.has_value(); }
  long long N() const { return order_.value_or(0); }
  const std::vector<long long>& qz() const { return qz_; }
  long long bz(int i, int j) const { return bz_[i][j]; }
  /// e.g. "G2 N=5 qz=[1,3]"
  std::string str() const {
    std::string s = cd_.name() + " N=" + order_str(order_) + " qz=[";
    for (std::size_t i = 0; i < qz_.size(); ++i) s += (i ? "," : "") + std::to_string(qz_[i]);
    return s + "]";
  }
  bool is_minimal() const {
    for (int i = 0; i < cd_.rank(); ++i)
      if (qz_[i] != cd_.norms()[i]) return false;
    return true;
  }

  long long reduce(long long x) const {
    if (!order_) return x;
    long long r = x % *order_;
    return r < 0 ? r + *order_ : r;
  }

  /// Integer lift q_Z(l).
  long long qz_of(const Weight& l) const {
    long long s = 0;
    for (int i = 0; i < cd_.rank(); ++i) {
      s += qz_[i] * l.c[i] * l.c[i];
      for (int j = i + 1; j < cd_.rank(); ++j) s += bz_[i][j] * l.c[i] * l.c[j];
    }
    return s;
  }
  long long bz_of(const Weight& l, const Weight& m) const {
    long long s = 0;
    for (int i = 0; i < cd_.rank(); ++i)
      for (int j = 0; j < cd_.rank(); ++j) s += bz_[i][j] * l.c[i] * m.c[j];
    return s;
  }
  long long q(const Weight& l) const { return reduce(qz_of(l)); }
  long long b(const Weight& l, const Weight& m) const { return reduce(bz_of(l, m)); }

  /// ord(q(alpha)); nullopt means infinite. A vanishing q(alpha) has order 1.
  Order ord(const Weight& alpha) const {
    long long v = qz_of(alpha);
    if (!order_) {
      if (v == 0) return 1;
      return std::nullopt;
    }
    long long r = reduce(v);
    return *order_ / std::gcd(*order_, r);
  }

  /// N | m * q_Z(alpha), i.e. m * alpha pairs trivially under q.
  bool divides(long long m, const Weight& alpha) const {
    if (!order_) return m * qz_of(alpha) == 0;
    return reduce(m * qz_of(alpha)) == 0;
  }

  struct Predicates {
    bool nondegenerate = false;
    bool torsion_valued = false;
    bool avoids_small_torsion = false;
    bool star = false;
    bool star_sharp = false;
  };

  Predicates predicates() const {
    Predicates p;
    p.torsion_valued = finite();
    p.nondegenerate = p.star = p.star_sharp = true;
    for (const auto& a : cd_.positive_coroots()) {
      Order o = ord(a);
      if (o && *o <= 1) p.nondegenerate = false;
      long long rp = cd_.rho_pairing_dual(a);
      if (o && *o < rp) p.star = false;
      if (o && *o <= rp) p.star_sharp = false;
    }
    int d = cd_.lacing();
    p.avoids_small_torsion = true;
    for (int i = 0; i < cd_.rank(); ++i) {
      if (cd_.norms()[i] != d) continue;
      Order o = ord(cd_.simple(i));
      if (o && *o < d + 1) p.avoids_small_torsion = false;
    }
    return p;
  }

  /// q(l) + b(l, rho), with b(alpha_i, rho) = q(alpha_i).
  long long wrho_value(const Weight& l) const {
    long long s = qz_of(l);
    for (int i = 0; i < cd_.rank(); ++i) s += l.c[i] * qz_[i];
    return reduce(s);
  }

  struct Sharp {
    std::vector<long long> ord;  // ord(q(alpha_i))
    std::vector<Weight> simple;
    std::vector<Weight> positive;
    CartanDatum cartan;

    bool contains(const Weight& l) const {
      for (std::size_t i = 0; i < ord.size(); ++i)
        if (l.c[i] % ord[i] != 0) return false;
      return true;
    }
  };

  Sharp sharp_data() const {
    if (!order_) throw NonTorsion("sharp lattice needs a finite order");
    if (!predicates().nondegenerate) throw DegenerateForm("q vanishes on a coroot");
    int n = cd_.rank();
    std::vector<long long> o(n);
    std::vector<Weight> simple;
    for (int i = 0; i < n; ++i) {
      o[i] = *ord(cd_.simple(i));
      simple.push_back(static_cast<int>(o[i]) * cd_.simple(i));
    }
    std::vector<std::vector<int>> a(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        long long num = o[j] * cd_.a(i, j);
        if (num % o[i] != 0) throw InvalidDatum("sharp Cartan matrix is not integral");
        a[i][j] = static_cast<int>(num / o[i]);
      }
    auto fam = CartanDatum::identify(a);
    if (!fam) throw InvalidDatum("sharp Cartan matrix is not of finite type");
    std::vector<Weight> pos;
    for (const auto& r : cd_.positive_coroots()) pos.push_back(static_cast<int>(*ord(r)) * r);
    return Sharp{std::move(o), std::move(simple), std::move(pos), CartanDatum::from_matrix(*fam, std::move(a))};
  }

  /// The character mu -> b(l, mu), recorded on simple coroots.
  struct Kummer {
    std::vector<long long> on_simple;
    Order order;
    long long operator()(const Weight& mu) const {
      long long s = 0;
      for (std::size_t j = 0; j < on_simple.size(); ++j) s += on_simple[j] * mu.c[j];
      if (!order) return s;
      s %= *order;
      return s < 0 ? s + *order : s;
    }
    bool trivial() const {
      for (long long v : on_simple)
        if (v != 0) return false;
      return true;
    }
  };

  Kummer kummer(const Weight& l) const {
    Kummer k{{}, order_};
    for (int j = 0; j < cd_.rank(); ++j) k.on_simple.push_back(b(l, cd_.simple(j)));
    return k;
  }

  struct GerbeExponents {
    std::vector<long long> diag;                 // q(alpha_i)
    std::vector<std::vector<long long>> incidence;  // b(alpha_i, alpha_j), i != j
    long long main_diag = 0;
  };

  GerbeExponents gerbe_exponents(const Weight& l) const {
    if (!l.is_neg()) throw NotNegativeCone("gerbe exponents at " + l.str());
    GerbeExponents g;
    int n = cd_.rank();
    g.incidence.assign(n, std::vector<long long>(n, 0));
    for (int i = 0; i < n; ++i) {
      g.diag.push_back(reduce(qz_[i]));
      for (int j = 0; j < n; ++j)
        if (i != j) g.incidence[i][j] = reduce(bz_[i][j]);
    }
    g.main_diag = wrho_value(l);
    return g;
  }

 private:
  QForm(const CartanDatum& cd, std::vector<long long> qz, Order order)
      : cd_(cd), qz_(std::move(qz)), order_(order) {
    if (order_ && *order_ < 1) throw InvalidDatum("order must be positive, got " + std::to_string(*order_));
    int n = cd_.rank();
    if (static_cast<int>(qz_.size()) != n) throw InvalidDatum("q_Z needs one value per simple coroot");
    bz_.assign(n, std::vector<long long>(n, 0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) bz_[i][j] = i == j ? 2 * qz_[i] : cd_.a(i, j) * qz_[i];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (bz_[i][j] != bz_[j][i]) throw InvalidDatum("q_Z values are not W-invariant");
  }

  CartanDatum cd_;
  std::vector<long long> qz_;
  Order order_;
  std::vector<std::vector<long long>> bz_;
};

}  // namespace omegalab

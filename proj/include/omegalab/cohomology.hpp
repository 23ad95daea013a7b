#pragma once

// Bar complexes of positively graded connected algebras and the fiber tables
// built from them. Only dimensions are exposed.

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "omegalab/errors.hpp"
#include "omegalab/exact/matrix.hpp"
#include "omegalab/exact/modular.hpp"
#include "omegalab/nichols.hpp"
#include "omegalab/rootdata.hpp"

namespace omegalab {

/// A connected algebra graded by the positive cone, given piecewise: the
/// dimension of each piece and the structure constants of the product,
/// rows a * dim(nu2) + b and columns the basis of nu1 + nu2.
struct GradedAlgebra {
  std::string name;
  std::size_t rank = 0;
  std::function<std::size_t(const Weight&)> dim;
  std::function<Matrix<Cyclo>(const Weight&, const Weight&)> mult;
};

/// The quotient algebra of a slice.
inline GradedAlgebra algebra_of(AlgebraSlice& a) {
  return {slice_name(a.kind()), a.datum().rank(), [&a](const Weight& mu) { return a.dim(mu); },
          [&a](const Weight& x, const Weight& y) { return a.multiplication(x, y); }};
}

/// The graded dual: its product is the transpose of the coproduct of the slice.
inline GradedAlgebra dual_of(AlgebraSlice& a) {
  return {slice_name(a.kind()) + "-dual", a.datum().rank(), [&a](const Weight& mu) { return a.dim(mu); },
          [&a](const Weight& x, const Weight& y) { return a.comultiplication(x, y).transpose(); }};
}

/// Dimensions per cohomological degree; only nonzero entries are stored.
using Dims = std::map<int, std::size_t>;

inline std::string dims_str(const Dims& d) {
  std::string s;
  for (const auto& [n, k] : d) s += (s.empty() ? "" : " ") + std::to_string(n) + ":" + std::to_string(k);
  return s.empty() ? "0" : s;
}

/// Ordered decompositions of mu into nonzero positive weights.
inline std::vector<std::vector<Weight>> compositions(const Weight& mu) {
  std::vector<std::vector<Weight>> out;
  std::vector<Weight> cur;
  std::function<void(const Weight&)> rec = [&](const Weight& rest) {
    if (rest.is_zero()) {
      out.push_back(cur);
      return;
    }
    auto firsts = AlgebraSlice::sub_weights(rest);
    firsts.push_back(rest);
    for (const auto& f : firsts) {
      cur.push_back(f);
      rec(rest - f);
      cur.pop_back();
    }
  };
  if (!mu.is_zero()) rec(mu);
  return out;
}

/// The weight-mu part of the normalized bar complex
///   B_n = sum over compositions (mu_1, ..., mu_n) of A^{mu_1} (x) ... (x) A^{mu_n},
///   d = sum_k (-1)^k (multiply factors k and k + 1).
/// Its cohomology dims are those of the cobar complex computing Ext_A(k, k).
class BarComplex {
 public:
  BarComplex(const GradedAlgebra& a, const Weight& mu, bool check_square = true) : a_(&a), mu_(mu) {
    if (!mu.is_pos() || mu.is_zero()) throw NotPositiveCone("bar complex in degree " + mu.str());
    std::size_t top = static_cast<std::size_t>(mu.height());
    spaces_.resize(top + 2);
    for (auto& c : compositions(mu)) {
      std::size_t d = 1;
      for (const auto& p : c) d *= dim(p);
      if (d == 0) continue;
      auto& sp = spaces_[c.size()];
      sp.offset.emplace(c, sp.total);
      sp.parts.push_back(std::move(c));
      sp.total += d;
    }
    diffs_.resize(top + 2);
    for (std::size_t n = 2; n <= top; ++n) diffs_[n] = build(n);
    if (check_square)
      for (std::size_t n = 2; n < top; ++n)
        if (!product_vanishes(diffs_[n + 1], diffs_[n]))
          throw PredicateViolated("bar differential does not square to zero at " + mu.str());
  }

  const Weight& weight() const { return mu_; }
  std::size_t top() const { return spaces_.size() - 2; }
  std::size_t space_dim(std::size_t n) const { return n < spaces_.size() ? spaces_[n].total : 0; }
  /// d_n : B_n -> B_{n-1}, with rows indexed by B_n.
  const Matrix<Cyclo>& differential(std::size_t n) const { return diffs_.at(n); }

  /// dim H^n for n = 1 .. height(mu).
  Dims cohomology() const {
    std::vector<std::size_t> rk(spaces_.size() + 1, 0);
    for (std::size_t n = 2; n <= top(); ++n)
      if (diffs_[n].rows() && diffs_[n].cols()) rk[n] = modular::rank(diffs_[n]);
    Dims out;
    for (std::size_t n = 1; n <= top(); ++n) {
      std::size_t h = space_dim(n) - rk[n] - rk[n + 1];
      if (h) out[static_cast<int>(n)] = h;
    }
    return out;
  }

  /// Sum of (-1)^n dim B_n.
  long long euler() const {
    long long e = 0;
    for (std::size_t n = 1; n <= top(); ++n) e += (n % 2 ? -1 : 1) * static_cast<long long>(space_dim(n));
    return e;
  }

 private:
  struct Space {
    std::vector<std::vector<Weight>> parts;
    std::map<std::vector<Weight>, std::size_t> offset;
    std::size_t total = 0;
  };

  std::size_t dim(const Weight& w) {
    auto it = dims_.find(w);
    if (it != dims_.end()) return it->second;
    return dims_.emplace(w, a_->dim(w)).first->second;
  }

  const Matrix<Cyclo>& mult(const Weight& x, const Weight& y) {
    auto key = std::make_pair(x, y);
    auto it = mults_.find(key);
    if (it != mults_.end()) return it->second;
    return mults_.emplace(key, a_->mult(x, y)).first->second;
  }

  Matrix<Cyclo> build(std::size_t n) {
    const auto& src = spaces_[n];
    const auto& dst = spaces_[n - 1];
    Matrix<Cyclo> d(src.total, dst.total);
    for (const auto& c : src.parts) {
      std::vector<std::size_t> dims;
      for (const auto& p : c) dims.push_back(dim(p));
      std::size_t base = src.offset.at(c), count = 1;
      for (auto x : dims) count *= x;
      for (std::size_t k = 0; k + 1 < n; ++k) {
        std::vector<Weight> merged(c.begin(), c.begin() + static_cast<long>(k));
        merged.push_back(c[k] + c[k + 1]);
        merged.insert(merged.end(), c.begin() + static_cast<long>(k) + 2, c.end());
        auto off = dst.offset.find(merged);
        if (off == dst.offset.end()) continue;  // the merged piece is zero
        const auto& m = mult(c[k], c[k + 1]);
        std::size_t dm = dim(merged[k]);
        Cyclo sign((k + 1) % 2 ? -1 : 1);
        std::vector<std::size_t> idx(n, 0);
        for (std::size_t flat = 0; flat < count; ++flat) {
          // decode multi-index, last factor fastest
          std::size_t r = flat;
          for (std::size_t f = n; f-- > 0;) {
            idx[f] = r % dims[f];
            r /= dims[f];
          }
          std::size_t prefix = 0, suffix = 0, sstride = 1;
          for (std::size_t f = 0; f < k; ++f) prefix = prefix * dims[f] + idx[f];
          for (std::size_t f = n; f-- > k + 2;) {
            suffix += idx[f] * sstride;
            sstride *= dims[f];
          }
          std::size_t row = idx[k] * dims[k + 1] + idx[k + 1];
          for (std::size_t j = 0; j < dm; ++j) {
            const Cyclo& x = m(row, j);
            if (x.is_zero()) continue;
            std::size_t col = off->second + (prefix * dm + j) * sstride + suffix;
            d(base + flat, col) += sign * x;
          }
        }
      }
    }
    return d;
  }

  static bool product_vanishes(const Matrix<Cyclo>& a, const Matrix<Cyclo>& b) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
      std::vector<Cyclo> acc(b.cols(), Cyclo(0));
      for (std::size_t k = 0; k < a.cols(); ++k) {
        if (a(i, k).is_zero()) continue;
        for (std::size_t j = 0; j < b.cols(); ++j)
          if (!b(k, j).is_zero()) acc[j] += a(i, k) * b(k, j);
      }
      for (const auto& x : acc)
        if (!x.is_zero()) return false;
    }
    return true;
  }

  const GradedAlgebra* a_;
  Weight mu_;
  std::vector<Space> spaces_;
  std::vector<Matrix<Cyclo>> diffs_;
  std::map<Weight, std::size_t> dims_;
  std::map<std::pair<Weight, Weight>, Matrix<Cyclo>> mults_;
};

inline constexpr int kDefaultHeightBound = 8;

/// dim Ext^n_A(k, k) in weight mu.
inline Dims cohomology_dims(const GradedAlgebra& a, const Weight& mu, int height_bound = kDefaultHeightBound) {
  if (mu.height() > height_bound)
    throw BoundExceeded("height of " + mu.str() + " exceeds " + std::to_string(height_bound));
  return BarComplex(a, mu).cohomology();
}

inline Weight negate_checked(const Weight& lambda) {
  if (!lambda.is_neg() || lambda.is_zero()) throw NotNegativeCone("fiber at " + lambda.str());
  return -lambda;
}

/// The !-fiber at lambda: cohomology of A in weight -lambda.
inline Dims omega_shriek_fiber(AlgebraSlice& a, const Weight& lambda, int height_bound = kDefaultHeightBound) {
  Weight mu = negate_checked(lambda);
  return cohomology_dims(algebra_of(a), mu, height_bound);
}

/// The *-fiber at lambda: bar homology of the dual algebra, in degrees -n.
inline Dims omega_star_fiber(AlgebraSlice& a, const Weight& lambda, int height_bound = kDefaultHeightBound) {
  Weight mu = negate_checked(lambda);
  Dims out;
  for (const auto& [n, k] : cohomology_dims(dual_of(a), mu, height_bound)) out[-n] = k;
  return out;
}

/// The hyperbolic restriction at lambda: the piece of A in weight -lambda.
inline std::size_t omega_hyperbolic(AlgebraSlice& a, const Weight& lambda) { return a.dim(negate_checked(lambda)); }

/// Degrees of the only classes expected in the !-fiber of the DK form:
/// one class in degree l(w) at lambda = w(rho) - rho.
inline std::map<Weight, int> w_rho_lengths(const CartanDatum& cd) {
  std::map<Weight, int> out;
  for (const auto& [w, v] : cd.w_rho_table()) out.emplace(v, w.length());
  return out;
}

struct TheoremCheck {
  Weight lambda;
  std::string predicate;  // "a", "b" or "b'"
  bool holds = false;
  Dims observed;
};

struct DkTheoremReport {
  std::string form;
  bool star = false, star_sharp = false;
  int height_bound = 0;
  std::vector<TheoremCheck> checks;

  bool all_hold() const {
    for (const auto& c : checks)
      if (!c.holds) return false;
    return true;
  }
  std::vector<TheoremCheck> violations() const {
    std::vector<TheoremCheck> out;
    for (const auto& c : checks)
      if (!c.holds) out.push_back(c);
    return out;
  }
};

/// The checks at one lambda:
///   (a)  the !-fiber is one class in degree l(w) if lambda = w(rho) - rho and zero otherwise;
///   (b)  for l(w) = 2 the *-fiber has nothing in degree -1;
///   (b') the same for l(w) >= 3, when the sharp form satisfies (*).
inline std::vector<TheoremCheck> dk_theorem_checks(AlgebraSlice& dk, const std::map<Weight, int>& lengths,
                                                   const QForm::Predicates& pred, const Weight& lambda,
                                                   int height_bound) {
  std::vector<TheoremCheck> out;
  auto it = lengths.find(lambda);
  Dims shriek = omega_shriek_fiber(dk, lambda, height_bound);
  Dims expect;
  if (it != lengths.end()) expect[it->second] = 1;
  out.push_back({lambda, "a", shriek == expect, shriek});
  if (it == lengths.end() || it->second < 2) return out;
  if (it->second >= 3 && !pred.star_sharp) return out;
  Dims star = omega_star_fiber(dk, lambda, height_bound);
  out.push_back({lambda, it->second == 2 ? "b" : "b'", !star.count(-1), star});
  return out;
}

/// All checks for lambda of height at most the bound. Violations are
/// recorded, not thrown.
inline DkTheoremReport dk_theorem_report(const QForm& q, int height_bound) {
  DkTheoremReport rep;
  rep.form = q.str();
  auto pred = q.predicates();
  rep.star = pred.star;
  rep.star_sharp = pred.star_sharp;
  rep.height_bound = height_bound;
  Nichols nic(q);
  AlgebraSlice dk(nic, SliceKind::dk);
  auto lengths = w_rho_lengths(q.datum());
  for (const auto& mu : positive_weights_up_to(q.datum().rank(), height_bound))
    for (auto& c : dk_theorem_checks(dk, lengths, pred, -mu, height_bound)) rep.checks.push_back(std::move(c));
  return rep;
}

}  // namespace omegalab

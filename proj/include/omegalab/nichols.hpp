#pragma once

// The free braided algebra on generators e_i over a bicharacter, its pairing
// with the cofree coalgebra, and the graded quotients built from it:
//
//   small  the image of the pairing at u = 1;
//   dk     the quantum Serre ideal saturated at u = 1 and then specialized.
//
// Elements of degree mu are coordinate vectors over the words of degree mu,
// in the order returned by words_of.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "omegalab/errors.hpp"
#include "omegalab/exact/cyclotomic.hpp"
#include "omegalab/exact/laurent.hpp"
#include "omegalab/exact/matrix.hpp"
#include "omegalab/exact/modp.hpp"
#include "omegalab/exact/modular.hpp"
#include "omegalab/exact/ratfunc.hpp"
#include "omegalab/exact/saturation.hpp"
#include "omegalab/qform.hpp"
#include "omegalab/rootdata.hpp"

namespace omegalab {

using Word = std::vector<int>;

inline std::string word_str(const Word& w) {
  std::string s;
  for (int x : w) s += (s.empty() ? "" : ".") + std::to_string(x);
  return s.empty() ? "1" : s;
}

inline Weight degree_of(std::size_t rank, const Word& w) {
  Weight d(rank);
  for (int x : w) d.c[x] += 1;
  return d;
}

/// All words of degree mu, lexicographically.
inline std::vector<Word> words_of(const CartanDatum& cd, const Weight& mu) {
  if (!mu.is_pos()) throw NotPositiveCone("words of degree " + mu.str());
  std::vector<Word> out;
  Word cur;
  Weight left = mu;
  std::function<void()> rec = [&]() {
    if (left.is_zero()) {
      out.push_back(cur);
      return;
    }
    for (int i = 0; i < cd.rank(); ++i) {
      if (left.c[i] == 0) continue;
      --left.c[i];
      cur.push_back(i);
      rec();
      cur.pop_back();
      ++left.c[i];
    }
  };
  rec();
  return out;
}

/// How the bilinear form b' with b'(l, l) = q(l) is chosen.
enum class Lift {
  upper,      // b'(i, j) = b(i, j) for i < j, q(i) for i = j, 0 for i > j
  symmetric,  // b'(i, j) = b(i, j) / 2 off the diagonal; odd finite order only
};

/// chi(alpha_i, alpha_j) = zeta^{z(i, j)} u^{v(i, j)}, where z is the lift of
/// q_Z and v the lift of the minimal form. The u-part is always the upper lift.
class Bicharacter {
 public:
  explicit Bicharacter(const QForm& q, bool inverse = false, Lift lift = Lift::upper)
      : q_(q), scalars_(q.order()), inverse_(inverse), lift_(lift) {
    const auto& cd = q.datum();
    QForm qmin = QForm::minimal(cd, q.order());
    int n = cd.rank();
    z_.assign(n, std::vector<long long>(n, 0));
    v_.assign(n, std::vector<long long>(n, 0));
    if (lift == Lift::symmetric && (!q.finite() || q.N() % 2 == 0))
      throw InvalidDatum("the symmetric lift needs an odd finite order");
    long long half = q.finite() ? (q.N() + 1) / 2 : 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) {
          z_[i][j] = q.qz()[i];
          v_[i][j] = qmin.qz()[i];
        } else if (i < j) {
          z_[i][j] = lift == Lift::upper ? q.bz(i, j) : q.reduce(q.bz(i, j) * half);
          v_[i][j] = qmin.bz(i, j);
        } else if (lift == Lift::symmetric) {
          z_[i][j] = q.reduce(q.bz(i, j) * half);
        }
        if (inverse) {
          z_[i][j] = -z_[i][j];
          v_[i][j] = -v_[i][j];
        }
      }
  }

  const QForm& form() const { return q_; }
  const Scalars& scalars() const { return scalars_; }
  bool inverted() const { return inverse_; }
  Lift lift() const { return lift_; }
  long long zeta_exp(int i, int j) const { return z_[i][j]; }
  long long u_exp(int i, int j) const { return v_[i][j]; }

  std::pair<long long, long long> exps(const Weight& l, const Weight& m) const {
    long long a = 0, b = 0;
    for (std::size_t i = 0; i < l.rank(); ++i) {
      if (!l.c[i]) continue;
      for (std::size_t j = 0; j < m.rank(); ++j) {
        if (!m.c[j]) continue;
        a += static_cast<long long>(l.c[i]) * m.c[j] * z_[i][j];
        b += static_cast<long long>(l.c[i]) * m.c[j] * v_[i][j];
      }
    }
    return {a, b};
  }

  Cyclo at_one(const Weight& l, const Weight& m) const { return scalars_.zeta_pow(exps(l, m).first); }
  Laurent<Cyclo> generic(const Weight& l, const Weight& m) const {
    auto [a, b] = exps(l, m);
    return Laurent<Cyclo>::monomial(scalars_.zeta_pow(a), static_cast<int>(b));
  }

 private:
  QForm q_;
  Scalars scalars_;
  bool inverse_;
  Lift lift_;
  std::vector<std::vector<long long>> z_, v_;
};

template <class R>
struct GradedVector {
  Weight degree;
  std::map<Word, R> coeffs;
};

/// One term chi * (left (x) right) of the coproduct of a word, with
/// chi = zeta^zeta_exp u^u_exp.
struct Split {
  Word left, right;
  long long zeta_exp = 0, u_exp = 0;
};

/// The coproduct of e_w in the free braided algebra: letter m goes left and
/// letter l < m goes right with factor chi(alpha_{w_l}, alpha_{w_m}). With
/// `left_degree` only the component of that left degree is produced.
inline std::vector<Split> comult_word(const Bicharacter& chi, const Word& w,
                                      const std::optional<Weight>& left_degree = std::nullopt) {
  std::vector<Split> out;
  std::size_t rank = chi.form().datum().rank();
  Weight need = left_degree ? *left_degree : Weight(rank);
  Split cur;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == w.size()) {
      if (!left_degree || need.is_zero()) out.push_back(cur);
      return;
    }
    int x = w[k];
    // goes right
    cur.right.push_back(x);
    rec(k + 1);
    cur.right.pop_back();
    // goes left, paying for every earlier letter already sent right
    if (left_degree && need.c[x] == 0) return;
    long long za = 0, ua = 0;
    for (int y : cur.right) {
      za += chi.zeta_exp(y, x);
      ua += chi.u_exp(y, x);
    }
    cur.left.push_back(x);
    cur.zeta_exp += za;
    cur.u_exp += ua;
    if (left_degree) --need.c[x];
    rec(k + 1);
    if (left_degree) ++need.c[x];
    cur.zeta_exp -= za;
    cur.u_exp -= ua;
    cur.left.pop_back();
  };
  rec(0);
  return out;
}

/// A graded piece of the saturated Serre ideal.
struct IdealPiece {
  std::vector<LVec> basis;   // over K[u, 1/u], saturated at u = 1
  std::vector<KVec> at_one;  // its specialization, independent
  int divisions = 0;
  bool certified_by_bound = false;
};

/// Everything attached to one bicharacter, computed lazily degree by degree.
/// Not thread-safe: use one instance per thread.
class Nichols {
 public:
  explicit Nichols(const QForm& q, bool inverse = false, Lift lift = Lift::upper)
      : chi_(q, inverse, lift), mi_(q.order()), t_(mi_.of(static_cast<long long>(1234567))) {}

  const Bicharacter& chi() const { return chi_; }
  const QForm& form() const { return chi_.form(); }
  const CartanDatum& datum() const { return chi_.form().datum(); }
  Order order() const { return chi_.form().order(); }
  std::size_t rank() const { return datum().rank(); }

  const std::vector<Word>& words(const Weight& mu) {
    auto it = words_.find(mu);
    if (it != words_.end()) return it->second;
    auto w = words_of(datum(), mu);
    auto& idx = index_[mu];
    for (std::size_t k = 0; k < w.size(); ++k) idx.emplace(w[k], k);
    return words_.emplace(mu, std::move(w)).first->second;
  }
  std::size_t index(const Weight& mu, const Word& w) {
    words(mu);
    return index_.at(mu).at(w);
  }

  /// G[w, w'] = coefficient of e_{w'_1} (x) ... (x) e_{w'_n} in the iterated
  /// coproduct of e_w, at u = 1.
  const Matrix<Cyclo>& gram_at_one(const Weight& mu) {
    return gram<Cyclo>(gram_one_, mu, [&](long long a, long long) { return chi_.scalars().zeta_pow(a); });
  }
  /// The same with u active.
  const Matrix<Laurent<Cyclo>>& gram_generic(const Weight& mu) {
    return gram<Laurent<Cyclo>>(gram_gen_, mu, [&](long long a, long long b) {
      return Laurent<Cyclo>::monomial(chi_.scalars().zeta_pow(a), static_cast<int>(b));
    });
  }
  /// The generic Gram matrix under a ring map to F_p (u to a fixed unit).
  const Matrix<Fp>& gram_mod(const Weight& mu) {
    return gram<Fp>(gram_mod_, mu, [&](long long a, long long b) {
      Fp z = mi_.zeta(), t = t_;
      if (a < 0) {
        z = Fp(1, mi_.prime()) / z;
        a = -a;
      }
      if (b < 0) {
        t = Fp(1, mi_.prime()) / t;
        b = -b;
      }
      return z.pow(static_cast<std::uint64_t>(a)) * t.pow(static_cast<std::uint64_t>(b));
    });
  }

  /// dim of the small quantum group in degree mu.
  std::size_t small_dim(const Weight& mu) {
    auto it = small_dim_.find(mu);
    if (it != small_dim_.end()) return it->second;
    std::size_t r = modular::rank(gram_at_one(mu));
    small_dim_.emplace(mu, r);
    return r;
  }

  /// Lower bound for the rank of the generic Gram matrix.
  std::size_t generic_rank_lower_bound(const Weight& mu) { return omegalab::rank(Matrix<Fp>(gram_mod(mu))); }

  /// The quantum Serre element of (i, j): the generator of the one-dimensional
  /// generic radical in degree -(s_i s_j(rho) - rho), normalized so that the
  /// word e_i^k e_j has coefficient 1.
  const GradedVector<Laurent<Cyclo>>& serre_element(int i, int j) {
    auto key = std::make_pair(i, j);
    if (auto it = serre_.find(key); it != serre_.end()) return it->second;
    if (i == j) throw InvalidDatum("Serre element needs i != j");
    Weight deg = datum().serre_degree(i, j);
    const auto& W = words(deg);
    const auto& G = gram_generic(deg);
    std::size_t n = W.size();
    // left kernel: x G = 0
    using RF = RatFunc<Cyclo>;
    Matrix<RF> gt(n, n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) gt(b, a) = RF(G(a, b));
    auto ker = kernel(gt);
    if (ker.size() != 1)
      throw UnexpectedKernelDim("radical in degree " + deg.str() + " has dimension " + std::to_string(ker.size()));
    Word lead(deg.c[i], i);
    lead.push_back(j);
    std::size_t li = index(deg, lead);
    if (ker[0][li].is_zero()) throw UnexpectedKernelDim("Serre element misses its leading word");
    RF scale = RF(1) / ker[0][li];
    GradedVector<Laurent<Cyclo>> s{deg, {}};
    for (std::size_t a = 0; a < n; ++a) {
      RF c = ker[0][a] * scale;
      if (c.is_zero()) continue;
      const auto& den = c.den();
      int e = den.degree();
      for (int k = 0; k < e; ++k)
        if (!omegalab::is_zero(den.coeff(k))) throw UnexpectedKernelDim("Serre coefficient is not a Laurent polynomial");
      s.coeffs.emplace(W[a], Laurent<Cyclo>::from_coeffs(-e, c.num().coeffs()));
    }
    return serre_.emplace(key, std::move(s)).first->second;
  }

  /// Dense coordinates of a graded vector.
  template <class R>
  std::vector<R> dense(const GradedVector<R>& v) {
    std::vector<R> out(words(v.degree).size(), R(0));
    for (const auto& [w, c] : v.coeffs) out[index(v.degree, w)] = c;
    return out;
  }

  /// The saturated Serre ideal in degree mu.
  const IdealPiece& dk_ideal(const Weight& mu) {
    if (auto it = ideal_.find(mu); it != ideal_.end()) return it->second;
    if (!mu.is_pos()) throw NotPositiveCone("ideal in degree " + mu.str());
    IdealPiece piece;
    if (mu.height() >= 2) {
      std::size_t n = words(mu).size();
      std::vector<LVec> gens;
      for (int i = 0; i < static_cast<int>(rank()); ++i) {
        Weight lower = mu - datum().simple(i);
        if (!lower.is_pos() || lower.is_zero()) continue;
        const auto& sub = dk_ideal(lower);
        const auto& LW = words(lower);
        for (const auto& v : sub.basis) {
          LVec left(n), right(n);
          for (std::size_t k = 0; k < LW.size(); ++k) {
            if (v[k].is_zero()) continue;
            Word a{i};
            a.insert(a.end(), LW[k].begin(), LW[k].end());
            Word b = LW[k];
            b.push_back(i);
            left[index(mu, a)] = v[k];
            right[index(mu, b)] = v[k];
          }
          gens.push_back(std::move(left));
          gens.push_back(std::move(right));
        }
      }
      for (const auto& [ij, s] : serre_elements_of_degree(mu)) gens.push_back(dense(*s));
      std::size_t bound = n - generic_rank_lower_bound(mu);
      auto res = saturate_at_u1(gens, n, order(), bound);
      piece.basis = std::move(res.basis);
      piece.at_one = std::move(res.at_one);
      piece.divisions = res.divisions;
      piece.certified_by_bound = res.certified_by_bound;
    }
    return ideal_.emplace(mu, std::move(piece)).first->second;
  }

  std::size_t dk_dim(const Weight& mu) { return words(mu).size() - dk_ideal(mu).at_one.size(); }

  /// Echelon basis of the span at u = 1 of products w_x S w_y of specialized
  /// Serre elements, in degree mu.
  const std::vector<KVec>& serre_span(const Weight& mu) {
    if (auto it = serre_span_.find(mu); it != serre_span_.end()) return it->second;
    std::vector<KVec> rows;
    if (mu.height() >= 2) {
      std::size_t n = words(mu).size();
      for (int i = 0; i < static_cast<int>(rank()); ++i) {
        Weight lower = mu - datum().simple(i);
        if (!lower.is_pos() || lower.is_zero()) continue;
        const auto& sub = serre_span(lower);
        const auto& LW = words(lower);
        for (const auto& v : sub) {
          KVec left(n, Cyclo(0)), right(n, Cyclo(0));
          for (std::size_t k = 0; k < LW.size(); ++k) {
            if (v[k].is_zero()) continue;
            Word a{i};
            a.insert(a.end(), LW[k].begin(), LW[k].end());
            Word b = LW[k];
            b.push_back(i);
            left[index(mu, a)] = v[k];
            right[index(mu, b)] = v[k];
          }
          rows.push_back(std::move(left));
          rows.push_back(std::move(right));
        }
      }
      for (const auto& [ij, s] : serre_elements_of_degree(mu)) rows.push_back(at_one(dense(*s)));
      if (!rows.empty()) {
        auto e = modular::echelon(Matrix<Cyclo>::from_rows(rows, n));
        rows.clear();
        for (std::size_t r = 0; r < e.pivots.size(); ++r) rows.push_back(e.rows.row(r));
      }
    }
    return serre_span_.emplace(mu, std::move(rows)).first->second;
  }

  /// The specialized Serre elements span the specialized saturated ideal in
  /// degree mu. The inclusion one way always holds and is checked.
  bool serre_generates(const Weight& mu) {
    const auto& J = serre_span(mu);
    const auto& I = dk_ideal(mu).at_one;
    if (J.empty()) return I.empty();
    std::size_t n = words(mu).size();
    std::vector<KVec> both = I;
    both.insert(both.end(), J.begin(), J.end());
    if (modular::rank(Matrix<Cyclo>::from_rows(both, n)) != I.size())
      throw PredicateViolated("specialized Serre span leaves the saturated ideal at " + mu.str());
    return J.size() == I.size();
  }

 private:
  std::vector<std::pair<std::pair<int, int>, const GradedVector<Laurent<Cyclo>>*>> serre_elements_of_degree(
      const Weight& mu) {
    std::vector<std::pair<std::pair<int, int>, const GradedVector<Laurent<Cyclo>>*>> out;
    for (int i = 0; i < static_cast<int>(rank()); ++i)
      for (int j = 0; j < static_cast<int>(rank()); ++j)
        if (i != j && datum().serre_degree(i, j) == mu) out.push_back({{i, j}, &serre_element(i, j)});
    return out;
  }

  static KVec at_one(const LVec& v) { return omegalab::at_one(v); }

  template <class R, class Mono>
  const Matrix<R>& gram(std::map<Weight, Matrix<R>>& memo, const Weight& mu, Mono mono) {
    if (auto it = memo.find(mu); it != memo.end()) return it->second;
    if (!mu.is_pos()) throw NotPositiveCone("Gram matrix in degree " + mu.str());
    const auto& W = words(mu);
    std::size_t n = W.size();
    Matrix<R> G(n, n);
    if (mu.is_zero()) {
      G(0, 0) = R(1);
      return memo.emplace(mu, std::move(G)).first->second;
    }
    for (std::size_t r = 0; r < n; ++r) {
      const Word& x = W[r];
      int i = x.back();
      Weight lower = mu - datum().simple(i);
      const auto& Gp = gram<R>(memo, lower, mono);
      Word w(x.begin(), x.end() - 1);
      std::size_t wi = index(lower, w);
      for (std::size_t c = 0; c < n; ++c) {
        const Word& y = W[c];
        R acc(0);
        long long a = 0, b = 0;  // exponents of chi(deg y_{>k}, alpha_i)
        for (std::size_t k = y.size(); k-- > 0;) {
          if (y[k] == i) {
            Word rest = y;
            rest.erase(rest.begin() + static_cast<long>(k));
            const R& g = Gp(wi, index(lower, rest));
            if (!omegalab::is_zero(g)) acc += mono(a, b) * g;
          }
          a += chi_.zeta_exp(y[k], i);
          b += chi_.u_exp(y[k], i);
        }
        G(r, c) = acc;
      }
    }
    return memo.emplace(mu, std::move(G)).first->second;
  }

  Bicharacter chi_;
  ModularImage mi_;
  Fp t_;
  std::map<Weight, std::vector<Word>> words_;
  std::map<Weight, std::map<Word, std::size_t>> index_;
  std::map<Weight, Matrix<Cyclo>> gram_one_;
  std::map<Weight, Matrix<Laurent<Cyclo>>> gram_gen_;
  std::map<Weight, Matrix<Fp>> gram_mod_;
  std::map<Weight, std::size_t> small_dim_;
  std::map<std::pair<int, int>, GradedVector<Laurent<Cyclo>>> serre_;
  std::map<Weight, IdealPiece> ideal_;
  std::map<Weight, std::vector<KVec>> serre_span_;
};

enum class SliceKind { free, small, dk };

inline std::string slice_name(SliceKind k) {
  switch (k) {
    case SliceKind::free:
      return "free";
    case SliceKind::small:
      return "small";
    case SliceKind::dk:
      return "dk";
  }
  return "?";
}

/// A graded quotient of the free algebra at u = 1, with the basis of each
/// piece given by the words outside the pivots of the ideal's echelon form.
class AlgebraSlice {
 public:
  AlgebraSlice(Nichols& nichols, SliceKind kind) : nic_(&nichols), kind_(kind) {}

  Nichols& nichols() const { return *nic_; }
  SliceKind kind() const { return kind_; }
  const CartanDatum& datum() const { return nic_->datum(); }

  std::size_t dim(const Weight& mu) { return piece(mu).basis.size(); }

  /// Words whose classes form the basis of the piece.
  std::vector<Word> basis_words(const Weight& mu) {
    std::vector<Word> out;
    const auto& W = nic_->words(mu);
    for (auto k : piece(mu).basis) out.push_back(W[k]);
    return out;
  }

  /// Coordinates of the class of the word with index k.
  KVec project_word(const Weight& mu, std::size_t k) {
    const auto& p = piece(mu);
    KVec v(p.basis.size(), Cyclo(0));
    if (p.position[k] >= 0) {
      v[p.position[k]] = Cyclo(1);
    } else {
      std::size_t r = static_cast<std::size_t>(-p.position[k] - 1);
      for (std::size_t b = 0; b < p.basis.size(); ++b) v[b] = -p.ideal.rows(r, p.basis[b]);
    }
    return v;
  }

  /// Coordinates of the class of an arbitrary element of the free piece.
  KVec project(const Weight& mu, const KVec& x) {
    const auto& p = piece(mu);
    KVec v(p.basis.size(), Cyclo(0));
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (x[k].is_zero()) continue;
      auto pk = project_word(mu, k);
      for (std::size_t b = 0; b < v.size(); ++b)
        if (!pk[b].is_zero()) v[b] += x[k] * pk[b];
    }
    return v;
  }

  /// Row a * dim(nu2) + b holds the product of basis elements a and b.
  Matrix<Cyclo> multiplication(const Weight& nu1, const Weight& nu2) {
    Weight nu = nu1 + nu2;
    auto B1 = basis_words(nu1), B2 = basis_words(nu2);
    Matrix<Cyclo> m(B1.size() * B2.size(), dim(nu));
    for (std::size_t a = 0; a < B1.size(); ++a)
      for (std::size_t b = 0; b < B2.size(); ++b) {
        Word w = B1[a];
        w.insert(w.end(), B2[b].begin(), B2[b].end());
        auto v = project_word(nu, nic_->index(nu, w));
        for (std::size_t c = 0; c < v.size(); ++c) m(a * B2.size() + b, c) = v[c];
      }
    return m;
  }

  /// Row c holds the (nu1, nu2) component of the coproduct of basis element c
  /// of degree nu1 + nu2, in coordinates a * dim(nu2) + b.
  Matrix<Cyclo> comultiplication(const Weight& nu1, const Weight& nu2) {
    Weight nu = nu1 + nu2;
    auto B = basis_words(nu);
    std::size_t d1 = dim(nu1), d2 = dim(nu2);
    Matrix<Cyclo> m(B.size(), d1 * d2);
    for (std::size_t c = 0; c < B.size(); ++c) {
      auto row = comult_row(B[c], nu1, nu2);
      for (std::size_t k = 0; k < row.size(); ++k) m(c, k) = row[k];
    }
    return m;
  }

  /// The (nu1, nu2) coproduct component of an arbitrary word, projected.
  KVec comult_row(const Word& w, const Weight& nu1, const Weight& nu2) {
    std::size_t d1 = dim(nu1), d2 = dim(nu2);
    KVec out(d1 * d2, Cyclo(0));
    for (const auto& s : comult_word(nic_->chi(), w, nu1)) {
      Cyclo coef = nic_->chi().scalars().zeta_pow(s.zeta_exp);
      auto a = project_word(nu1, nic_->index(nu1, s.left));
      auto b = project_word(nu2, nic_->index(nu2, s.right));
      for (std::size_t x = 0; x < d1; ++x) {
        if (a[x].is_zero()) continue;
        Cyclo ca = coef * a[x];
        for (std::size_t y = 0; y < d2; ++y)
          if (!b[y].is_zero()) out[x * d2 + y] += ca * b[y];
      }
    }
    return out;
  }

  /// The ideal in degree mu at u = 1, as echelon rows over the words.
  const Matrix<Cyclo>& ideal_rows(const Weight& mu) { return piece(mu).ideal.rows; }

  /// dim of the primitive elements of degree mu: the common kernel of all
  /// reduced coproduct components.
  std::size_t primitives(const Weight& mu) {
    std::size_t d = dim(mu);
    if (d == 0) return 0;
    std::vector<Weight> lefts;
    for (const auto& nu : sub_weights(mu)) lefts.push_back(nu);
    std::size_t cols = 0;
    std::vector<Matrix<Cyclo>> blocks;
    for (const auto& nu : lefts) {
      blocks.push_back(comultiplication(nu, mu - nu));
      cols += blocks.back().cols();
    }
    if (cols == 0) return d;
    Matrix<Cyclo> all(d, cols);
    std::size_t off = 0;
    for (const auto& bl : blocks) {
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < bl.cols(); ++c) all(r, off + c) = bl(r, c);
      off += bl.cols();
    }
    return d - modular::rank(all);
  }

  /// Nonzero weights strictly below mu in the positive cone.
  static std::vector<Weight> sub_weights(const Weight& mu) {
    std::vector<Weight> out;
    Weight cur(mu.rank());
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == mu.rank()) {
        if (!cur.is_zero() && cur != mu) out.push_back(cur);
        return;
      }
      for (int x = 0; x <= mu.c[i]; ++x) {
        cur.c[i] = x;
        rec(i + 1);
      }
      cur.c[i] = 0;
    };
    rec(0);
    return out;
  }

 private:
  struct Piece {
    modular::Echelon ideal;
    std::vector<std::size_t> basis;
    std::vector<long> position;  // >= 0: basis slot; < 0: -(echelon row) - 1
  };

  const Piece& piece(const Weight& mu) {
    if (auto it = pieces_.find(mu); it != pieces_.end()) return it->second;
    std::size_t n = nic_->words(mu).size();
    std::vector<KVec> rows;
    switch (kind_) {
      case SliceKind::free:
        break;
      case SliceKind::small:
        if (mu.height() >= 2) rows = modular::left_kernel(nic_->gram_at_one(mu));
        break;
      case SliceKind::dk:
        rows = nic_->dk_ideal(mu).at_one;
        break;
    }
    Piece p;
    if (rows.empty()) p.ideal = modular::Echelon{{}, Matrix<Cyclo>(0, n)};
    else p.ideal = modular::echelon(Matrix<Cyclo>::from_rows(rows, n));
    p.position.assign(n, 0);
    std::vector<bool> is_piv(n, false);
    for (std::size_t r = 0; r < p.ideal.pivots.size(); ++r) {
      is_piv[p.ideal.pivots[r]] = true;
      p.position[p.ideal.pivots[r]] = -static_cast<long>(r) - 1;
    }
    for (std::size_t k = 0; k < n; ++k)
      if (!is_piv[k]) {
        p.position[k] = static_cast<long>(p.basis.size());
        p.basis.push_back(k);
      }
    return pieces_.emplace(mu, std::move(p)).first->second;
  }

  Nichols* nic_;
  SliceKind kind_;
  std::map<Weight, Piece> pieces_;
};

/// Partitions of gamma into sharp positive roots ord(q(alpha)) alpha.
inline std::uint64_t sharp_partitions(const QForm::Sharp& sharp, const Weight& gamma) {
  return partition_count(sharp.positive, gamma);
}

/// K(mu) = sum over gamma in the sharp lattice of K_sharp(gamma) dim u_q^{mu - gamma}.
/// Returns both sides.
inline std::pair<std::uint64_t, std::uint64_t> frobenius_sides(Nichols& nic, const Weight& mu) {
  const auto& cd = nic.datum();
  auto sharp = nic.form().sharp_data();
  std::uint64_t rhs = 0;
  Weight gamma(mu.rank());
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == mu.rank()) {
      std::uint64_t k = sharp_partitions(sharp, gamma);
      if (k) rhs += k * nic.small_dim(mu - gamma);
      return;
    }
    for (int x = 0; x <= mu.c[i]; x += static_cast<int>(sharp.ord[i])) {
      gamma.c[i] = x;
      rec(i + 1);
    }
    gamma.c[i] = 0;
  };
  rec(0);
  return {cd.kostant_partitions(mu), rhs};
}

/// Checks the quantum Frobenius dimension identity at mu.
inline bool frobenius_dim_identity(Nichols& nic, const Weight& mu) {
  if (!nic.form().finite()) throw NonTorsion("quantum Frobenius needs a finite order");
  if (!nic.form().predicates().avoids_small_torsion)
    throw PredicateViolated("form does not avoid small torsion");
  auto [lhs, rhs] = frobenius_sides(nic, mu);
  if (lhs != rhs)
    throw PredicateViolated("Frobenius identity fails at " + mu.str() + ": " + std::to_string(lhs) +
                            " != " + std::to_string(rhs));
  return true;
}

}  // namespace omegalab

#pragma once

// Root-datum arithmetic on the coroot lattice.
//
// Conventions: simple coroots alpha_i span the lattice; the Cartan entry
// a[i][j] = <alpha_j, check-alpha_i>, and s_i(l) = l - <l, check-alpha_i> alpha_i.
// Type labels name the system formed by the simple coroots, Bourbaki numbering.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>

#include "omegalab/errors.hpp"

namespace omegalab {

/// An element of the coroot lattice, written in the basis of simple coroots.
struct Weight {
  std::vector<int> c;

  Weight() = default;
  explicit Weight(std::size_t rank) : c(rank, 0) {}
  Weight(std::initializer_list<int> xs) : c(xs) {}
  explicit Weight(std::vector<int> xs) : c(std::move(xs)) {}

  static Weight simple(std::size_t rank, std::size_t i) {
    Weight w(rank);
    w.c[i] = 1;
    return w;
  }

  std::size_t rank() const { return c.size(); }
  int operator[](std::size_t i) const { return c[i]; }
  int& operator[](std::size_t i) { return c[i]; }

  int height() const { return std::accumulate(c.begin(), c.end(), 0); }
  bool is_zero() const {
    return std::all_of(c.begin(), c.end(), [](int x) { return x == 0; });
  }
  bool is_pos() const {
    return std::all_of(c.begin(), c.end(), [](int x) { return x >= 0; });
  }
  bool is_neg() const {
    return std::all_of(c.begin(), c.end(), [](int x) { return x <= 0; });
  }

  Weight& operator+=(const Weight& o) {
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
    return *this;
  }
  Weight& operator-=(const Weight& o) {
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.c[i];
    return *this;
  }
  friend Weight operator+(Weight a, const Weight& b) { return a += b; }
  friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
  friend Weight operator-(Weight a) {
    for (auto& x : a.c) x = -x;
    return a;
  }
  friend Weight operator*(int k, Weight a) {
    for (auto& x : a.c) x *= k;
    return a;
  }
  /// Componentwise a <= b.
  bool le(const Weight& o) const {
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i] > o.c[i]) return false;
    return true;
  }

  friend bool operator==(const Weight&, const Weight&) = default;
  friend auto operator<=>(const Weight&, const Weight&) = default;

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(c[i]);
    }
    return s + ")";
  }
};

struct WeightHash {
  std::size_t operator()(const Weight& w) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (int x : w.c) h = (h ^ static_cast<std::size_t>(x + 0x5bd1)) * 0x100000001b3ull;
    return h;
  }
};

enum class Family { A, B, C, D, E, F, G };

inline char family_letter(Family f) { return "ABCDEFG"[static_cast<int>(f)]; }

/// All elements of the positive cone with 1 <= height <= max_height, ordered by
/// height and then lexicographically.
inline std::vector<Weight> positive_weights_up_to(std::size_t rank, int max_height) {
  std::vector<Weight> out;
  for (int h = 1; h <= max_height; ++h) {
    // compositions of h into `rank` nonnegative parts, lexicographically descending
    std::vector<int> parts(rank, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
      if (i + 1 == rank) {
        parts[i] = left;
        out.emplace_back(parts);
        return;
      }
      for (int x = left; x >= 0; --x) {
        parts[i] = x;
        rec(i + 1, left - x);
      }
    };
    rec(0, h);
  }
  return out;
}

/// Number of ways to write mu as a multiset sum of the given parts, which must
/// lie in the positive cone minus zero.
inline std::uint64_t partition_count(const std::vector<Weight>& parts, const Weight& mu) {
  std::map<std::pair<Weight, std::size_t>, std::uint64_t> memo;
  std::function<std::uint64_t(const Weight&, std::size_t)> count = [&](const Weight& m, std::size_t k) -> std::uint64_t {
    if (m.is_zero()) return 1;
    if (k == parts.size()) return 0;
    auto key = std::make_pair(m, k);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::uint64_t total = 0;
    for (Weight rest = m; rest.is_pos(); rest -= parts[k]) total += count(rest, k + 1);
    memo.emplace(std::move(key), total);
    return total;
  };
  return mu.is_pos() ? count(mu, 0) : 0;
}

/// A Weyl group element as a reduced word of simple-reflection indices.
struct WeylElt {
  std::vector<int> word;  // w = s_{word[0]} s_{word[1]} ...
  int length() const { return static_cast<int>(word.size()); }
};

/// A simple finite root datum on the coroot lattice.
class CartanDatum {
 public:
  static constexpr std::size_t kDefaultWeylBound = 2'000'000;

  static CartanDatum make(Family family, int rank) {
    return CartanDatum(family, rank, standard_cartan(family, rank));
  }

  /// Parses labels like "G2", "A3", "b2" (rank may also be given separately).
  static CartanDatum parse(std::string_view label, std::optional<int> rank = std::nullopt) {
    if (label.empty()) throw InvalidDatum("empty type label");
    char f = static_cast<char>(std::toupper(static_cast<unsigned char>(label[0])));
    if (f < 'A' || f > 'G') throw InvalidDatum("unknown family '" + std::string(label) + "'");
    int r = 0;
    if (label.size() > 1) {
      try {
        std::size_t used = 0;
        r = std::stoi(std::string(label.substr(1)), &used);
        if (used + 1 != label.size()) throw InvalidDatum("bad type label '" + std::string(label) + "'");
      } catch (const std::logic_error&) {
        throw InvalidDatum("bad type label '" + std::string(label) + "'");
      }
      if (rank && *rank != r) throw InvalidDatum("--rank disagrees with type label");
    } else if (rank) {
      r = *rank;
    } else {
      throw InvalidDatum("missing rank for family " + std::string(1, f));
    }
    return make(static_cast<Family>(f - 'A'), r);
  }

  /// Builds a datum from an explicit Cartan matrix; the matrix must be of finite
  /// type and connected (products of simple factors are rejected).
  static CartanDatum from_matrix(Family family, std::vector<std::vector<int>> a) {
    int rank = static_cast<int>(a.size());
    return CartanDatum(family, rank, std::move(a));
  }

  Family family() const { return family_; }
  int rank() const { return rank_; }
  int a(int i, int j) const { return a_[i][j]; }
  const std::vector<std::vector<int>>& cartan() const { return a_; }
  std::string name() const { return std::string(1, family_letter(family_)) + std::to_string(rank_); }

  /// <l, check-alpha_i>.
  int pair(const Weight& l, int i) const {
    int s = 0;
    for (int j = 0; j < rank_; ++j) s += l.c[j] * a_[i][j];
    return s;
  }
  Weight reflect(Weight l, int i) const {
    l.c[i] -= pair(l, i);
    return l;
  }
  Weight simple(int i) const { return Weight::simple(rank_, i); }
  Weight zero() const { return Weight(rank_); }

  /// Relative squared lengths of the simple coroots, normalized so the short
  /// ones have length 1. These are the values of the minimal quadratic form.
  const std::vector<int>& norms() const { return norms_; }
  /// Lacing number: ratio of long to short squared lengths.
  int lacing() const { return *std::max_element(norms_.begin(), norms_.end()); }

  /// Integer quadratic form Q with Q(alpha_i) = norms_i, i.e. the minimal one.
  long long norm_of(const Weight& l) const {
    long long s = 0;
    for (int i = 0; i < rank_; ++i) {
      s += static_cast<long long>(norms_[i]) * l.c[i] * l.c[i];
      for (int j = i + 1; j < rank_; ++j)
        s += static_cast<long long>(a_[i][j]) * norms_[i] * l.c[i] * l.c[j];
    }
    return s;
  }

  const std::vector<Weight>& positive_coroots() const { return positive_; }

  bool is_coroot(const Weight& l) const {
    Weight p = l.is_neg() ? -l : l;
    return std::find(positive_.begin(), positive_.end(), p) != positive_.end();
  }

  /// <rho, check-alpha> for the root check-alpha attached to a positive coroot alpha.
  int rho_pairing_dual(const Weight& alpha) const {
    long long num = 0;
    for (int i = 0; i < rank_; ++i) num += static_cast<long long>(alpha.c[i]) * norms_[i];
    long long den = norm_of(alpha);
    return static_cast<int>(num / den);
  }

  /// 2*rho, the sum of the positive coroots (rho itself may be half-integral).
  const Weight& two_rho() const { return two_rho_; }

  /// <rho, check-alpha_i> = 1 always; returned for completeness of the interface.
  int rho_pairing(int) const { return 1; }

  /// Enumerates W by breadth-first search; element k has length = BFS depth.
  std::vector<WeylElt> weyl_group(std::size_t bound = kDefaultWeylBound) const {
    std::vector<WeylElt> out;
    std::unordered_map<Weight, std::size_t, WeightHash> seen;
    std::vector<Weight> images;
    out.push_back({});
    images.push_back(two_rho_);
    seen.emplace(two_rho_, 0);
    for (std::size_t k = 0; k < out.size(); ++k) {
      for (int i = 0; i < rank_; ++i) {
        Weight img = reflect(images[k], i);
        if (seen.count(img)) continue;
        if (out.size() >= bound) throw BoundExceeded("Weyl group larger than " + std::to_string(bound));
        WeylElt w;
        w.word.reserve(out[k].word.size() + 1);
        w.word.push_back(i);
        w.word.insert(w.word.end(), out[k].word.begin(), out[k].word.end());
        seen.emplace(img, out.size());
        images.push_back(std::move(img));
        out.push_back(std::move(w));
      }
    }
    return out;
  }

  Weight act(const WeylElt& w, Weight l) const {
    for (auto it = w.word.rbegin(); it != w.word.rend(); ++it) l = reflect(std::move(l), *it);
    return l;
  }

  /// w(rho) - rho, always integral.
  Weight w_rho_minus_rho(const WeylElt& w) const {
    Weight img = act(w, two_rho_) - two_rho_;
    for (auto& x : img.c) x /= 2;
    return img;
  }

  /// Map from each element of W to w(rho)-rho, paired with lengths.
  std::vector<std::pair<WeylElt, Weight>> w_rho_table(std::size_t bound = kDefaultWeylBound) const {
    std::vector<std::pair<WeylElt, Weight>> t;
    for (auto& w : weyl_group(bound)) {
      Weight v = w_rho_minus_rho(w);
      t.emplace_back(std::move(w), std::move(v));
    }
    return t;
  }

  /// -(s_i s_j(rho) - rho): the degree of the quantum Serre element for (i, j).
  Weight serre_degree(int i, int j) const {
    WeylElt w{{i, j}};
    return -w_rho_minus_rho(w);
  }

  /// Number of ways to write mu as a multiset sum of positive coroots.
  std::uint64_t kostant_partitions(const Weight& mu) const {
    if (!mu.is_pos()) throw NotPositiveCone("kostant_partitions at " + mu.str());
    std::map<std::pair<Weight, std::size_t>, std::uint64_t> memo;
    // count(m, k) = partitions of m using positive coroots with index >= k
    std::function<std::uint64_t(const Weight&, std::size_t)> count = [&](const Weight& m, std::size_t k) -> std::uint64_t {
      if (m.is_zero()) return 1;
      if (k == positive_.size()) return 0;
      auto key = std::make_pair(m, k);
      if (auto it = memo.find(key); it != memo.end()) return it->second;
      std::uint64_t total = 0;
      Weight rest = m;
      while (rest.is_pos()) {
        total += count(rest, k + 1);
        rest -= positive_[k];
      }
      memo.emplace(std::move(key), total);
      return total;
    };
    return count(mu, 0);
  }

  // -- rational coweights -------------------------------------------------

  using QWeight = std::vector<mpq_class>;

  /// Fundamental coweight varpi_i (<varpi_i, check-alpha_j> = delta_ij) in the
  /// basis of simple coroots.
  QWeight fundamental(int i) const {
    QWeight v(rank_);
    for (int k = 0; k < rank_; ++k) v[k] = inverse_[k][i];
    return v;
  }
  mpq_class qpair(const QWeight& l, int i) const {
    mpq_class s = 0;
    for (int j = 0; j < rank_; ++j) s += l[j] * a_[i][j];
    return s;
  }
  bool is_dominant(const QWeight& l) const {
    for (int i = 0; i < rank_; ++i)
      if (qpair(l, i) < 0) return false;
    return true;
  }
  QWeight dominant_conjugate(QWeight l) const {
    for (bool moved = true; moved;) {
      moved = false;
      for (int i = 0; i < rank_; ++i) {
        mpq_class p = qpair(l, i);
        if (p < 0) {
          l[i] -= p;
          moved = true;
        }
      }
    }
    return l;
  }
  static QWeight to_q(const Weight& w) {
    QWeight v(w.rank());
    for (std::size_t i = 0; i < w.rank(); ++i) v[i] = w.c[i];
    return v;
  }

  /// True iff mu is a weight of the irreducible representation of highest
  /// weight hw: hw - dom(mu) must be a nonnegative integral combination of
  /// simple coroots.
  bool is_weight_of(const QWeight& hw, const QWeight& mu) const {
    if (!is_dominant(hw)) throw NotDominant("highest weight is not dominant");
    QWeight d = dominant_conjugate(mu);
    for (int i = 0; i < rank_; ++i) {
      mpq_class diff = hw[i] - d[i];
      if (diff < 0 || diff.get_den() != 1) return false;
    }
    return true;
  }

  /// Names the finite type of an arbitrary Cartan matrix by matching it, up to
  /// relabelling of the nodes, against the standard ones.
  static std::optional<Family> identify(const std::vector<std::vector<int>>& a) {
    int n = static_cast<int>(a.size());
    std::vector<int> perm(n);
    for (int f = 0; f < 7; ++f) {
      std::vector<std::vector<int>> s;
      try {
        s = standard_cartan(static_cast<Family>(f), n);
      } catch (const InvalidDatum&) {
        continue;
      }
      std::iota(perm.begin(), perm.end(), 0);
      do {
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
          for (int j = 0; j < n && ok; ++j) ok = s[i][j] == a[perm[i]][perm[j]];
        if (ok) return static_cast<Family>(f);
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return std::nullopt;
  }

  friend bool operator==(const CartanDatum& x, const CartanDatum& y) {
    return x.family_ == y.family_ && x.a_ == y.a_;
  }

 private:
  CartanDatum(Family family, int rank, std::vector<std::vector<int>> a)
      : family_(family), rank_(rank), a_(std::move(a)) {
    validate();
    compute_norms();
    compute_positive();
    compute_inverse();
  }

  static std::vector<std::vector<int>> standard_cartan(Family f, int n) {
    auto bad = [&] {
      return InvalidDatum(std::string("unsupported type ") + family_letter(f) + std::to_string(n));
    };
    if (n < 1) throw bad();
    std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) a[i][i] = 2;
    auto link = [&](int i, int j) { a[i][j] = a[j][i] = -1; };
    switch (f) {
      case Family::A:
        for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
        break;
      case Family::B:  // alpha_n short
        if (n < 2) throw bad();
        for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
        a[n - 1][n - 2] = -2;
        break;
      case Family::C:  // alpha_n long
        if (n < 2) throw bad();
        for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
        a[n - 2][n - 1] = -2;
        break;
      case Family::D:
        if (n < 4) throw bad();
        for (int i = 0; i + 2 < n; ++i) link(i, i + 1);
        link(n - 3, n - 1);
        break;
      case Family::E:
        if (n < 6 || n > 8) throw bad();
        // Bourbaki: 1-3-4-5-6-7-8 with 2 attached to 4 (0-based below)
        link(0, 2);
        link(1, 3);
        link(2, 3);
        for (int i = 3; i + 1 < n; ++i) link(i, i + 1);
        break;
      case Family::F:
        if (n != 4) throw bad();
        link(0, 1);
        link(2, 3);
        a[1][2] = -1;  // alpha_2 long, alpha_3 short
        a[2][1] = -2;
        break;
      case Family::G:
        if (n != 2) throw bad();
        a[0][1] = -3;  // alpha_1 short
        a[1][0] = -1;
        break;
    }
    return a;
  }

  void validate() const {
    if (rank_ < 1 || static_cast<int>(a_.size()) != rank_) throw InvalidDatum("bad Cartan matrix shape");
    for (const auto& row : a_)
      if (static_cast<int>(row.size()) != rank_) throw InvalidDatum("bad Cartan matrix shape");
    for (int i = 0; i < rank_; ++i) {
      if (a_[i][i] != 2) throw InvalidDatum("diagonal entry must be 2");
      for (int j = 0; j < rank_; ++j) {
        if (i == j) continue;
        if (a_[i][j] > 0) throw InvalidDatum("off-diagonal entries must be <= 0");
        if ((a_[i][j] == 0) != (a_[j][i] == 0)) throw InvalidDatum("a[i][j]=0 iff a[j][i]=0 violated");
      }
    }
    // connectedness
    std::vector<bool> seen(rank_, false);
    std::vector<int> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
      int i = stack.back();
      stack.pop_back();
      for (int j = 0; j < rank_; ++j)
        if (!seen[j] && a_[i][j] != 0) {
          seen[j] = true;
          stack.push_back(j);
        }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end())
      throw InvalidDatum("only simple (connected) root data are supported");
  }

  void compute_norms() {
    // a[i][j] n_i = a[j][i] n_j on a tree; propagate rationally then clear denominators
    std::vector<mpq_class> n(rank_, 0);
    n[0] = 1;
    std::vector<int> stack{0};
    while (!stack.empty()) {
      int i = stack.back();
      stack.pop_back();
      for (int j = 0; j < rank_; ++j)
        if (j != i && a_[i][j] != 0 && n[j] == 0) {
          n[j] = n[i] * a_[i][j] / a_[j][i];
          stack.push_back(j);
        }
    }
    for (int i = 0; i < rank_; ++i)
      for (int j = 0; j < rank_; ++j)
        if (i != j && n[i] * a_[i][j] != n[j] * a_[j][i]) throw InvalidDatum("Cartan matrix is not symmetrizable");
    mpq_class mn = *std::min_element(n.begin(), n.end());
    norms_.resize(rank_);
    for (int i = 0; i < rank_; ++i) {
      mpq_class r = n[i] / mn;
      if (r.get_den() != 1) throw InvalidDatum("non-integral length ratio");
      norms_[i] = static_cast<int>(r.get_num().get_si());
    }
    // positive definiteness via leading principal minors of the symmetrized form
    std::vector<std::vector<mpq_class>> g(rank_, std::vector<mpq_class>(rank_));
    for (int i = 0; i < rank_; ++i)
      for (int j = 0; j < rank_; ++j) g[i][j] = mpq_class(a_[i][j] * norms_[i]);
    for (int k = 0; k < rank_; ++k) {
      if (g[k][k] <= 0) throw InvalidDatum("Cartan matrix is not of finite type");
      for (int i = k + 1; i < rank_; ++i) {
        mpq_class f = g[i][k] / g[k][k];
        for (int j = k; j < rank_; ++j) g[i][j] -= f * g[k][j];
      }
    }
  }

  void compute_positive() {
    positive_.clear();
    for (int i = 0; i < rank_; ++i) positive_.push_back(simple(i));
    for (std::size_t k = 0; k < positive_.size(); ++k) {
      for (int i = 0; i < rank_; ++i) {
        Weight g = reflect(positive_[k], i);
        if (g.is_pos() && !g.is_zero() && std::find(positive_.begin(), positive_.end(), g) == positive_.end())
          positive_.push_back(g);
      }
    }
    std::stable_sort(positive_.begin(), positive_.end(), [](const Weight& x, const Weight& y) {
      if (x.height() != y.height()) return x.height() < y.height();
      return x > y;
    });
    two_rho_ = zero();
    for (const auto& p : positive_) two_rho_ += p;
  }

  void compute_inverse() {
    int n = rank_;
    std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(2 * n, 0));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) m[i][j] = a_[i][j];
      m[i][n + i] = 1;
    }
    for (int c = 0; c < n; ++c) {
      int p = c;
      while (m[p][c] == 0) ++p;
      std::swap(m[p], m[c]);
      mpq_class inv = 1 / m[c][c];
      for (auto& x : m[c]) x *= inv;
      for (int r = 0; r < n; ++r)
        if (r != c && m[r][c] != 0) {
          mpq_class f = m[r][c];
          for (int j = 0; j < 2 * n; ++j) m[r][j] -= f * m[c][j];
        }
    }
    inverse_.assign(n, std::vector<mpq_class>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) inverse_[i][j] = m[i][n + j];
  }

  Family family_;
  int rank_;
  std::vector<std::vector<int>> a_;
  std::vector<int> norms_;
  std::vector<Weight> positive_;
  Weight two_rho_;
  std::vector<std::vector<mpq_class>> inverse_;
};

}  // namespace omegalab

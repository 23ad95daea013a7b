#pragma once

// Reduced row echelon forms over Q(zeta_N) computed modulo primes and lifted
// back by Chinese remaindering and rational reconstruction. Every result is
// checked exactly before it is returned:
//
//   * ranks modulo p never exceed the rank over Q(zeta_N), so rank >= r;
//   * the lifted R is accepted only if every column of M equals the
//     combination of pivot columns that R prescribes, so rank <= r.
//
// Together these pin both the rank and the echelon form. When lifting keeps
// failing the routine falls back to plain elimination.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "omegalab/exact/cyclotomic.hpp"
#include "omegalab/exact/matrix.hpp"
#include "omegalab/exact/modp.hpp"

namespace omegalab::modular {

struct Echelon {
  std::vector<std::size_t> pivots;
  Matrix<Cyclo> rows;  // pivots.size() x cols, reduced
};

namespace detail {

inline const CycloField* field_of(const Matrix<Cyclo>& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j).field()) return m(i, j).field();
  return nullptr;
}

/// p-adic images of all coefficients, or nullopt if a denominator vanishes.
inline std::optional<std::uint64_t> residue(const Rational& q, std::uint64_t p) {
  std::uint64_t den = mpz_fdiv_ui(q.get_den_mpz_t(), p);
  if (den == 0) return std::nullopt;
  std::uint64_t num = mpz_fdiv_ui(q.get_num_mpz_t(), p);
  return (Fp(num, p) / Fp(den, p)).value();
}

/// r/s with |r|, s <= sqrt(M / 2) and r = a s mod M, if one exists.
inline std::optional<Rational> reconstruct(const mpz_class& a, const mpz_class& M, const mpz_class& bound) {
  mpz_class r0 = M, r1 = a, t0 = 0, t1 = 1;
  while (r1 > bound) {
    mpz_class q = r0 / r1;
    mpz_class r2 = r0 - q * r1;
    mpz_class t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0 || abs(t1) > bound) return std::nullopt;
  mpz_class g = gcd(r1, t1);
  if (g != 1) return std::nullopt;
  Rational out(r1, t1);
  out.canonicalize();
  return out;
}

/// Pivots and echelon rows of one embedding Q(zeta) -> F_p.
struct Image {
  std::vector<std::size_t> pivots;
  Matrix<Fp> rows;
};

inline Image echelon_mod(Matrix<Fp> m) {
  Image img;
  img.pivots = rref(m);
  img.rows = Matrix<Fp>(img.pivots.size(), m.cols());
  for (std::size_t r = 0; r < img.pivots.size(); ++r)
    for (std::size_t j = 0; j < m.cols(); ++j) img.rows(r, j) = m(r, j);
  return img;
}

/// Integer coefficient vectors of a row of Cyclo entries scaled by a common
/// denominator (which is dropped).
inline std::vector<std::vector<mpz_class>> integral(const std::vector<const Cyclo*>& xs, int deg) {
  mpz_class l = 1;
  for (const auto* x : xs)
    for (const auto& c : x->coeffs())
      if (c != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<std::vector<mpz_class>> out(xs.size(), std::vector<mpz_class>(deg, 0));
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const auto& c = xs[k]->coeffs();
    for (std::size_t j = 0; j < c.size(); ++j)
      if (c[j] != 0) out[k][j] = c[j].get_num() * (l / c[j].get_den());
  }
  return out;
}

/// M(:, f) = sum_r R(r, f) M(:, pivot_r) for every non-pivot column f, checked
/// in Z[zeta] after clearing denominators row- and column-wise.
inline bool verify(const Matrix<Cyclo>& m, const std::vector<std::size_t>& piv, const Matrix<Cyclo>& R,
                   const CycloField* field) {
  const int deg = field ? field->degree() : 1;
  std::vector<bool> is_piv(m.cols(), false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<std::vector<std::vector<mpz_class>>> mrows;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::vector<const Cyclo*> xs;
    for (std::size_t j = 0; j < m.cols(); ++j) xs.push_back(&m(i, j));
    mrows.push_back(integral(xs, deg));
  }
  std::vector<mpz_class> acc(2 * deg - 1);
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_piv[f]) continue;
    // the column (R(0, f), ..., R(r-1, f), -1) pairs to zero with every row of M
    std::vector<const Cyclo*> xs;
    for (std::size_t r = 0; r < piv.size(); ++r) xs.push_back(&R(r, f));
    Cyclo minus_one(-1);
    xs.push_back(&minus_one);
    auto col = integral(xs, deg);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (auto& a : acc) a = 0;
      auto addmul = [&](const std::vector<mpz_class>& x, const std::vector<mpz_class>& y) {
        for (int s = 0; s < deg; ++s) {
          if (x[s] == 0) continue;
          for (int t = 0; t < deg; ++t)
            if (y[t] != 0) mpz_addmul(acc[s + t].get_mpz_t(), x[s].get_mpz_t(), y[t].get_mpz_t());
        }
      };
      for (std::size_t r = 0; r < piv.size(); ++r) addmul(col[r], mrows[i][piv[r]]);
      addmul(col[piv.size()], mrows[i][f]);
      if (deg > 1) {
        const auto& phi = field->modulus();
        for (int k = 2 * deg - 2; k >= deg; --k) {
          if (acc[k] == 0) continue;
          for (int j = 0; j < deg; ++j)
            if (phi[j] != 0) acc[k - deg + j] -= acc[k] * static_cast<long>(phi[j]);
          acc[k] = 0;
        }
      }
      for (int k = 0; k < deg; ++k)
        if (acc[k] != 0) return false;
    }
  }
  return true;
}

inline Echelon exact_echelon(Matrix<Cyclo> m) {
  Echelon e;
  e.pivots = rref(m);
  e.rows = Matrix<Cyclo>(e.pivots.size(), m.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r)
    for (std::size_t j = 0; j < m.cols(); ++j) e.rows(r, j) = m(r, j);
  return e;
}

}  // namespace detail

/// Reduced row echelon form of m, certified exactly.
inline Echelon echelon(const Matrix<Cyclo>& m, int max_primes = 120) {
  using detail::Image;
  const CycloField* f = detail::field_of(m);
  const int n = f ? f->conductor() : 1;
  const int deg = f ? f->degree() : 1;
  const std::size_t rows = m.rows(), cols = m.cols();
  if (rows == 0 || cols == 0) return Echelon{{}, Matrix<Cyclo>(0, cols)};

  std::vector<long long> units;
  for (int e = 1; e <= std::max(n, 1); ++e)
    if (std::gcd(e, n) == 1) units.push_back(e);

  std::vector<std::size_t> piv;
  std::vector<std::vector<mpz_class>> acc;  // per (r, col, coefficient) residue
  mpz_class M = 1;
  int used = 0;
  int next_attempt = 1;

  for (int salt = 0; salt < 4 * max_primes && used < max_primes; ++salt) {
    ModularImage mi(n >= 3 ? std::optional<long long>(n) : std::optional<long long>(1), salt);
    const std::uint64_t p = mi.prime();
    // coefficient residues of every entry
    std::vector<std::uint64_t> res(rows * cols * deg, 0);
    bool bad = false;
    for (std::size_t i = 0; i < rows && !bad; ++i)
      for (std::size_t j = 0; j < cols && !bad; ++j) {
        const auto& c = m(i, j).coeffs();
        for (std::size_t k = 0; k < c.size(); ++k) {
          if (c[k] == 0) continue;
          auto v = detail::residue(c[k], p);
          if (!v) {
            bad = true;
            break;
          }
          res[(i * cols + j) * deg + k] = *v;
        }
      }
    if (bad) continue;

    std::vector<Fp> roots;
    for (auto e : units) roots.push_back(deg == 1 ? Fp(1, p) : mi.zeta().pow(static_cast<std::uint64_t>(e)));
    std::vector<Image> imgs;
    for (const auto& z : roots) {
      Matrix<Fp> mm(rows, cols);
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
          Fp v(0, p), pw(1, p);
          for (int k = 0; k < deg; ++k, pw *= z) {
            std::uint64_t r = res[(i * cols + j) * deg + k];
            if (r) v += Fp(r, p) * pw;
          }
          mm(i, j) = v;
        }
      imgs.push_back(detail::echelon_mod(std::move(mm)));
    }
    bool agree = true;
    for (const auto& im : imgs) agree = agree && im.pivots == imgs[0].pivots;
    if (!agree) continue;
    const auto& pv = imgs[0].pivots;
    if (used > 0) {
      // an unlucky prime loses rank or delays pivots
      bool better = pv.size() > piv.size() ||
                    (pv.size() == piv.size() && std::lexicographical_compare(pv.begin(), pv.end(), piv.begin(), piv.end()));
      if (better) {
        used = 0;
        next_attempt = 1;
        M = 1;
      } else if (pv != piv) {
        continue;
      }
    }
    if (used == 0) {
      piv = pv;
      acc.assign(piv.size() * cols, std::vector<mpz_class>(deg, 0));
    }
    // interpolate coefficients from the embeddings: solve the Vandermonde system
    Matrix<Fp> V(deg, deg);
    for (int k = 0; k < deg; ++k) {
      Fp pw(1, p);
      for (int j = 0; j < deg; ++j, pw *= roots[k]) V(k, j) = pw;
    }
    Matrix<Fp> aug(deg, 2 * deg);
    for (int k = 0; k < deg; ++k)
      for (int j = 0; j < deg; ++j) {
        aug(k, j) = V(k, j);
        aug(k, deg + j) = Fp(k == j ? 1 : 0, p);
      }
    rref(aug);
    mpz_class pz;
    mpz_import(pz.get_mpz_t(), 1, 1, sizeof(p), 0, 0, &p);
    mpz_class Minv_p = 0;  // M^{-1} mod p for CRT
    if (used > 0) {
      std::uint64_t mr = mpz_fdiv_ui(M.get_mpz_t(), p);
      std::uint64_t inv = (Fp(1, p) / Fp(mr, p)).value();
      mpz_import(Minv_p.get_mpz_t(), 1, 1, sizeof(inv), 0, 0, &inv);
    }
    std::vector<bool> is_piv(cols, false);
    for (auto c : piv) is_piv[c] = true;
    for (std::size_t r = 0; r < piv.size(); ++r)
      for (std::size_t j = 0; j < cols; ++j) {
        if (is_piv[j]) continue;
        for (int c = 0; c < deg; ++c) {
          Fp v(0, p);
          for (int k = 0; k < deg; ++k) v += aug(c, deg + k) * imgs[k].rows(r, j);
          mpz_class vz;
          std::uint64_t vv = v.value();
          mpz_import(vz.get_mpz_t(), 1, 1, sizeof(vv), 0, 0, &vv);
          auto& a = acc[r * cols + j][c];
          if (used == 0) {
            a = vz;
          } else {
            mpz_class t = ((vz - a) % pz + pz) % pz;
            t = (t * Minv_p) % pz;
            a += M * t;
          }
        }
      }
    M *= pz;
    ++used;
    // lifting is attempted on a geometric schedule
    if (used < next_attempt) continue;
    next_attempt = used + std::max(1, used / 2);

    mpz_class bound;
    mpz_class half = M / 2;
    mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
    Matrix<Cyclo> R(piv.size(), cols);
    bool ok = true;
    for (std::size_t r = 0; r < piv.size(); ++r) R(r, piv[r]) = Cyclo(1);
    for (std::size_t r = 0; r < piv.size() && ok; ++r)
      for (std::size_t j = 0; j < cols && ok; ++j) {
        if (is_piv[j]) continue;
        std::vector<Rational> c(deg);
        for (int k = 0; k < deg && ok; ++k) {
          const auto& a = acc[r * cols + j][k];
          if (a == 0) continue;
          auto q = detail::reconstruct(a, M, bound);
          if (!q) ok = false;
          else c[k] = *q;
        }
        if (ok) R(r, j) = deg == 1 ? Cyclo(c[0]) : Cyclo(f, std::move(c));
      }
    if (ok && detail::verify(m, piv, R, f)) return Echelon{piv, std::move(R)};
  }
  return detail::exact_echelon(m);
}

inline std::size_t rank(const Matrix<Cyclo>& m) { return echelon(m).pivots.size(); }

/// Basis of {x : m x = 0}, one vector per non-pivot column.
inline std::vector<std::vector<Cyclo>> kernel(const Matrix<Cyclo>& m) {
  auto e = echelon(m);
  std::vector<bool> is_piv(m.cols(), false);
  for (auto c : e.pivots) is_piv[c] = true;
  std::vector<std::vector<Cyclo>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_piv[f]) continue;
    std::vector<Cyclo> v(m.cols(), Cyclo(0));
    v[f] = Cyclo(1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.rows(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

inline std::vector<std::vector<Cyclo>> left_kernel(const Matrix<Cyclo>& m) { return kernel(m.transpose()); }

}  // namespace omegalab::modular

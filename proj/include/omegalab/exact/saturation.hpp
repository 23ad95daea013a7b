#pragma once

// Saturation at u = 1 of a finitely generated submodule of L^n, where
// L = K[u, 1/u]. The saturation is computed locally at u = 1, which is all
// its fibre at u = 1 depends on:
//
//   1. pick generators forming a basis of the K(u)-span;
//   2. while the specialization at u = 1 of the basis is dependent, replace
//      one basis vector per dependency c by (sum c_l b_l) / (u - 1).
//
// Step 2 strictly enlarges the module inside its saturation and stops exactly
// when the module is saturated.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "omegalab/exact/cyclotomic.hpp"
#include "omegalab/exact/laurent.hpp"
#include "omegalab/exact/matrix.hpp"
#include "omegalab/exact/modp.hpp"
#include "omegalab/exact/modular.hpp"

namespace omegalab {

using LVec = std::vector<Laurent<Cyclo>>;
using KVec = std::vector<Cyclo>;

struct SaturationResult {
  std::vector<LVec> basis;  // basis of the saturation near u = 1
  std::vector<KVec> at_one;  // its specialization, linearly independent
  int divisions = 0;         // number of (u - 1)-division steps taken
  bool certified_by_bound = false;
};

namespace detail {

/// Rows of gens independent at u = t, greedily in order, computed exactly over K.
inline std::vector<std::size_t> independent_at(const std::vector<LVec>& gens, std::size_t n, const Cyclo& t) {
  // greedy independent rows are the pivot columns of the transpose
  Matrix<Cyclo> m(n, gens.size());
  for (std::size_t g = 0; g < gens.size(); ++g)
    for (std::size_t j = 0; j < n; ++j) m(j, g) = gens[g][j].eval(t);
  return modular::echelon(m).pivots;
}

/// Indices of generators forming a K(u)-basis of their span.
///
/// Rows independent after any ring map are independent over K(u), so a mod-p
/// evaluation proposes a basis. It is accepted outright when it reaches
/// `rank_bound` (an upper bound for the K(u)-rank). Otherwise exact ranks over
/// K are taken at (k+1)D+1 points, D bounding the u-degree spread of a row: a
/// nonzero (k+1)-minor cannot vanish at all of them.
inline std::vector<std::size_t> choose_basis(const std::vector<LVec>& gens, std::size_t n,
                                             std::optional<long long> order,
                                             std::optional<std::size_t> rank_bound, bool& certified) {
  std::vector<std::size_t> best;
  certified = false;
  for (int attempt = 0; attempt < 3; ++attempt) {
    ModularImage mi(order, attempt);
    Fp t = mi.of(static_cast<long long>(7919 + 104729 * attempt));
    RowReducer<Fp> rr(n);
    std::vector<std::size_t> chosen;
    for (std::size_t g = 0; g < gens.size(); ++g) {
      std::vector<Fp> v;
      v.reserve(n);
      for (const auto& x : gens[g]) v.push_back(mi.of(x, t));
      if (rr.add(std::move(v))) chosen.push_back(g);
      if (rank_bound && chosen.size() == *rank_bound) break;
    }
    if (chosen.size() > best.size()) best = chosen;
    if (rank_bound && best.size() == *rank_bound) {
      certified = true;
      return best;
    }
    if (!rank_bound) break;
  }
  int spread = 0;
  for (const auto& g : gens) {
    int lo = 0, hi = 0;
    bool any = false;
    for (const auto& x : g) {
      if (x.is_zero()) continue;
      lo = any ? std::min(lo, x.low()) : x.low();
      hi = any ? std::max(hi, x.high()) : x.high();
      any = true;
    }
    if (any) spread = std::max(spread, hi - lo);
  }
  for (bool grew = true; grew;) {
    grew = false;
    std::size_t k = best.size();
    if (k == std::min(n, gens.size())) break;
    long long points = static_cast<long long>(k + 1) * spread + 1;
    for (long long p = 0; p < points; ++p) {
      auto at = independent_at(gens, n, Cyclo(static_cast<long>(p + 2)));
      if (at.size() > k) {
        best = std::move(at);
        grew = true;
        break;
      }
    }
  }
  return best;
}

}  // namespace detail

/// Saturates span_L(gens) at u = 1. `rank_bound`, if given, must bound the
/// K(u)-rank of the span from above; it only speeds up the basis choice.
inline SaturationResult saturate_at_u1(const std::vector<LVec>& gens, std::size_t n,
                                       std::optional<long long> order,
                                       std::optional<std::size_t> rank_bound = std::nullopt) {
  SaturationResult res;
  auto idx = detail::choose_basis(gens, n, order, rank_bound, res.certified_by_bound);
  std::vector<LVec> b;
  b.reserve(idx.size());
  for (auto g : idx) b.push_back(gens[g]);

  for (;;) {
    Matrix<Cyclo> m1(b.size(), n);
    for (std::size_t r = 0; r < b.size(); ++r)
      for (std::size_t j = 0; j < n; ++j) m1(r, j) = b[r][j].at_one();
    auto deps = modular::left_kernel(m1);
    if (deps.empty()) {
      res.at_one.reserve(b.size());
      for (std::size_t r = 0; r < b.size(); ++r) res.at_one.push_back(m1.row(r));
      break;
    }
    auto ech = modular::echelon(Matrix<Cyclo>::from_rows(deps, b.size()));
    const auto& piv = ech.pivots;
    const auto& dm = ech.rows;
    std::vector<LVec> next = b;
    for (std::size_t s = 0; s < piv.size(); ++s) {
      LVec comb(n);
      for (std::size_t l = 0; l < b.size(); ++l) {
        const Cyclo& c = dm(s, l);
        if (c.is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j)
          if (!b[l][j].is_zero()) comb[j] += b[l][j].scaled(c);
      }
      for (auto& x : comb) x = x.div_u_minus_1();
      next[piv[s]] = std::move(comb);
      ++res.divisions;
    }
    b = std::move(next);
  }
  res.basis = std::move(b);
  return res;
}

}  // namespace omegalab

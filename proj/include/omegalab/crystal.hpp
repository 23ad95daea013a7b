#pragma once

// B(infinity) inside the semi-infinite tensor product ... (x) B_{i_2} (x) B_{i_1}
// of elementary crystals along a cyclic sequence iota, and the classification
// of its elements by their string data.
//
// An element is the sequence of entries a_1, a_2, ... (entry a_k of colour i_k
// stands for b_{i_k}(-a_k)); its weight is -sum a_k alpha_{i_k}. Operators:
//
//   e_geo(b, i)  raises one entry (total, lowers the weight by alpha_i);
//   f_geo(b, i)  lowers one entry, defined iff eps(b, i) > 0.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "omegalab/errors.hpp"
#include "omegalab/qform.hpp"
#include "omegalab/rootdata.hpp"

namespace omegalab {

/// The base permutation of the cyclic sequence: i_k = base[(k - 1) mod rank].
struct IotaSeq {
  std::vector<int> base;

  static IotaSeq standard(std::size_t rank) {
    IotaSeq s;
    for (std::size_t i = 0; i < rank; ++i) s.base.push_back(static_cast<int>(i));
    return s;
  }
  static IotaSeq make(std::vector<int> base, std::size_t rank) {
    auto sorted = base;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != standard(rank).base) throw InvalidDatum("iota base is not a permutation of the nodes");
    return IotaSeq{std::move(base)};
  }
  int color(std::size_t pos) const { return base[pos % base.size()]; }
  std::string str() const {
    std::string s;
    for (int x : base) s += (s.empty() ? "" : ",") + std::to_string(x);
    return s;
  }
};

/// Entries a_1, a_2, ... stored from position 0, trailing zeros dropped.
struct CrystalElt {
  std::vector<int> a;

  bool is_vacuum() const { return a.empty(); }
  friend bool operator==(const CrystalElt&, const CrystalElt&) = default;
  friend auto operator<=>(const CrystalElt&, const CrystalElt&) = default;
  std::string str() const {
    std::string s = "(";
    for (std::size_t k = a.size(); k-- > 0;) s += std::to_string(a[k]) + (k ? "," : "");
    return s + ")";
  }
};

/// Steps (j_n, m_n) driving an element to the vacuum.
using StringData = std::vector<std::pair<int, int>>;

inline std::string string_str(const StringData& s) {
  std::string out = "[";
  for (std::size_t n = 0; n < s.size(); ++n)
    out += (n ? "," : "") + std::string("(") + std::to_string(s[n].first) + "," + std::to_string(s[n].second) + ")";
  return out + "]";
}

/// Which eps-positive index a string takes next.
enum class Strategy { smallest, largest };

inline std::string strategy_str(Strategy s) { return s == Strategy::smallest ? "smallest" : "largest"; }
inline Strategy parse_strategy(const std::string& s) {
  if (s == "smallest") return Strategy::smallest;
  if (s == "largest") return Strategy::largest;
  throw InvalidDatum("unknown strategy " + s);
}

class Crystal {
 public:
  explicit Crystal(const CartanDatum& cd, IotaSeq iota = {}) : cd_(cd), iota_(std::move(iota)) {
    if (iota_.base.empty()) iota_ = IotaSeq::standard(cd.rank());
    iota_ = IotaSeq::make(iota_.base, cd.rank());
  }

  const CartanDatum& datum() const { return cd_; }
  const IotaSeq& iota() const { return iota_; }

  Weight weight(const CrystalElt& b) const {
    Weight w(cd_.rank());
    for (std::size_t k = 0; k < b.a.size(); ++k) w.c[iota_.color(k)] -= b.a[k];
    return w;
  }

  /// Largest n with f_geo^n(b, i) defined.
  int eps(const CrystalElt& b, int i) const { return scan(b, i).value; }
  int phi_geo(const CrystalElt& b, int i) const { return eps(b, i); }

  CrystalElt e_geo(const CrystalElt& b, int i) const {
    auto s = scan(b, i);
    CrystalElt out = b;
    if (out.a.size() <= s.first) out.a.resize(s.first + 1, 0);
    ++out.a[s.first];
    while (!out.a.empty() && out.a.back() == 0) out.a.pop_back();
    return out;
  }

  CrystalElt f_geo(const CrystalElt& b, int i) const {
    auto s = scan(b, i);
    if (s.value <= 0 || s.last >= b.a.size() || b.a[s.last] == 0)
      throw Undefined("f_" + std::to_string(i) + " of " + b.str());
    CrystalElt out = b;
    --out.a[s.last];
    while (!out.a.empty() && out.a.back() == 0) out.a.pop_back();
    return out;
  }

  /// All elements of weight lambda.
  const std::set<CrystalElt>& enumerate_weight(const Weight& lambda, int height_bound = 8) {
    if (!lambda.is_neg()) throw NotNegativeCone("crystal weight " + lambda.str());
    if (-lambda.height() > height_bound)
      throw BoundExceeded("height of " + lambda.str() + " exceeds " + std::to_string(height_bound));
    if (auto it = by_weight_.find(lambda); it != by_weight_.end()) return it->second;
    std::set<CrystalElt> out;
    if (lambda.is_zero()) {
      out.insert(CrystalElt{});
    } else {
      for (int i = 0; i < cd_.rank(); ++i) {
        if (lambda.c[i] == 0) continue;
        Weight up = lambda + cd_.simple(i);
        for (const auto& b : enumerate_weight(up, height_bound)) out.insert(e_geo(b, i));
      }
    }
    return by_weight_.emplace(lambda, std::move(out)).first->second;
  }

  StringData string(CrystalElt b, Strategy strategy = Strategy::smallest) const {
    StringData out;
    while (!b.is_vacuum()) {
      std::optional<int> pick;
      for (int j = 0; j < cd_.rank(); ++j)
        if (eps(b, j) > 0 && (!pick || strategy == Strategy::largest)) pick = j;
      if (!pick) throw std::logic_error("nonvacuum element with all eps zero");
      int m = eps(b, *pick);
      for (int s = 0; s < m; ++s) b = f_geo(b, *pick);
      out.emplace_back(*pick, m);
    }
    return out;
  }

  /// The element with the given string: the string read backwards through e_geo.
  CrystalElt from_string(const StringData& s) const {
    CrystalElt b;
    for (auto it = s.rbegin(); it != s.rend(); ++it)
      for (int k = 0; k < it->second; ++k) b = e_geo(b, it->first);
    return b;
  }

 private:
  struct Scan {
    int value = 0;
    std::size_t first = 0, last = 0;  // smallest and largest positions attaining value
  };

  // sigma_k = a_k + sum_{j > k} <alpha_{i_j}, check-alpha_{i_k}> a_j over the
  // positions of colour i, with one vacuum position of each colour beyond the
  // support so that the maximum is at least zero.
  Scan scan(const CrystalElt& b, int i) const {
    std::size_t r = iota_.base.size();
    std::size_t len = b.a.size() + r;
    std::vector<long long> tail(cd_.rank(), 0);  // weight of the entries beyond k
    Scan s;
    bool any = false;
    for (std::size_t k = len; k-- > 0;) {
      int ck = iota_.color(k);
      int ak = k < b.a.size() ? b.a[k] : 0;
      if (ck == i) {
        long long sigma = ak;
        for (int c = 0; c < cd_.rank(); ++c) sigma += tail[c] * cd_.a(i, c);
        if (!any || sigma > s.value) {
          s.value = static_cast<int>(sigma);
          s.first = s.last = k;
          any = true;
        } else if (sigma == s.value) {
          s.first = k;
        }
      }
      tail[ck] += ak;
    }
    return s;
  }

  CartanDatum cd_;
  IotaSeq iota_;
  std::map<Weight, std::set<CrystalElt>> by_weight_;
};

struct Classification {
  CrystalElt elt;
  Weight weight;
  std::vector<int> scrutiny;  // {j : eps_j >= 1}
  bool suspicious = false;
  bool indicted = false;
  StringData string;
  std::vector<long long> exponents;  // m_n * q_min(alpha_{j_n})
  std::optional<bool> sharp_conditions;  // for indicted elements
  std::optional<bool> weight_filter;     // for suspicious elements
};

/// Classifies b for q = zeta * q_min.
inline Classification classify(const Crystal& cr, const CrystalElt& b, const QForm& q,
                               Strategy strategy = Strategy::smallest) {
  if (!q.is_minimal()) throw NotMinimalForm("classification needs the minimal form");
  const auto& cd = cr.datum();
  Classification c;
  c.elt = b;
  c.weight = cr.weight(b);
  for (int j = 0; j < cd.rank(); ++j)
    if (cr.eps(b, j) >= 1) c.scrutiny.push_back(j);
  c.suspicious = c.scrutiny.size() == 1 && cr.eps(b, c.scrutiny[0]) == 1;
  c.string = cr.string(b, strategy);
  for (const auto& [j, m] : c.string) c.exponents.push_back(static_cast<long long>(m) * q.qz()[j]);
  if (!c.suspicious) return c;
  int i = c.scrutiny[0];
  bool simple = c.weight == -cd.simple(i);
  bool divisible = q.finite();
  for (std::size_t n = 1; n < c.exponents.size() && divisible; ++n) divisible = c.exponents[n] % q.N() == 0;
  c.indicted = divisible && !simple;
  auto hw = cd.fundamental(i);
  auto shifted = hw;
  for (int k = 0; k < cd.rank(); ++k) shifted[k] += c.weight.c[k];
  c.weight_filter = cd.is_weight_of(hw, shifted);
  if (c.indicted) {
    // membership in the lattice spanned by ord(q(alpha_j)) alpha_j; order 1 is allowed here
    auto in_sharp = [&](const Weight& l) {
      for (int j = 0; j < cd.rank(); ++j)
        if (l.c[j] % *q.ord(cd.simple(j)) != 0) return false;
      return true;
    };
    c.sharp_conditions = in_sharp(c.weight + cd.simple(i)) && !in_sharp(c.weight);
  }
  return c;
}

struct WeightCensus {
  Weight lambda;
  std::size_t components = 0, under_scrutiny = 0, suspicious = 0, indicted = 0;
  std::vector<StringData> indicted_strings;    // as produced by the chosen strategy
  std::vector<StringData> indicted_canonical;  // smallest-index strings, sorted
  std::vector<std::string> violations;
};

struct IndictmentReport {
  std::string form;
  std::string iota;
  Strategy strategy = Strategy::smallest;
  int height_bound = 0;
  bool assertions_apply = true;  // false for degenerate forms: violations are then findings
  std::vector<WeightCensus> weights;

  std::size_t total_indicted() const {
    std::size_t n = 0;
    for (const auto& w : weights) n += w.indicted;
    return n;
  }
  std::vector<std::string> violations() const {
    std::vector<std::string> out;
    for (const auto& w : weights) out.insert(out.end(), w.violations.begin(), w.violations.end());
    return out;
  }
};

/// The census of all components of weight lambda, with the count law, the
/// sharp conditions of indicted elements and the weight filter of suspicious
/// ones checked; failures land in `violations`.
inline WeightCensus census(Crystal& cr, const QForm& q, const Weight& lambda, int height_bound,
                           Strategy strategy = Strategy::smallest) {
  WeightCensus wc;
  wc.lambda = lambda;
  const auto& elts = cr.enumerate_weight(lambda, height_bound);
  wc.components = elts.size();
  if (wc.components != q.datum().kostant_partitions(-lambda))
    wc.violations.push_back("count law fails at " + lambda.str());
  for (const auto& b : elts) {
    auto c = classify(cr, b, q, strategy);
    wc.under_scrutiny += c.scrutiny.size() == 1;
    wc.suspicious += c.suspicious;
    if (c.weight_filter && !*c.weight_filter)
      wc.violations.push_back("suspicious element " + b.str() + " fails the weight filter at " + lambda.str());
    if (!c.indicted) continue;
    ++wc.indicted;
    wc.indicted_strings.push_back(c.string);
    wc.indicted_canonical.push_back(strategy == Strategy::smallest ? c.string : cr.string(b));
    if (!*c.sharp_conditions)
      wc.violations.push_back("indicted element " + b.str() + " fails the sharp conditions at " + lambda.str());
  }
  std::sort(wc.indicted_strings.begin(), wc.indicted_strings.end());
  std::sort(wc.indicted_canonical.begin(), wc.indicted_canonical.end());
  return wc;
}

/// Runs the census at every lambda of height at most the bound, except the
/// negative simple coroots.
inline IndictmentReport indicted_search(const QForm& q, int height_bound, const IotaSeq& iota = {},
                                        Strategy strategy = Strategy::smallest) {
  const auto& cd = q.datum();
  Crystal cr(cd, iota);
  IndictmentReport rep;
  rep.form = q.str();
  rep.iota = cr.iota().str();
  rep.strategy = strategy;
  rep.height_bound = height_bound;
  rep.assertions_apply = q.predicates().nondegenerate;
  for (const auto& mu : positive_weights_up_to(cd.rank(), height_bound))
    if (mu.height() > 1) rep.weights.push_back(census(cr, q, -mu, height_bound, strategy));
  return rep;
}

}  // namespace omegalab

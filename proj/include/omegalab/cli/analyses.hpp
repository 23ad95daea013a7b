#pragma once

// The analyses behind `omegalab run`, and report assembly. Every analysis
// produces one record per weight; records are cached individually.

#include <atomic>
#include <chrono>
#include <exception>
#include <functional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "omegalab/cli/cache.hpp"
#include "omegalab/cli/config.hpp"
#include "omegalab/cohomology.hpp"
#include "omegalab/crystal.hpp"
#include "omegalab/nichols.hpp"

namespace omegalab::cli {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

/// A predicate outcome worth reporting. Asserted findings are violations and
/// make `run` exit with status 3; the others are observations.
struct Finding {
  std::string analysis;
  bool asserted = false;
  std::string message;

  json to_json() const {
    return {{"analysis", analysis}, {"kind", asserted ? "violation" : "observation"}, {"message", message}};
  }
};

struct AnalysisOutput {
  json data;
  std::vector<Finding> findings;
};

// -- serialization -------------------------------------------------------

inline json to_json(const Weight& w) { return w.c; }
inline Weight weight_from(const json& j) { return Weight(j.get<std::vector<int>>()); }

inline json to_json(const Dims& d) {
  json out = json::array();
  for (const auto& [n, k] : d) out.push_back({n, k});
  return out;
}
inline Dims dims_from(const json& j) {
  Dims d;
  for (const auto& p : j) d[p[0].get<int>()] = p[1].get<std::size_t>();
  return d;
}

inline json to_json(const Cyclo& x) {
  json c = json::array();
  for (const auto& r : x.coeffs()) c.push_back(r.get_str());
  return {{"conductor", x.conductor()}, {"coeffs", c}};
}

inline json to_json(const Laurent<Cyclo>& x) {
  json out = json::array();
  for (int e = x.low(); e <= x.high(); ++e)
    if (!x.coeff(e).is_zero()) out.push_back({{"u", e}, {"c", to_json(x.coeff(e))}});
  return out;
}

inline json to_json(const StringData& s) {
  json out = json::array();
  for (const auto& [j, m] : s) out.push_back({j, m});
  return out;
}

inline json form_json(const QForm& q) {
  auto p = q.predicates();
  return {{"type", q.datum().name()},
          {"cartan", q.datum().cartan()},
          {"order", q.finite() ? json(q.N()) : json("inf")},
          {"qz", q.qz()},
          {"predicates",
           {{"nondegenerate", p.nondegenerate},
            {"avoids_small_torsion", p.avoids_small_torsion},
            {"star", p.star},
            {"star_sharp", p.star_sharp}}}};
}

/// Degrees where the dual of the DK form may have generators: alpha_i and
/// ord(q(alpha)) alpha for positive coroots alpha, up to the height bound.
inline std::vector<Weight> lusztig_generator_degrees(const QForm& q, int height) {
  std::set<Weight> out;
  const auto& cd = q.datum();
  for (int i = 0; i < cd.rank(); ++i) out.insert(cd.simple(i));
  for (const auto& a : cd.positive_coroots()) {
    Order o = q.ord(a);
    if (!o) continue;
    Weight w = static_cast<int>(*o) * a;
    if (w.height() <= height) out.insert(w);
  }
  return {out.begin(), out.end()};
}

/// Expected !-fiber of the DK form at lambda.
inline Dims geo_expected(const std::map<Weight, int>& lengths, const Weight& lambda) {
  Dims d;
  if (auto it = lengths.find(lambda); it != lengths.end()) d[it->second] = 1;
  return d;
}

/// Whether (Geo) is asserted for q: under (*), except at even finite order
/// where it is reported only.
inline bool geo_asserted(const QForm& q) { return q.predicates().star && !(q.finite() && q.N() % 2 == 0); }

// -- the analyses ----------------------------------------------------------

class Analyses {
 public:
  Analyses(const RunConfig& cfg, Cache& cache) : cfg_(cfg), q_(cfg.form()), cache_(cache) {}

  AnalysisOutput run(const std::string& name) {
    if (name == "dims") return dims();
    if (name == "serre") return serre();
    if (name == "frobenius") return frobenius();
    if (name == "geo") return geo();
    if (name == "fibers") return fibers();
    if (name == "crystal") return crystal();
    if (name == "indict") return indict();
    throw ConfigError("analyses", "unknown analysis '" + name + "'");
  }

 private:
  json key(const std::string& module, json extra) const {
    json k = {{"module", module},
              {"convention", kConventionVersion},
              {"cartan", q_.datum().cartan()},
              {"order", q_.finite() ? json(q_.N()) : json("inf")},
              {"qz", q_.qz()}};
    for (auto& [name, v] : extra.items()) k[name] = v;
    return k;
  }

  json cached(const json& k, const std::function<json()>& compute) {
    if (auto v = cache_.get(k)) return *v;
    json v = compute();
    cache_.put(k, v);
    return v;
  }

  std::vector<Weight> weights(int min_height = 1) const {
    std::vector<Weight> out;
    for (const auto& mu : positive_weights_up_to(q_.datum().rank(), cfg_.height))
      if (mu.height() >= min_height) out.push_back(mu);
    return out;
  }

  AnalysisOutput dims() {
    AnalysisOutput out;
    const auto& cd = q_.datum();
    bool star = q_.predicates().star;
    Nichols nic(q_), inv(q_, true);
    AlgebraSlice dual(inv, SliceKind::dk);
    json recs = json::array();
    std::vector<Weight> found;
    for (const auto& mu : weights()) {
      json r = cached(key("dims", {{"mu", to_json(mu)}}), [&] {
        const auto& piece = nic.dk_ideal(mu);
        return json{{"mu", to_json(mu)},
                    {"words", nic.words(mu).size()},
                    {"kostant", cd.kostant_partitions(mu)},
                    {"small", nic.small_dim(mu)},
                    {"dk", nic.dk_dim(mu)},
                    {"ideal_divisions", piece.divisions},
                    {"certified_by_bound", piece.certified_by_bound},
                    {"primitives_dual", dual.primitives(mu)}};
      });
      auto k = r["kostant"].get<std::size_t>(), dk = r["dk"].get<std::size_t>(), sm = r["small"].get<std::size_t>();
      if (dk != k)
        out.findings.push_back({"dims", true, "DK dimension " + std::to_string(dk) + " != " + std::to_string(k) +
                                                  " at " + mu.str()});
      if (sm > dk) out.findings.push_back({"dims", true, "small dimension exceeds DK dimension at " + mu.str()});
      if (!q_.finite() && sm != dk)
        out.findings.push_back({"dims", true, "non-torsion small and DK dimensions differ at " + mu.str()});
      if (r["primitives_dual"].get<std::size_t>() > 0) found.push_back(mu);
      recs.push_back(std::move(r));
    }
    auto expected = lusztig_generator_degrees(q_, cfg_.height);
    std::sort(found.begin(), found.end());
    bool subset = std::includes(expected.begin(), expected.end(), found.begin(), found.end());
    bool equal = subset && found.size() == expected.size();
    if (!subset)
      out.findings.push_back({"dims", star, "primitives of the dual DK form outside the generator degrees"});
    else if (!equal)
      out.findings.push_back({"dims", false, "some generator degrees carry no primitive of the dual DK form"});
    json fj = json::array(), ej = json::array();
    for (const auto& w : found) fj.push_back(to_json(w));
    for (const auto& w : expected) ej.push_back(to_json(w));
    out.data = {{"weights", recs}, {"primitives", {{"found", fj}, {"expected", ej}, {"subset", subset}, {"equal", equal}}}};
    return out;
  }

  AnalysisOutput serre() {
    AnalysisOutput out;
    const auto& cd = q_.datum();
    bool star = q_.predicates().star;
    Nichols nic(q_);
    json elems = json::array();
    for (int i = 0; i < cd.rank(); ++i)
      for (int j = 0; j < cd.rank(); ++j) {
        if (i == j) continue;
        json r = cached(key("serre-element", {{"i", i}, {"j", j}}), [&] {
          const auto& s = nic.serre_element(i, j);
          json coeffs = json::array();
          for (const auto& [w, c] : s.coeffs) coeffs.push_back({{"word", w}, {"coeff", to_json(c)}});
          Weight formula = cd.simple(j) + (1 - cd.a(i, j)) * cd.simple(i);
          return json{{"i", i}, {"j", j}, {"degree", to_json(s.degree)}, {"formula_degree", to_json(formula)},
                      {"coefficients", coeffs}};
        });
        if (r["degree"] != r["formula_degree"])
          out.findings.push_back({"serre", true, "Serre degree disagrees with the closed formula for (" +
                                                     std::to_string(i) + "," + std::to_string(j) + ")"});
        elems.push_back(std::move(r));
      }
    json recs = json::array();
    for (const auto& mu : weights(2)) {
      json r = cached(key("serre-generation", {{"mu", to_json(mu)}}), [&] {
        json v = {{"mu", to_json(mu)},
                  {"serre_span", nic.serre_span(mu).size()},
                  {"ideal", nic.dk_ideal(mu).at_one.size()},
                  {"inclusion", true}};
        try {
          v["generates"] = nic.serre_generates(mu);
        } catch (const PredicateViolated&) {
          v["inclusion"] = false;
          v["generates"] = false;
        }
        return v;
      });
      if (!r["inclusion"].get<bool>())
        out.findings.push_back({"serre", true, "specialized Serre span leaves the ideal at " + mu.str()});
      else if (!r["generates"].get<bool>())
        out.findings.push_back({"serre", star, "Serre elements do not generate the ideal at " + mu.str()});
      recs.push_back(std::move(r));
    }
    out.data = {{"elements", elems}, {"generation", recs}};
    return out;
  }

  AnalysisOutput frobenius() {
    AnalysisOutput out;
    if (!q_.finite()) {
      out.data = {{"skipped", "needs a finite order"}};
      return out;
    }
    if (!q_.predicates().avoids_small_torsion) {
      out.data = {{"skipped", "form does not avoid small torsion"}};
      return out;
    }
    Nichols nic(q_);
    json recs = json::array();
    for (const auto& mu : weights()) {
      json r = cached(key("frobenius", {{"mu", to_json(mu)}}), [&] {
        auto [lhs, rhs] = frobenius_sides(nic, mu);
        return json{{"mu", to_json(mu)}, {"kostant", lhs}, {"sum", rhs}};
      });
      if (r["kostant"] != r["sum"]) out.findings.push_back({"frobenius", true, "identity fails at " + mu.str()});
      recs.push_back(std::move(r));
    }
    out.data = {{"weights", recs}};
    return out;
  }

  AnalysisOutput geo() {
    AnalysisOutput out;
    bool asserted = geo_asserted(q_);
    Nichols nic(q_);
    AlgebraSlice dk(nic, SliceKind::dk);
    auto lengths = w_rho_lengths(q_.datum());
    json recs = json::array();
    for (const auto& mu : weights()) {
      json r = cached(key("geo", {{"mu", to_json(mu)}}), [&] {
        return json{{"mu", to_json(mu)},
                    {"dims", to_json(omega_shriek_fiber(dk, -mu, cfg_.height))},
                    {"expected", to_json(geo_expected(lengths, -mu))}};
      });
      if (r["dims"] != r["expected"])
        out.findings.push_back({"geo", asserted, "DK cohomology differs from the w(rho) - rho table at " + mu.str()});
      recs.push_back(std::move(r));
    }
    out.data = {{"asserted", asserted}, {"weights", recs}};
    return out;
  }

  AnalysisOutput fibers() {
    AnalysisOutput out;
    auto pred = q_.predicates();
    Nichols nic(q_);
    AlgebraSlice dk(nic, SliceKind::dk);
    auto lengths = w_rho_lengths(q_.datum());
    json recs = json::array();
    for (const auto& mu : weights()) {
      Weight lambda = -mu;
      json r = cached(key("fibers", {{"lambda", to_json(lambda)}}), [&] {
        json checks = json::array();
        for (const auto& c : dk_theorem_checks(dk, lengths, pred, lambda, cfg_.height))
          checks.push_back({{"predicate", c.predicate}, {"holds", c.holds}, {"observed", to_json(c.observed)}});
        return json{{"lambda", to_json(lambda)}, {"hyperbolic", omega_hyperbolic(dk, lambda)}, {"checks", checks}};
      });
      for (const auto& c : r["checks"])
        if (!c["holds"].get<bool>())
          out.findings.push_back({"fibers", pred.star,
                                  "predicate (" + c["predicate"].get<std::string>() + ") fails at " + lambda.str()});
      recs.push_back(std::move(r));
    }
    out.data = {{"asserted", pred.star}, {"weights", recs}};
    return out;
  }

  AnalysisOutput crystal() {
    AnalysisOutput out;
    Crystal cr(q_.datum(), IotaSeq{cfg_.iota});
    json recs = json::array();
    for (const auto& mu : weights()) {
      Weight lambda = -mu;
      json r = cached(key("crystal", {{"lambda", to_json(lambda)}, {"iota", cfg_.iota}}), [&] {
        return json{{"lambda", to_json(lambda)},
                    {"components", cr.enumerate_weight(lambda, cfg_.height).size()},
                    {"kostant", q_.datum().kostant_partitions(mu)}};
      });
      if (r["components"] != r["kostant"])
        out.findings.push_back({"crystal", true, "count law fails at " + lambda.str()});
      recs.push_back(std::move(r));
    }
    out.data = {{"iota", cfg_.iota}, {"weights", recs}};
    return out;
  }

  AnalysisOutput indict() {
    AnalysisOutput out;
    if (!q_.is_minimal()) {
      out.data = {{"skipped", "needs the minimal form"}};
      return out;
    }
    bool asserted = q_.predicates().nondegenerate;
    Crystal cr(q_.datum(), IotaSeq{cfg_.iota});
    Strategy strategy = parse_strategy(cfg_.strategy);
    json recs = json::array(), hits = json::array();
    std::size_t total = 0;
    for (const auto& mu : weights(2)) {
      Weight lambda = -mu;
      json k = key("indict", {{"lambda", to_json(lambda)}, {"iota", cfg_.iota}, {"strategy", cfg_.strategy}});
      json r = cached(k, [&] {
        auto wc = census(cr, q_, lambda, cfg_.height, strategy);
        json strings = json::array(), canonical = json::array();
        for (const auto& s : wc.indicted_strings) strings.push_back(to_json(s));
        for (const auto& s : wc.indicted_canonical) canonical.push_back(to_json(s));
        return json{{"lambda", to_json(lambda)},     {"components", wc.components},
                    {"under_scrutiny", wc.under_scrutiny}, {"suspicious", wc.suspicious},
                    {"indicted", wc.indicted},       {"strings", strings},
                    {"canonical", canonical},        {"violations", wc.violations}};
      });
      for (const auto& v : r["violations"]) out.findings.push_back({"indict", asserted, v.get<std::string>()});
      if (r["indicted"].get<std::size_t>()) {
        hits.push_back(to_json(lambda));
        total += r["indicted"].get<std::size_t>();
      }
      recs.push_back(std::move(r));
    }
    out.data = {{"iota", cfg_.iota},
                {"strategy", cfg_.strategy},
                {"asserted", asserted},
                {"total_indicted", total},
                {"indicted_weights", hits},
                {"weights", recs}};
    return out;
  }

  const RunConfig& cfg_;
  QForm q_;
  Cache& cache_;
};

struct RunResult {
  json report;
  int exit_code = 0;
};

/// Runs every requested analysis, `cfg.jobs` at a time, and assembles the report.
inline RunResult run(const RunConfig& cfg, Cache& cache) {
  const auto& names = cfg.analyses;
  std::vector<AnalysisOutput> outputs(names.size());
  std::vector<double> millis(names.size(), 0);
  std::vector<std::exception_ptr> errors(names.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next++) < names.size();) {
      auto t0 = std::chrono::steady_clock::now();
      try {
        Analyses a(cfg, cache);
        outputs[k] = a.run(names[k]);
      } catch (...) {
        errors[k] = std::current_exception();
      }
      millis[k] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(cfg.jobs), names.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  RunResult res;
  json analyses = json::object(), findings = json::array(), timing = json::object();
  std::size_t violations = 0, observations = 0;
  for (std::size_t k = 0; k < names.size(); ++k) {
    analyses[names[k]] = outputs[k].data;
    for (const auto& f : outputs[k].findings) {
      findings.push_back(f.to_json());
      (f.asserted ? violations : observations) += 1;
    }
    timing[names[k]] = static_cast<long long>(millis[k]);
  }
  res.exit_code = violations ? 3 : 0;
  res.report = {{"schema_version", kSchemaVersion},
                {"versions", {{"omegalab", kToolVersion}, {"conventions", kConventionVersion}}},
                {"config", cfg.echo()},
                {"form", form_json(cfg.form())},
                {"analyses", analyses},
                {"findings", findings},
                {"summary",
                 {{"violations", violations},
                  {"observations", observations},
                  {"status", violations ? "violation" : "ok"}}},
                {"volatile",
                 {{"timing_ms", timing},
                  {"cache", {{"dir", cache.dir()}, {"enabled", cache.enabled()}, {"hits", cache.hits()},
                             {"misses", cache.misses()}}},
                  {"jobs", cfg.jobs}}}};
  return res;
}

/// Top-level keys whose values may differ between runs of the same config.
inline const std::vector<std::string>& volatile_keys() {
  static const std::vector<std::string> keys{"volatile"};
  return keys;
}

inline json strip_volatile(json report) {
  for (const auto& k : volatile_keys()) report.erase(k);
  return report;
}

/// Canonical text of a report: two-space indentation, sorted keys, final newline.
inline std::string render(const json& report) { return report.dump(2) + "\n"; }

}  // namespace omegalab::cli

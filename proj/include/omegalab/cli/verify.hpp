#pragma once

// Re-checks the asserted predicates of a saved report. Expected values are
// recomputed from the root datum and the form; observed values are taken from
// the report.

#include <string>
#include <vector>

#include <json.hpp>

#include "omegalab/cli/analyses.hpp"
#include "omegalab/cli/config.hpp"

namespace omegalab::cli {

struct VerifyResult {
  std::vector<std::string> failures;  // asserted predicates that do not hold
  std::size_t checked = 0;
  bool status_consistent = true;      // the report's own status agrees
};

class MalformedReport : public Error {
 public:
  explicit MalformedReport(const std::string& what) : Error("malformed report: " + what) {}
};

inline VerifyResult verify_report(const json& report) {
  VerifyResult res;
  if (!report.is_object() || report.value("schema_version", 0) != kSchemaVersion)
    throw MalformedReport("missing or unsupported schema_version");
  RunConfig cfg;
  QForm q = QForm::minimal(CartanDatum::parse("A1"), 2);
  try {
    cfg = parse_config(report.at("config"));
    q = cfg.form();
  } catch (const json::exception& e) {
    throw MalformedReport(e.what());
  } catch (const ConfigError& e) {
    throw MalformedReport(e.what());
  }
  const auto& cd = q.datum();
  auto pred = q.predicates();
  auto fail = [&](const std::string& what) { res.failures.push_back(what); };
  auto check = [&](bool ok, const std::string& what) {
    ++res.checked;
    if (!ok) fail(what);
  };

  try {
    const auto& an = report.at("analyses");
    if (an.contains("dims")) {
      const auto& d = an["dims"];
      std::vector<Weight> found;
      for (const auto& r : d.at("weights")) {
        Weight mu = weight_from(r.at("mu"));
        auto k = cd.kostant_partitions(mu);
        auto dk = r.at("dk").get<std::size_t>(), sm = r.at("small").get<std::size_t>();
        check(dk == k, "dims: DK flatness at " + mu.str());
        check(sm <= dk, "dims: small <= DK at " + mu.str());
        if (!q.finite()) check(sm == dk, "dims: non-torsion collapse at " + mu.str());
        if (r.at("primitives_dual").get<std::size_t>()) found.push_back(mu);
      }
      if (pred.star) {
        auto expected = lusztig_generator_degrees(q, cfg.height);
        std::sort(found.begin(), found.end());
        check(std::includes(expected.begin(), expected.end(), found.begin(), found.end()),
              "dims: primitive degrees within the generator degrees");
      }
    }
    if (an.contains("serre")) {
      const auto& s = an["serre"];
      for (const auto& e : s.at("elements")) {
        int i = e.at("i"), j = e.at("j");
        Weight deg = weight_from(e.at("degree"));
        check(deg == cd.simple(j) + (1 - cd.a(i, j)) * cd.simple(i) && deg == cd.serre_degree(i, j),
              "serre: degree of (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
      for (const auto& r : s.at("generation")) {
        Weight mu = weight_from(r.at("mu"));
        check(r.at("inclusion").get<bool>(), "serre: inclusion at " + mu.str());
        if (pred.star) check(r.at("generates").get<bool>(), "serre: generation at " + mu.str());
      }
    }
    if (an.contains("frobenius") && an["frobenius"].contains("weights"))
      for (const auto& r : an["frobenius"]["weights"]) {
        Weight mu = weight_from(r.at("mu"));
        check(r.at("sum").get<std::uint64_t>() == cd.kostant_partitions(mu), "frobenius: identity at " + mu.str());
      }
    auto lengths = w_rho_lengths(cd);
    if (an.contains("geo") && geo_asserted(q))
      for (const auto& r : an["geo"].at("weights")) {
        Weight mu = weight_from(r.at("mu"));
        check(dims_from(r.at("dims")) == geo_expected(lengths, -mu), "geo: cohomology at " + mu.str());
      }
    if (an.contains("fibers") && pred.star)
      for (const auto& r : an["fibers"].at("weights")) {
        Weight lambda = weight_from(r.at("lambda"));
        check(r.at("hyperbolic").get<std::size_t>() == cd.kostant_partitions(-lambda),
              "fibers: hyperbolic restriction at " + lambda.str());
        for (const auto& c : r.at("checks")) {
          auto p = c.at("predicate").get<std::string>();
          Dims obs = dims_from(c.at("observed"));
          if (p == "a") check(obs == geo_expected(lengths, lambda), "fibers: (a) at " + lambda.str());
          else check(!obs.count(-1), "fibers: (" + p + ") at " + lambda.str());
        }
      }
    if (an.contains("crystal"))
      for (const auto& r : an["crystal"].at("weights")) {
        Weight lambda = weight_from(r.at("lambda"));
        check(r.at("components").get<std::uint64_t>() == cd.kostant_partitions(-lambda),
              "crystal: count law at " + lambda.str());
      }
    if (an.contains("indict") && an["indict"].contains("weights") && pred.nondegenerate) {
      Crystal cr(cd, IotaSeq{cfg.iota});
      for (const auto& r : an["indict"]["weights"]) {
        Weight lambda = weight_from(r.at("lambda"));
        check(r.at("violations").empty(), "indict: recorded violations at " + lambda.str());
        check(r.at("components").get<std::uint64_t>() == cd.kostant_partitions(-lambda),
              "indict: count law at " + lambda.str());
        for (const auto& s : r.at("canonical")) {
          StringData str;
          for (const auto& step : s) str.emplace_back(step[0].get<int>(), step[1].get<int>());
          auto b = cr.from_string(str);
          auto c = classify(cr, b, q);
          check(cr.weight(b) == lambda && c.indicted && c.sharp_conditions.value_or(false),
                "indict: recorded indicted string " + string_str(str) + " at " + lambda.str());
        }
      }
    }
    const auto& summary = report.at("summary");
    bool says_ok = summary.at("status") == "ok";
    res.status_consistent = says_ok == res.failures.empty();
  } catch (const json::exception& e) {
    throw MalformedReport(e.what());
  } catch (const NotPositiveCone& e) {
    throw MalformedReport(e.what());
  }
  return res;
}

}  // namespace omegalab::cli

#pragma once

// Run configuration: parsed from a JSON document in which flags have already
// been merged over the config file.

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "omegalab/errors.hpp"
#include "omegalab/qform.hpp"
#include "omegalab/rootdata.hpp"

namespace omegalab::cli {

using json = nlohmann::json;

/// A malformed configuration; `key` names the offending entry.
class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& what)
      : Error("config error: " + key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// Analyses in the order they run and appear in reports.
inline const std::vector<std::string>& all_analyses() {
  static const std::vector<std::string> names{"dims", "serre", "frobenius", "geo", "fibers", "crystal", "indict"};
  return names;
}

inline constexpr const char* kConfigKeys[] = {"type",     "rank", "order", "qz",    "height", "analyses",
                                              "iota",     "strategy", "out", "cache", "jobs"};

struct RunConfig {
  std::string type;                      // e.g. "G2"
  Order order;                           // nullopt = infinite
  std::optional<std::vector<long long>> qz;  // nullopt = minimal form
  int height = 8;
  std::vector<std::string> analyses;
  std::vector<int> iota;                 // empty = 0, 1, ..., rank - 1
  std::string strategy = "smallest";
  std::string out;                       // empty = stdout
  std::string cache_dir;                 // empty = no cache
  int jobs = 1;

  CartanDatum datum() const { return CartanDatum::parse(type); }
  QForm form() const {
    auto cd = datum();
    return qz ? QForm::make(cd, *qz, order) : QForm::minimal(cd, order);
  }

  /// The fields that determine the results.
  json echo() const {
    json j;
    j["type"] = type;
    j["order"] = order ? json(*order) : json("inf");
    j["qz"] = qz ? json(*qz) : json("min");
    j["height"] = height;
    j["analyses"] = analyses;
    j["iota"] = iota;
    j["strategy"] = strategy;
    return j;
  }
};

namespace detail {

inline std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

inline long long to_int(const json& v, const std::string& key) {
  if (v.is_number_integer()) return v.get<long long>();
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    try {
      std::size_t used = 0;
      long long x = std::stoll(s, &used);
      if (used == s.size()) return x;
    } catch (const std::logic_error&) {
    }
  }
  throw ConfigError(key, "expected an integer, got " + v.dump());
}

inline std::vector<long long> int_list(const json& v, const std::string& key) {
  std::vector<long long> out;
  if (v.is_array()) {
    for (const auto& x : v) out.push_back(to_int(x, key));
  } else if (v.is_string()) {
    for (const auto& x : split(v.get<std::string>())) out.push_back(to_int(json(x), key));
  } else {
    throw ConfigError(key, "expected a list, got " + v.dump());
  }
  return out;
}

}  // namespace detail

/// Validates and normalizes a merged configuration document.
inline RunConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config", "expected a JSON object");
  for (const auto& [k, v] : j.items())
    if (std::find(std::begin(kConfigKeys), std::end(kConfigKeys), k) == std::end(kConfigKeys))
      throw ConfigError(k, "unknown key");
  RunConfig c;

  if (!j.contains("type") || !j["type"].is_string()) throw ConfigError("type", "missing or not a string");
  std::optional<int> rank;
  if (j.contains("rank")) rank = static_cast<int>(detail::to_int(j["rank"], "rank"));
  try {
    c.type = CartanDatum::parse(j["type"].get<std::string>(), rank).name();
  } catch (const Error& e) {
    throw ConfigError("type", e.what());
  }

  if (!j.contains("order")) throw ConfigError("order", "missing");
  const auto& o = j["order"];
  if (o.is_string() && (o == "inf" || o == "infinity")) {
    c.order = std::nullopt;
  } else {
    long long n = detail::to_int(o, "order");
    if (n < 1) throw ConfigError("order", "must be a positive integer or inf, got " + o.dump());
    c.order = n;
  }

  if (j.contains("qz") && !(j["qz"].is_string() && j["qz"] == "min")) c.qz = detail::int_list(j["qz"], "qz");

  if (j.contains("height")) {
    c.height = static_cast<int>(detail::to_int(j["height"], "height"));
    if (c.height < 1) throw ConfigError("height", "must be at least 1");
  }

  std::vector<std::string> asked;
  if (j.contains("analyses")) {
    const auto& a = j["analyses"];
    if (a.is_string()) asked = detail::split(a.get<std::string>());
    else if (a.is_array()) asked = a.get<std::vector<std::string>>();
    else throw ConfigError("analyses", "expected a list");
  } else {
    asked = {"dims"};
  }
  if (asked.empty()) throw ConfigError("analyses", "must not be empty");
  for (const auto& name : asked)
    if (std::find(all_analyses().begin(), all_analyses().end(), name) == all_analyses().end())
      throw ConfigError("analyses", "unknown analysis '" + name + "'");
  for (const auto& name : all_analyses())
    if (std::find(asked.begin(), asked.end(), name) != asked.end()) c.analyses.push_back(name);

  auto cd = c.datum();
  if (j.contains("iota")) {
    for (long long x : detail::int_list(j["iota"], "iota")) c.iota.push_back(static_cast<int>(x));
    auto sorted = c.iota;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < cd.rank(); ++i)
      if (static_cast<int>(sorted.size()) != cd.rank() || sorted[i] != i)
        throw ConfigError("iota", "must be a permutation of 0.." + std::to_string(cd.rank() - 1));
  } else {
    for (int i = 0; i < cd.rank(); ++i) c.iota.push_back(i);
  }

  if (j.contains("strategy")) {
    c.strategy = j["strategy"].is_string() ? j["strategy"].get<std::string>() : "";
    if (c.strategy != "smallest" && c.strategy != "largest")
      throw ConfigError("strategy", "must be smallest or largest");
  }
  if (j.contains("out")) c.out = j["out"].get<std::string>();
  if (j.contains("cache")) c.cache_dir = j["cache"].get<std::string>();
  if (j.contains("jobs")) {
    c.jobs = static_cast<int>(detail::to_int(j["jobs"], "jobs"));
    if (c.jobs < 1) throw ConfigError("jobs", "must be at least 1");
  }

  try {
    (void)c.form();
  } catch (const Error& e) {
    throw ConfigError(c.qz ? "qz" : "order", e.what());
  }
  return c;
}

}  // namespace omegalab::cli

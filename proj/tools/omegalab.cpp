// omegalab: run analyses, verify saved reports, clear the cache.
//
// Exit codes: 0 ok, 1 internal error, 2 config error, 3 predicate violation.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "omegalab/cli/analyses.hpp"
#include "omegalab/cli/verify.hpp"

namespace {

using omegalab::cli::json;

constexpr int kOk = 0, kInternal = 1, kConfig = 2, kViolation = 3;

std::string default_cache_dir() {
  if (const char* env = std::getenv("OMEGALAB_CACHE")) return env;
  return ".omegalab-cache";
}

/// OMEGALAB_CACHE wins over every other source; "none" disables the cache.
std::string resolve_cache_dir(const std::string& configured) {
  std::string dir = configured;
  if (const char* env = std::getenv("OMEGALAB_CACHE")) dir = env;
  if (dir.empty()) dir = ".omegalab-cache";
  return dir == "none" ? "" : dir;
}

json read_json_file(const std::string& path, const std::string& what) {
  std::ifstream in(path);
  if (!in) throw omegalab::cli::ConfigError(what, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  auto j = json::parse(buf.str(), nullptr, false);
  if (j.is_discarded()) throw omegalab::cli::ConfigError(what, path + " is not valid JSON");
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact combinatorics of quantum groups at roots of unity"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run analyses and write a JSON report");
  std::map<std::string, std::string> flags;
  std::string config_path;
  for (const char* key : omegalab::cli::kConfigKeys) {
    std::string name = std::string("--") + key;
    run->add_option_function<std::string>(name, [&flags, key](const std::string& v) { flags[key] = v; });
  }
  run->add_option("--config", config_path, "JSON config file; flags override its entries");

  auto* verify = app.add_subcommand("verify", "re-check the asserted predicates of a report");
  std::string report_path;
  verify->add_option("report", report_path)->required();

  auto* clean = app.add_subcommand("clean-cache", "remove cached records");
  std::string clean_dir = default_cache_dir();
  clean->add_option("--cache", clean_dir, "cache directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*run) {
      json merged = json::object();
      if (!config_path.empty()) merged = read_json_file(config_path, "config");
      if (!merged.is_object()) throw omegalab::cli::ConfigError("config", "expected a JSON object");
      for (const auto& [k, v] : flags) merged[k] = v;
      auto cfg = omegalab::cli::parse_config(merged);
      cfg.cache_dir = resolve_cache_dir(cfg.cache_dir);
      omegalab::cli::Cache cache(cfg.cache_dir);
      if (!cfg.cache_dir.empty() && !cache.enabled())
        std::cerr << "warning: cache directory " << cfg.cache_dir << " is unusable; running without cache\n";
      auto res = omegalab::cli::run(cfg, cache);
      std::string text = omegalab::cli::render(res.report);
      if (cfg.out.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(cfg.out, std::ios::binary | std::ios::trunc);
        if (!out) throw omegalab::cli::ConfigError("out", "cannot write " + cfg.out);
        out << text;
      }
      for (const auto& f : res.report["findings"])
        if (f["kind"] == "violation") std::cerr << "violation: " << f["message"].get<std::string>() << "\n";
      return res.exit_code;
    }
    if (*verify) {
      json report = read_json_file(report_path, "report");
      auto res = omegalab::cli::verify_report(report);
      for (const auto& f : res.failures) std::cerr << "FAIL " << f << "\n";
      if (!res.status_consistent) std::cerr << "report status disagrees with the re-check\n";
      std::cout << res.checked << " checks, " << res.failures.size() << " failed\n";
      return res.failures.empty() && res.status_consistent ? kOk : kViolation;
    }
    if (*clean) {
      omegalab::cli::Cache cache(clean_dir == "none" ? "" : clean_dir);
      std::cout << "removed " << cache.clean() << " entries from " << clean_dir << "\n";
      return kOk;
    }
  } catch (const omegalab::cli::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kConfig;
  } catch (const omegalab::cli::MalformedReport& e) {
    std::cerr << e.what() << "\n";
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}

#pragma once

// On-disk cache of per-weight records. One file per key, named by the SHA-256
// of the canonical key serialization; each file repeats its key so that a
// truncated or foreign file reads as a miss. Writes go to a temporary file that
// is then renamed into place. Any IO failure turns the cache off.

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>

#include <openssl/evp.h>

#include <json.hpp>

namespace omegalab::cli {

using json = nlohmann::json;

/// Bumped whenever a convention that affects cached values changes.
inline constexpr int kConventionVersion = 1;

inline std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

class Cache {
 public:
  Cache() = default;
  explicit Cache(std::string dir) : dir_(std::move(dir)) {
    if (dir_.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    enabled_ = !ec && std::filesystem::is_directory(dir_, ec);
  }

  bool enabled() const { return enabled_; }
  const std::string& dir() const { return dir_; }
  std::size_t hits() const { return hits_; }
  std::size_t misses() const { return misses_; }

  static std::string key_hash(const json& key) { return sha256_hex(key.dump()); }

  std::string path_of(const json& key) const { return dir_ + "/" + key_hash(key) + ".json"; }

  std::optional<json> get(const json& key) {
    if (!enabled_) return std::nullopt;
    std::ifstream in(path_of(key), std::ios::binary);
    if (!in) {
      ++misses_;
      return std::nullopt;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    auto doc = json::parse(buf.str(), nullptr, false);
    if (doc.is_discarded() || !doc.is_object() || !doc.contains("key") || doc["key"] != key ||
        !doc.contains("value")) {
      ++misses_;
      return std::nullopt;
    }
    ++hits_;
    return doc["value"];
  }

  void put(const json& key, const json& value) {
    if (!enabled_) return;
    std::string target = path_of(key);
    std::string tmp = target + ".tmp." + unique_suffix();
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) {
        enabled_ = false;
        return;
      }
      out << json{{"key", key}, {"value", value}}.dump() << '\n';
      if (!out) {
        enabled_ = false;
        std::remove(tmp.c_str());
        return;
      }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) {
      std::filesystem::remove(tmp, ec);
      enabled_ = false;
    }
  }

  /// Removes every entry and leftover temporary file; returns how many.
  std::size_t clean() {
    std::size_t n = 0;
    std::error_code ec;
    if (dir_.empty() || !std::filesystem::is_directory(dir_, ec)) return 0;
    for (const auto& e : std::filesystem::directory_iterator(dir_, ec)) {
      auto name = e.path().filename().string();
      bool ours = name.size() == 64 + 5 && name.ends_with(".json");
      ours = ours || name.find(".json.tmp.") == 64;
      if (ours && std::filesystem::remove(e.path(), ec)) ++n;
    }
    return n;
  }

 private:
  static std::string unique_suffix() {
    thread_local std::mt19937_64 rng(std::random_device{}() ^ std::hash<std::thread::id>{}(std::this_thread::get_id()));
    std::ostringstream s;
    s << std::hex << rng();
    return s.str();
  }

  std::string dir_;
  std::atomic<bool> enabled_{false};
  std::atomic<std::size_t> hits_{0}, misses_{0};
};

}  // namespace omegalab::cli

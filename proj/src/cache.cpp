#include "quatforms/cache.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "quatforms/quaternion.hpp"

namespace quatforms {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void atomic_write(const std::filesystem::path& path, std::string_view content) {
  static std::atomic<unsigned> counter{0};
  std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw std::runtime_error("cannot rename into " + path.string());
  }
}

std::optional<std::filesystem::path> resolve_cache_dir(const std::string& flag) {
  if (!flag.empty()) return std::filesystem::path(flag);
  if (const char* env = std::getenv(kCacheDirEnv); env && *env) return std::filesystem::path(env);
  return std::nullopt;
}

ResultCache& ResultCache::global() {
  static ResultCache cache;
  return cache;
}

void ResultCache::set_directory(std::optional<std::filesystem::path> dir) {
  std::lock_guard<std::mutex> lock(mu_);
  dir_ = dir;
  NormCache::global().set_directory(dir ? std::optional(*dir / "norms") : std::nullopt);
}

bool ResultCache::enabled() const {
  std::lock_guard<std::mutex> lock(mu_);
  return dir_.has_value();
}

std::filesystem::path ResultCache::path_for(const std::string& kind, const std::string& key) const {
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a(key)));
  return *dir_ / kind / (std::string(hex) + ".json");
}

std::optional<nlohmann::ordered_json> ResultCache::load(const std::string& kind, const std::string& key) {
  std::lock_guard<std::mutex> lock(mu_);
  if (!dir_) return std::nullopt;
  std::ifstream in(path_for(kind, key));
  if (in) {
    try {
      auto doc = nlohmann::ordered_json::parse(in);
      if (doc.at("key").get<std::string>() == key) {
        ++hits_;
        return doc.at("value");
      }
    } catch (const std::exception&) {
    }
  }
  ++misses_;
  return std::nullopt;
}

void ResultCache::store(const std::string& kind, const std::string& key, const nlohmann::ordered_json& value) {
  std::lock_guard<std::mutex> lock(mu_);
  if (!dir_) return;
  nlohmann::ordered_json doc;
  doc["key"] = key;
  doc["value"] = value;
  try {
    atomic_write(path_for(kind, key), doc.dump());
  } catch (const std::exception&) {
    // best effort
  }
}

}  // namespace quatforms

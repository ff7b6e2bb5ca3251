#pragma once

#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

namespace quatforms {

inline constexpr const char* kCacheDirEnv = "QUATFORMS_CACHE_DIR";

std::uint64_t fnv1a(std::string_view s);

/// Writes through a uniquely named temporary in the same directory, then
/// renames over the target.
void atomic_write(const std::filesystem::path& path, std::string_view content);

/// The flag value if non-empty, else $QUATFORMS_CACHE_DIR, else none.
std::optional<std::filesystem::path> resolve_cache_dir(const std::string& flag);

/// On-disk store of JSON values keyed by (kind, key text).  Entries hold
/// their key text, so hash collisions and corrupt files read as misses.
class ResultCache {
 public:
  static ResultCache& global();

  /// Also points the norm-enumeration cache at dir/norms.
  void set_directory(std::optional<std::filesystem::path> dir);
  bool enabled() const;
  std::optional<nlohmann::ordered_json> load(const std::string& kind, const std::string& key);
  void store(const std::string& kind, const std::string& key, const nlohmann::ordered_json& value);
  int hits() const { return hits_; }
  int misses() const { return misses_; }

 private:
  std::filesystem::path path_for(const std::string& kind, const std::string& key) const;
  mutable std::mutex mu_;
  std::optional<std::filesystem::path> dir_;
  int hits_ = 0;
  int misses_ = 0;
};

}  // namespace quatforms

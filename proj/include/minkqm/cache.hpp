#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

namespace minkqm {

/// Stored output of one moment computation. The strings are emitted verbatim on a hit.
struct CachedResult {
  std::string value;
  std::string radius;
  std::string midpoint;
  std::string params;
  std::string tail_bound;

  friend bool operator==(const CachedResult&, const CachedResult&) = default;
};

/// "method|L=..|<l or n>|<Q or B>|eps=.." keys, e.g. "series|L=2|lmax=25|Q=128|eps=1e-07".
std::string cache_key(const std::string& method, int L, const std::string& index, const std::string& truncation,
                      const std::string& eps);

/// JSON result cache. Loading a missing file gives an empty cache; save() writes atomically.
class MomentCache {
 public:
  explicit MomentCache(std::filesystem::path path);

  /// MINKQM_CACHE when set and non-empty, otherwise `requested`.
  static std::optional<std::filesystem::path> resolve_path(const std::optional<std::string>& requested);

  const std::filesystem::path& path() const { return path_; }
  std::optional<CachedResult> find(const std::string& key) const;
  void store(const std::string& key, CachedResult r);
  void save() const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::filesystem::path path_;
  std::map<std::string, CachedResult> entries_;
};

}  // namespace minkqm

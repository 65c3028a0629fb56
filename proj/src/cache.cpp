#include "minkqm/cache.hpp"

#include <cstdlib>
#include <fstream>

#include "json.hpp"
#include "minkqm/errors.hpp"

namespace minkqm {

std::string cache_key(const std::string& method, int L, const std::string& index, const std::string& truncation,
                      const std::string& eps) {
  return method + "|L=" + std::to_string(L) + "|" + index + "|" + truncation + "|eps=" + eps;
}

MomentCache::MomentCache(std::filesystem::path path) : path_(std::move(path)) {
  std::ifstream in(path_);
  if (!in) return;
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError("cache file " + path_.string() + " is not valid JSON: " + e.what());
  }
  if (!doc.is_object() || !doc.contains("entries")) return;
  for (const auto& [key, v] : doc["entries"].items()) {
    entries_[key] = CachedResult{v.value("value", ""), v.value("radius", ""), v.value("midpoint", ""),
                                 v.value("params", ""), v.value("tail_bound", "")};
  }
}

std::optional<std::filesystem::path> MomentCache::resolve_path(const std::optional<std::string>& requested) {
  if (const char* env = std::getenv("MINKQM_CACHE"); env != nullptr && *env != '\0') {
    return std::filesystem::path(env);
  }
  if (requested && !requested->empty()) return std::filesystem::path(*requested);
  return std::nullopt;
}

std::optional<CachedResult> MomentCache::find(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void MomentCache::store(const std::string& key, CachedResult r) { entries_[key] = std::move(r); }

void MomentCache::save() const {
  nlohmann::ordered_json doc;
  doc["version"] = 1;
  nlohmann::ordered_json entries = nlohmann::ordered_json::object();
  for (const auto& [key, r] : entries_) {
    entries[key] = {{"value", r.value},
                    {"radius", r.radius},
                    {"midpoint", r.midpoint},
                    {"params", r.params},
                    {"tail_bound", r.tail_bound}};
  }
  doc["entries"] = std::move(entries);
  std::filesystem::path tmp = path_;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw DomainError("cannot write cache file " + tmp.string());
    out << doc.dump(2) << '\n';
  }
  std::filesystem::rename(tmp, path_);
}

}  // namespace minkqm

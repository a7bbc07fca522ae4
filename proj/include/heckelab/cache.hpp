#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "heckelab/serialize.hpp"

// Persistent result cache keyed by (p, N, group, sturm bound, schema
// version, Heilbronn family).  Entries are JSON files wrapping the payload
// with an FNV-1a checksum; writes go through a temp file and an atomic
// rename, so concurrent scanners never observe partial entries.

namespace heckelab {

struct CacheKey {
  uint32_t p = 0;
  int64_t level = 0;
  GroupKind kind = GroupKind::Gamma0;
  int64_t sturm = 0;
  std::string family = heilbronn_family_id;
};

// File name encoding the full key, e.g. "p2_N431_gamma0_s72_cremona-merel_v1.json".
std::string cache_entry_name(const CacheKey& key);

class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir);

  // Precedence: explicit flag, then HECKELAB_CACHE_DIR, then ".heckelab-cache".
  static std::filesystem::path resolve_dir(const std::string& flag_value);

  const std::filesystem::path& dir() const { return dir_; }

  enum class LoadStatus { hit, miss, stale_version, corrupt };
  // On `hit`, payload_out holds the stored payload; `detail` receives a
  // human-readable reason for every non-hit outcome.
  LoadStatus load(const CacheKey& key, ojson& payload_out, std::string* detail = nullptr) const;

  // Atomic write; creates the directory on first use.
  void store(const CacheKey& key, const ojson& payload) const;

  struct EntryInfo {
    std::string name;
    uintmax_t bytes = 0;
    bool checksum_ok = false;
    int64_t schema = -1;  // -1 when unreadable
  };
  std::vector<EntryInfo> list() const;

  bool remove(const std::string& entry_name) const;

  // Drops corrupt entries and entries with a stale schema version.
  struct GcStats {
    size_t removed = 0;
    size_t kept = 0;
  };
  GcStats gc() const;

 private:
  std::filesystem::path dir_;
};

}  // namespace heckelab

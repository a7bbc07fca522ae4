#include "heckelab/cache.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include "heckelab/version.hpp"

namespace heckelab {

namespace fs = std::filesystem;

std::string cache_entry_name(const CacheKey& key) {
  return "p" + std::to_string(key.p) + "_N" + std::to_string(key.level) + "_" +
         group_kind_name(key.kind) + "_s" + std::to_string(key.sturm) + "_" + key.family +
         "_v" + std::to_string(schema_version) + ".json";
}

ResultCache::ResultCache(fs::path dir) : dir_(std::move(dir)) {}

fs::path ResultCache::resolve_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return fs::path(flag_value);
  if (const char* env = std::getenv("HECKELAB_CACHE_DIR"); env && *env) return fs::path(env);
  return fs::path(".heckelab-cache");
}

ResultCache::LoadStatus ResultCache::load(const CacheKey& key, ojson& payload_out,
                                          std::string* detail) const {
  auto set_detail = [detail](const std::string& s) {
    if (detail) *detail = s;
  };
  fs::path file = dir_ / cache_entry_name(key);
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    set_detail("no entry " + file.string());
    return LoadStatus::miss;
  }
  ojson wrapper;
  try {
    wrapper = ojson::parse(in);
  } catch (const std::exception& e) {
    set_detail(std::string("unparseable entry: ") + e.what());
    return LoadStatus::corrupt;
  }
  if (!wrapper.contains("checksum") || !wrapper.contains("payload")) {
    set_detail("entry missing checksum or payload");
    return LoadStatus::corrupt;
  }
  std::string body = wrapper["payload"].dump();
  if (wrapper["checksum"].get<std::string>() != fnv1a64_hex(body)) {
    set_detail("checksum mismatch on " + file.string());
    return LoadStatus::corrupt;
  }
  const auto& payload = wrapper["payload"];
  if (!payload.contains("schema_version") ||
      payload["schema_version"].get<int64_t>() != schema_version) {
    set_detail("schema version mismatch, recompute");
    return LoadStatus::stale_version;
  }
  payload_out = payload;
  set_detail("");
  return LoadStatus::hit;
}

void ResultCache::store(const CacheKey& key, const ojson& payload) const {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec && !fs::is_directory(dir_))
    throw std::runtime_error("cache: cannot create directory " + dir_.string());

  ojson wrapper;
  wrapper["checksum"] = fnv1a64_hex(payload.dump());
  wrapper["payload"] = payload;

  fs::path final_path = dir_ / cache_entry_name(key);
  fs::path tmp_path = final_path;
  tmp_path += ".tmp";
  {
    std::ofstream out(tmp_path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cache: cannot write " + tmp_path.string());
    out << wrapper.dump(2) << "\n";
    if (!out.good()) throw std::runtime_error("cache: short write to " + tmp_path.string());
  }
  fs::rename(tmp_path, final_path);
}

std::vector<ResultCache::EntryInfo> ResultCache::list() const {
  std::vector<EntryInfo> out;
  std::error_code ec;
  for (const auto& de : fs::directory_iterator(dir_, ec)) {
    if (!de.is_regular_file() || de.path().extension() != ".json") continue;
    EntryInfo info;
    info.name = de.path().filename().string();
    info.bytes = de.file_size();
    std::ifstream in(de.path(), std::ios::binary);
    try {
      ojson wrapper = ojson::parse(in);
      info.checksum_ok = wrapper.contains("checksum") && wrapper.contains("payload") &&
                         wrapper["checksum"].get<std::string>() ==
                             fnv1a64_hex(wrapper["payload"].dump());
      if (info.checksum_ok && wrapper["payload"].contains("schema_version"))
        info.schema = wrapper["payload"]["schema_version"].get<int64_t>();
    } catch (const std::exception&) {
      info.checksum_ok = false;
    }
    out.push_back(std::move(info));
  }
  std::sort(out.begin(), out.end(),
            [](const EntryInfo& a, const EntryInfo& b) { return a.name < b.name; });
  return out;
}

bool ResultCache::remove(const std::string& entry_name) const {
  if (entry_name.find('/') != std::string::npos)
    throw std::invalid_argument("cache rm: entry name, not a path");
  std::error_code ec;
  return fs::remove(dir_ / entry_name, ec) && !ec;
}

ResultCache::GcStats ResultCache::gc() const {
  GcStats stats;
  for (const auto& info : list()) {
    if (info.checksum_ok && info.schema == schema_version) {
      ++stats.kept;
      continue;
    }
    if (remove(info.name)) ++stats.removed;
  }
  return stats;
}

}  // namespace heckelab

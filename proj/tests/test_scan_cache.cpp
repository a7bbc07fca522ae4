#include <doctest.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "heckelab/cache.hpp"
#include "heckelab/scan.hpp"
#include "heckelab/version.hpp"

using namespace heckelab;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("heckelab_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(reinterpret_cast<uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

}  // namespace

TEST_CASE("FNV-1a 64 matches the published test vectors") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
  CHECK(fnv1a64_hex("foobar") == "85944171f73967e8");
  CHECK(fnv1a64_hex("") == "cbf29ce484222325");
}

TEST_CASE("pair payload carries schema, audit fields, and factor data") {
  ojson payload = compute_pair(5, 11, GroupKind::Gamma0, std::nullopt);
  CHECK(payload.at("schema_version").get<int>() == schema_version);
  CHECK(payload.at("artifact_version").get<std::string>() == version_string);
  CHECK(payload.at("heilbronn_family").get<std::string>() == heilbronn_family_id);
  CHECK(payload.at("sturm_bound").get<int64_t>() == 2);
  CHECK(payload.at("space").at("genus").get<int64_t>() == 1);
  CHECK(payload.at("space").at("cuspidal_dim").get<int64_t>() == 2);

  const auto& alg = payload.at("algebra");
  CHECK(alg.at("dim").get<size_t>() == 1);
  size_t space_dim = payload.at("space").at("cuspidal_dim").get<size_t>();
  REQUIRE(alg.at("basis").size() == 1);
  REQUIRE(alg.at("basis")[0].size() == space_dim);
  REQUIRE(alg.at("basis")[0][0].size() == space_dim);

  REQUIRE(payload.at("factors").size() == 1);
  const auto& f = payload.at("factors")[0];
  CHECK(f.at("residue").at("degree").get<size_t>() == 1);
  CHECK(f.at("r") == ojson({{"num", 1}, {"den", 1}}));
  CHECK(f.at("eisenstein_flag").get<bool>() == true);  // 5 divides 11 - 1
  CHECK(f.at("min_poly_irreducible").size() == alg.at("generators").size());

  const auto& rep = payload.at("diagnostics").at("reports")[0];
  CHECK(rep.at("multiplicity_r").is_null());  // flagged: no claim
  CHECK(payload.at("diagnostics").at("violations").get<size_t>() == 0);
}

TEST_CASE("scan view strips the bulky bases and keeps the reports") {
  ojson payload = compute_pair(2, 23, GroupKind::Gamma0, std::nullopt);
  ojson view = scan_view_json(payload);
  CHECK_FALSE(view.at("algebra").contains("basis"));
  for (const auto& f : view.at("factors")) {
    CHECK_FALSE(f.contains("subspace"));
    CHECK_FALSE(f.contains("algebra_basis"));
    CHECK(f.contains("residue"));
    CHECK(f.contains("socle_m"));
  }
  CHECK(view.at("diagnostics") == payload.at("diagnostics"));
  // The original payload is untouched.
  CHECK(payload.at("algebra").contains("basis"));
}

TEST_CASE("CSV emitter produces the fixed columns with known rows") {
  CHECK(csv_header() ==
        "p,N,group,factor,dimT,res_deg,dimF_socle,dimF_socle_p,r,ordinary,gorenstein,"
        "weight1_sig,eisenstein_flag\n");

  // Level 11 at p = 5: scalar algebra, Eisenstein-flagged (5 | 11 - 1).
  std::string out;
  append_csv_rows(out, compute_pair(5, 11, GroupKind::Gamma0, std::nullopt));
  CHECK(out == "5,11,gamma0,0,1,1,1,1,1,1,1,0,1\n");

  // Level 23 at p = 2: one factor with residue field F_4.
  out.clear();
  append_csv_rows(out, compute_pair(2, 23, GroupKind::Gamma0, std::nullopt));
  CHECK(out == "2,23,gamma0,0,2,2,1,1,1,1,1,0,0\n");
}

TEST_CASE("cache entry name encodes the full key") {
  CacheKey key{2, 431, GroupKind::Gamma0, 72, heilbronn_family_id};
  CHECK(cache_entry_name(key) == "p2_N431_gamma0_s72_cremona-merel_v1.json");
}

TEST_CASE("cache store/load round-trips and detects corruption") {
  TempDir tmp;
  ResultCache cache(tmp.path);
  ojson payload = compute_pair(5, 11, GroupKind::Gamma0, std::nullopt);
  CacheKey key{5, 11, GroupKind::Gamma0, payload.at("sturm_bound").get<int64_t>(),
               heilbronn_family_id};

  ojson loaded;
  std::string detail;
  CHECK(cache.load(key, loaded, &detail) == ResultCache::LoadStatus::miss);

  cache.store(key, payload);
  REQUIRE(cache.load(key, loaded, &detail) == ResultCache::LoadStatus::hit);
  CHECK(loaded == payload);  // field-for-field

  auto entries = cache.list();
  REQUIRE(entries.size() == 1);
  CHECK(entries[0].name == cache_entry_name(key));
  CHECK(entries[0].checksum_ok);
  CHECK(entries[0].schema == schema_version);

  // Flip one byte of the payload body on disk.
  fs::path file = tmp.path / cache_entry_name(key);
  std::string text;
  {
    std::ifstream in(file, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  auto pos = text.find("\"genus\": 1");
  REQUIRE(pos != std::string::npos);
  text[pos + 9] = '7';
  {
    std::ofstream outf(file, std::ios::binary | std::ios::trunc);
    outf << text;
  }
  CHECK(cache.load(key, loaded, &detail) == ResultCache::LoadStatus::corrupt);
  CHECK(detail.find("checksum") != std::string::npos);
  CHECK_FALSE(cache.list()[0].checksum_ok);

  auto stats = cache.gc();
  CHECK(stats.removed == 1);
  CHECK(stats.kept == 0);
  CHECK(cache.list().empty());

  CHECK_FALSE(cache.remove("p9_N9_gamma0_s9_x_v1.json"));
  CHECK_THROWS_AS(cache.remove("../escape.json"), std::invalid_argument);
}

TEST_CASE("cache directory resolution prefers flag, then env, then default") {
  CHECK(ResultCache::resolve_dir("/explicit/dir") == fs::path("/explicit/dir"));
  ::setenv("HECKELAB_CACHE_DIR", "/from/env", 1);
  CHECK(ResultCache::resolve_dir("") == fs::path("/from/env"));
  CHECK(ResultCache::resolve_dir("/explicit/dir") == fs::path("/explicit/dir"));
  ::unsetenv("HECKELAB_CACHE_DIR");
  CHECK(ResultCache::resolve_dir("") == fs::path(".heckelab-cache"));
}

TEST_CASE("run_scan skips p | N, caches, and is deterministic across reruns") {
  TempDir tmp;
  ScanConfig cfg;
  cfg.primes = {2, 5};
  cfg.levels = {10, 11};
  cfg.cache_dir = tmp.path.string();
  cfg.workers = 2;

  std::ostringstream log1, log2;
  ScanRun run1 = run_scan(cfg, log1);
  REQUIRE(run1.outcomes.size() == 4);
  CHECK(run1.outcomes[0].skipped);  // (2, 10)
  CHECK(run1.outcomes[0].skip_reason == "level divisible by p");
  CHECK_FALSE(run1.outcomes[1].skipped);  // (2, 11)
  CHECK(run1.outcomes[2].skipped);        // (5, 10)
  CHECK_FALSE(run1.outcomes[3].skipped);  // (5, 11)
  CHECK_FALSE(run1.outcomes[1].from_cache);
  CHECK(run1.total_violations == 0);
  CHECK_FALSE(run1.integrity_error);
  CHECK(log1.str().find("skip p=2 N=10") != std::string::npos);

  ScanRun run2 = run_scan(cfg, log2);
  CHECK(run2.outcomes[1].from_cache);
  CHECK(run2.outcomes[3].from_cache);
  CHECK(run2.outcomes[1].payload == run1.outcomes[1].payload);

  // Emitters see identical bytes whether results came from cache or compute.
  CHECK(scan_output_json(cfg, run1).dump(2) == scan_output_json(cfg, run2).dump(2));
  CHECK(scan_output_csv(run1) == scan_output_csv(run2));
  CHECK(scan_exit_code(cfg, run1) == 0);

  ojson out = scan_output_json(cfg, run1);
  CHECK(out.at("runs").size() == 2);
  CHECK(out.at("skipped").size() == 2);
  CHECK(out.at("errors").empty());
  CHECK(out.at("total_violations").get<size_t>() == 0);
  // Scan views in the stream, not full payloads.
  CHECK_FALSE(out.at("runs")[0].at("algebra").contains("basis"));
}

TEST_CASE("sturm override flows into the payload and the cache key") {
  ojson payload = compute_pair(5, 11, GroupKind::Gamma0, 5);
  CHECK(payload.at("sturm_bound").get<int64_t>() == 5);
  CHECK(payload.at("algebra").at("dim").get<size_t>() == 1);

  TempDir tmp;
  ScanConfig cfg;
  cfg.primes = {5};
  cfg.levels = {11};
  cfg.sturm_override = 5;
  cfg.cache_dir = tmp.path.string();
  std::ostringstream log;
  run_scan(cfg, log);
  ResultCache cache(tmp.path);
  auto entries = cache.list();
  REQUIRE(entries.size() == 1);
  CHECK(entries[0].name == "p5_N11_gamma0_s5_cremona-merel_v1.json");

  GroupSpec g{GroupKind::Gamma0, 11};
  auto sp = build_space(5, g);
  CHECK_THROWS_AS(generate_algebra(sp, 0), std::invalid_argument);
}

TEST_CASE("scan rejects empty or invalid configurations") {
  std::ostringstream log;
  ScanConfig cfg;
  CHECK_THROWS_AS(run_scan(cfg, log), std::invalid_argument);
  cfg.primes = {5};
  cfg.levels = {11};
  cfg.workers = 0;
  CHECK_THROWS_AS(run_scan(cfg, log), std::invalid_argument);
}

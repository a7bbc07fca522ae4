#include "heckelab/scan.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "heckelab/diagnostics.hpp"
#include "heckelab/version.hpp"

namespace heckelab {

ojson compute_pair(uint32_t p, int64_t level, GroupKind kind,
                   std::optional<int64_t> sturm_override) {
  GroupSpec g{kind, level};
  ModularSymbolSpace sp = build_space(p, g);
  HeckeAlgebra alg = generate_algebra(sp, sturm_override);
  std::vector<LocalFactor> factors = local_factors(sp, alg);
  ScanResult res = diagnose_all(sp, alg, factors);
  return pair_payload_json(sp, alg, factors, res);
}

ScanRun run_scan(const ScanConfig& cfg, std::ostream& log) {
  if (cfg.workers < 1) throw std::invalid_argument("scan: worker count must be >= 1");
  if (cfg.primes.empty() || cfg.levels.empty())
    throw std::invalid_argument("scan: need at least one prime and one level");

  std::vector<uint32_t> primes = cfg.primes;
  std::vector<int64_t> levels = cfg.levels;
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  ScanRun run;
  for (uint32_t p : primes)
    for (int64_t N : levels) {
      PairOutcome o;
      o.p = p;
      o.level = N;
      run.outcomes.push_back(std::move(o));
    }

  ResultCache cache(ResultCache::resolve_dir(cfg.cache_dir));
  std::mutex log_mutex;
  std::atomic<size_t> next{0};

  auto worker = [&]() {
    for (;;) {
      size_t idx = next.fetch_add(1);
      if (idx >= run.outcomes.size()) return;
      PairOutcome& o = run.outcomes[idx];

      if (o.level < 1) {
        o.skipped = true;
        o.skip_reason = "level must be positive";
      } else if (o.level % o.p == 0) {
        o.skipped = true;
        o.skip_reason = "level divisible by p";
      }
      if (o.skipped) {
        std::lock_guard<std::mutex> lk(log_mutex);
        log << "skip p=" << o.p << " N=" << o.level << ": " << o.skip_reason << "\n";
        continue;
      }

      CacheKey key{o.p, o.level, cfg.kind,
                   cfg.sturm_override.value_or(group_invariants({cfg.kind, o.level}).sturm_bound),
                   heilbronn_family_id};
      std::string detail;
      if (cfg.use_cache &&
          cache.load(key, o.payload, &detail) == ResultCache::LoadStatus::hit) {
        o.from_cache = true;
        std::lock_guard<std::mutex> lk(log_mutex);
        log << "cache hit p=" << o.p << " N=" << o.level << "\n";
        continue;
      }
      if (!detail.empty()) {
        std::lock_guard<std::mutex> lk(log_mutex);
        log << "cache: " << detail << "\n";
      }

      try {
        o.payload = compute_pair(o.p, o.level, cfg.kind, cfg.sturm_override);
        if (cfg.use_cache) cache.store(key, o.payload);
      } catch (const std::exception& e) {
        o.error = e.what();
        std::lock_guard<std::mutex> lk(log_mutex);
        log << "error p=" << o.p << " N=" << o.level << ": " << o.error << "\n";
      }
    }
  };

  size_t nworkers = std::min<size_t>(static_cast<size_t>(cfg.workers), run.outcomes.size());
  if (nworkers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (size_t i = 0; i < nworkers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (const auto& o : run.outcomes) {
    if (!o.error.empty()) run.integrity_error = true;
    if (!o.payload.is_null() && o.payload.contains("diagnostics"))
      run.total_violations +=
          o.payload.at("diagnostics").at("violations").get<size_t>();
  }
  return run;
}

ojson scan_output_json(const ScanConfig& cfg, const ScanRun& run) {
  ojson out;
  out["schema_version"] = schema_version;
  out["artifact_version"] = version_string;
  out["config"] = ojson{{"primes", cfg.primes},
                        {"levels", cfg.levels},
                        {"group", group_kind_name(cfg.kind)},
                        {"sturm_override",
                         cfg.sturm_override ? ojson(*cfg.sturm_override) : ojson(nullptr)},
                        {"workers", cfg.workers},
                        {"seed", cfg.seed},
                        {"strict", cfg.strict}};
  ojson skipped = ojson::array();
  ojson runs = ojson::array();
  ojson errors = ojson::array();
  for (const auto& o : run.outcomes) {
    if (o.skipped) {
      skipped.push_back(ojson{{"p", o.p}, {"level", o.level}, {"reason", o.skip_reason}});
    } else if (!o.error.empty()) {
      errors.push_back(ojson{{"p", o.p}, {"level", o.level}, {"error", o.error}});
    } else {
      runs.push_back(scan_view_json(o.payload));
    }
  }
  out["skipped"] = std::move(skipped);
  out["errors"] = std::move(errors);
  out["runs"] = std::move(runs);
  out["total_violations"] = run.total_violations;
  return out;
}

std::string scan_output_csv(const ScanRun& run) {
  std::string out = csv_header();
  for (const auto& o : run.outcomes)
    if (!o.skipped && o.error.empty()) append_csv_rows(out, o.payload);
  return out;
}

int scan_exit_code(const ScanConfig& cfg, const ScanRun& run) {
  if (run.integrity_error) return 1;
  if (cfg.strict && run.total_violations > 0) return 3;
  return 0;
}

}  // namespace heckelab

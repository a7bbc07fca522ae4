#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "heckelab/cache.hpp"
#include "heckelab/serialize.hpp"

// Scan orchestration: for each admissible (p, N) pair, build the modular
// symbol space, generate the Hecke algebra, split it into local factors, and
// run the diagnostic battery.  Pairs are processed by a work-stealing pool;
// each pair's pipeline is sequential, results land in deterministic (p, N)
// order, and completed payloads are cached.

namespace heckelab {

enum class OutputFormat { json, csv };

struct ScanConfig {
  std::vector<uint32_t> primes;
  std::vector<int64_t> levels;
  GroupKind kind = GroupKind::Gamma0;
  std::optional<int64_t> sturm_override;
  std::string cache_dir;  // empty: HECKELAB_CACHE_DIR, then ".heckelab-cache"
  bool use_cache = true;
  OutputFormat format = OutputFormat::json;
  int workers = 1;
  uint64_t seed = 0;  // recorded in the run header; the pipeline is deterministic
  bool strict = false;
};

struct PairOutcome {
  uint32_t p = 0;
  int64_t level = 0;
  bool skipped = false;
  std::string skip_reason;
  bool from_cache = false;
  std::string error;  // nonempty on compute/cache failure
  ojson payload;      // full payload when computed or loaded
};

struct ScanRun {
  std::vector<PairOutcome> outcomes;  // ascending (p, level)
  size_t total_violations = 0;
  bool integrity_error = false;
};

// Compute one pair end to end; the building block `run_scan` parallelizes.
ojson compute_pair(uint32_t p, int64_t level, GroupKind kind,
                   std::optional<int64_t> sturm_override);

// Skip/cache/error notes go to `log` (one line each); payloads do not.
ScanRun run_scan(const ScanConfig& cfg, std::ostream& log);

// Emitters over a finished run.  JSON output carries the config echo and the
// per-pair scan views; CSV emits the fixed factor table.
ojson scan_output_json(const ScanConfig& cfg, const ScanRun& run);
std::string scan_output_csv(const ScanRun& run);

// 0 on success, 1 on integrity errors, 3 when --strict and violations exist.
int scan_exit_code(const ScanConfig& cfg, const ScanRun& run);

}  // namespace heckelab

// heckelab: mod-p Hecke algebras of weight-2 modular symbols, their local
// factors and multiplicity diagnostics, plus a Dieudonne-module toolkit.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "heckelab/cache.hpp"
#include "heckelab/dieudonne.hpp"
#include "heckelab/fp.hpp"
#include "heckelab/rcf.hpp"
#include "heckelab/scan.hpp"
#include "heckelab/version.hpp"

namespace {

using namespace heckelab;

// "11,23,37" or "11-60" or a mix: "11,20-30,431".
std::vector<int64_t> parse_level_list(const std::string& text) {
  std::vector<int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto dash = item.find('-', 1);  // allow a leading minus to fail parsing below
    if (dash != std::string::npos) {
      int64_t lo = std::stoll(item.substr(0, dash));
      int64_t hi = std::stoll(item.substr(dash + 1));
      if (lo > hi) throw CLI::ValidationError("levels", "range " + item + " is empty");
      for (int64_t v = lo; v <= hi; ++v) out.push_back(v);
    } else {
      out.push_back(std::stoll(item));
    }
  }
  if (out.empty()) throw CLI::ValidationError("levels", "no levels given");
  return out;
}

std::vector<uint32_t> parse_prime_list(const std::string& text) {
  std::vector<uint32_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    int64_t v = std::stoll(item);
    if (v < 2 || !is_prime_u64(static_cast<uint64_t>(v)))
      throw CLI::ValidationError("p", item + " is not prime");
    out.push_back(static_cast<uint32_t>(v));
  }
  if (out.empty()) throw CLI::ValidationError("p", "no primes given");
  return out;
}

void write_output(const std::string& text, const std::string& out_file) {
  if (out_file.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_file, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write " + out_file);
  f << text;
}

FpMatrix parse_matrix_arg(uint32_t p, const std::string& text) {
  std::vector<uint32_t> entries;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    entries.push_back(reduce_int(std::stoll(item), p));
  }
  size_t n = 0;
  while (n * n < entries.size()) ++n;
  if (n * n != entries.size() || n == 0)
    throw CLI::ValidationError("matrix", "need n^2 comma-separated entries");
  return FpMatrix::from_flat(p, n, n, entries);
}

std::string poly_string(const FpPoly& f) { return f.to_string(); }

int cmd_scan(const ScanConfig& cfg, const std::string& out_file) {
  ScanRun run = run_scan(cfg, std::cerr);
  if (cfg.format == OutputFormat::csv)
    write_output(scan_output_csv(run), out_file);
  else
    write_output(scan_output_json(cfg, run).dump(2) + "\n", out_file);
  int code = scan_exit_code(cfg, run);
  if (run.total_violations > 0)
    std::cerr << "findings: " << run.total_violations << " consistency violation(s)"
              << (code == 3 ? " (strict: failing)" : "") << "\n";
  return code;
}

int cmd_inspect(uint32_t p, int64_t level, GroupKind kind,
                std::optional<int64_t> sturm_override, const std::string& cache_dir,
                const std::string& out_file) {
  GroupSpec g{kind, level};
  CacheKey key{p, level, kind,
               sturm_override.value_or(group_invariants(g).sturm_bound), heilbronn_family_id};
  ResultCache cache(ResultCache::resolve_dir(cache_dir));
  ojson payload;
  std::string detail;
  switch (cache.load(key, payload, &detail)) {
    case ResultCache::LoadStatus::hit:
      break;
    case ResultCache::LoadStatus::miss:
      std::cerr << "not found: " << cache_entry_name(key) << " in " << cache.dir().string()
                << " (run `heckelab scan` first)\n";
      return 4;
    case ResultCache::LoadStatus::stale_version:
      std::cerr << "stale entry: " << detail << " (re-run `heckelab scan`)\n";
      return 4;
    case ResultCache::LoadStatus::corrupt:
      std::cerr << "integrity error: " << detail
                << "; remove it with `heckelab cache gc` and re-run `heckelab scan`\n";
      return 5;
  }
  write_output(payload.dump(2) + "\n", out_file);
  return 0;
}

int cmd_dieudonne_conjugacy(uint32_t p, size_t n, int random_count, uint64_t seed,
                            const std::string& matrix_arg) {
  if (!matrix_arg.empty()) {
    FpMatrix a = parse_matrix_arg(p, matrix_arg);
    auto cert = transpose_conjugacy_certificate(a);
    std::cout << "dim " << cert.dim << ", invariant factors of V:";
    for (const auto& f : cert.invariants_v) std::cout << "  " << poly_string(f);
    std::cout << "\nconjugate: " << (cert.conjugate ? "yes" : "no") << "\n";
    return cert.conjugate ? 0 : 1;
  }
  // Seeded xorshift battery over random invertible matrices.
  uint64_t state = seed ? seed : 0x9e3779b97f4a7c15ULL;
  auto next = [&state]() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  };
  int passes = 0, tried = 0;
  while (passes < random_count && tried < random_count * 64) {
    ++tried;
    FpMatrix a(p, n, n);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) a.at(i, j) = static_cast<uint32_t>(next() % p);
    if (!inverse(a)) continue;
    auto cert = transpose_conjugacy_certificate(a);
    if (!cert.conjugate) {
      std::cout << "FAIL at trial " << tried << "\n";
      return 1;
    }
    ++passes;
  }
  std::cout << passes << " passes (p=" << p << ", n=" << n << ", seed=" << seed << ")\n";
  return passes == random_count ? 0 : 1;
}

int cmd_dieudonne_witt(uint32_t p, int k) {
  auto rep = witt_kernel_check(p, k);
  std::cout << "q = " << rep.q << ": checked " << rep.pairs_checked << " pairs, kernel has "
            << rep.kernel_count << " elements, graph of inverse Frobenius: "
            << (rep.graph_of_inverse_frobenius ? "yes" : "no") << "\n";
  return rep.graph_of_inverse_frobenius ? 0 : 1;
}

int cmd_dieudonne_unit(uint32_t p, int n, uint64_t unit) {
  auto rep = honda_unit_example(p, n, unit);
  std::cout << "module Z/" << rep.data.modulus << ", V = " << rep.data.v_unit
            << ", F = " << rep.data.f_elem << "\n";
  std::cout << "F generates p*(Z/p^n): " << (rep.f_generates_p_times_module ? "yes" : "no")
            << "\n";
  std::cout << "V acts as 1 on M/FM: " << (rep.v_trivial_on_quotient ? "yes" : "no") << "\n";
  std::cout << "V differs from 1 on M: " << (rep.v_nontrivial_on_module ? "yes" : "no")
            << "\n";
  if (rep.degenerate) std::cout << "degenerate: V = 1 on all of M, no counterexample\n";
  return 0;
}

int cmd_dieudonne_points(uint32_t p, const std::string& matrix_arg) {
  FpMatrix a = parse_matrix_arg(p, matrix_arg);
  auto data = frobenius_on_points(a);
  std::cout << "splitting field: F_" << p << "^" << data.field_degree
            << ", modulus " << poly_string(data.field_modulus) << "\n";
  std::cout << "geometric Frobenius on points:\n";
  for (size_t i = 0; i < data.B.rows(); ++i) {
    std::cout << "  [";
    for (size_t j = 0; j < data.B.cols(); ++j)
      std::cout << (j ? " " : "") << data.B.at(i, j);
    std::cout << "]\n";
  }
  std::cout << "transpose(A) = C^-1 B C verified: " << (data.verified ? "yes" : "no") << "\n";
  std::cout << "B conjugate to A over F_" << p << ": "
            << (are_conjugate(data.B, a) ? "yes" : "no") << "\n";
  return data.verified ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mod-p Hecke algebras, multiplicity diagnostics, Dieudonne toolkit"};
  app.set_version_flag("--version", std::string(heckelab::version_string));
  app.require_subcommand(1);

  std::string primes_arg, levels_arg, group_arg = "gamma0", cache_dir, out_file, format_arg =
      "json";
  int64_t sturm_arg = 0;
  int workers = 1;
  uint64_t seed = 0;
  bool strict = false, no_cache = false;

  auto* scan = app.add_subcommand("scan", "scan (p, N) pairs and report local factors");
  scan->add_option("--p", primes_arg, "comma-separated primes, e.g. 2,3,5")->required();
  scan->add_option("--levels", levels_arg, "levels: list and/or ranges, e.g. 11,20-30")
      ->required();
  scan->add_option("--group", group_arg, "gamma0 or gamma1")
      ->check(CLI::IsMember({"gamma0", "gamma1"}));
  scan->add_option("--sturm", sturm_arg, "override the generation bound");
  scan->add_option("--cache-dir", cache_dir, "cache directory");
  scan->add_option("--out", out_file, "write output to a file instead of stdout");
  scan->add_option("--format", format_arg, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  scan->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
  scan->add_option("--seed", seed, "seed recorded in the run header");
  scan->add_flag("--strict", strict, "exit nonzero on consistency findings");
  scan->add_flag("--no-cache", no_cache, "compute without reading or writing the cache");

  uint32_t ip = 0;
  int64_t ilevel = 0;
  auto* inspect = app.add_subcommand("inspect", "dump a cached pair in full");
  inspect->add_option("--p", ip, "prime")->required();
  inspect->add_option("--level", ilevel, "level N")->required();
  inspect->add_option("--group", group_arg, "gamma0 or gamma1")
      ->check(CLI::IsMember({"gamma0", "gamma1"}));
  inspect->add_option("--sturm", sturm_arg, "generation bound used by the scan");
  inspect->add_option("--cache-dir", cache_dir, "cache directory");
  inspect->add_option("--out", out_file, "write output to a file instead of stdout");

  auto* dieu = app.add_subcommand("dieudonne", "Dieudonne module toolkit");
  dieu->require_subcommand(1);
  uint32_t dp = 2;
  size_t dn = 2;
  int drandom = 100, dk = 1, dnn = 2;
  uint64_t dunit = 1;
  std::string dmatrix;

  auto* conj = dieu->add_subcommand("conjugacy", "certify V conjugate to transpose(V)");
  conj->add_option("--p", dp, "prime")->required();
  conj->add_option("--n", dn, "matrix size for the random battery");
  conj->add_option("--random", drandom, "number of random invertible matrices");
  conj->add_option("--seed", seed, "PRNG seed");
  conj->add_option("--matrix", dmatrix, "explicit matrix, n^2 comma-separated entries");

  auto* witt = dieu->add_subcommand("witt", "kernel of the covector map over F_(p^k)");
  witt->add_option("--p", dp, "prime")->required();
  witt->add_option("--k", dk, "extension degree")->required();

  auto* unit = dieu->add_subcommand("unit-example", "V a unit congruent to 1 mod p on Z/p^n");
  unit->add_option("--p", dp, "prime")->required();
  unit->add_option("--n", dnn, "exponent, module Z/p^n")->required();
  unit->add_option("--unit", dunit, "the unit V")->required();

  auto* points = dieu->add_subcommand("points", "geometric Frobenius on the point functor");
  points->add_option("--p", dp, "prime")->required();
  points->add_option("--matrix", dmatrix, "matrix of V, n^2 comma-separated entries")
      ->required();

  auto* cachecmd = app.add_subcommand("cache", "manage the result cache");
  cachecmd->require_subcommand(1);
  std::vector<std::string> rm_names;
  auto* cls = cachecmd->add_subcommand("ls", "list entries");
  cls->add_option("--cache-dir", cache_dir, "cache directory");
  auto* crm = cachecmd->add_subcommand("rm", "remove entries by file name");
  crm->add_option("--cache-dir", cache_dir, "cache directory");
  crm->add_option("names", rm_names, "entry file names")->required();
  auto* cgc = cachecmd->add_subcommand("gc", "drop corrupt and stale-schema entries");
  cgc->add_option("--cache-dir", cache_dir, "cache directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (scan->parsed()) {
      ScanConfig cfg;
      cfg.primes = parse_prime_list(primes_arg);
      cfg.levels = parse_level_list(levels_arg);
      cfg.kind = parse_group_kind(group_arg);
      if (sturm_arg > 0) cfg.sturm_override = sturm_arg;
      cfg.cache_dir = cache_dir;
      cfg.use_cache = !no_cache;
      cfg.format = format_arg == "csv" ? OutputFormat::csv : OutputFormat::json;
      cfg.workers = workers;
      cfg.seed = seed;
      cfg.strict = strict;
      return cmd_scan(cfg, out_file);
    }
    if (inspect->parsed()) {
      std::optional<int64_t> sturm;
      if (sturm_arg > 0) sturm = sturm_arg;
      return cmd_inspect(ip, ilevel, parse_group_kind(group_arg), sturm, cache_dir, out_file);
    }
    if (dieu->parsed()) {
      if (conj->parsed()) return cmd_dieudonne_conjugacy(dp, dn, drandom, seed, dmatrix);
      if (witt->parsed()) return cmd_dieudonne_witt(dp, dk);
      if (unit->parsed()) return cmd_dieudonne_unit(dp, dnn, dunit);
      if (points->parsed()) return cmd_dieudonne_points(dp, dmatrix);
    }
    if (cachecmd->parsed()) {
      ResultCache cache(ResultCache::resolve_dir(cache_dir));
      if (cls->parsed()) {
        for (const auto& e : cache.list())
          std::cout << e.name << "  " << e.bytes << " bytes  "
                    << (e.checksum_ok ? "ok" : "CORRUPT")
                    << (e.checksum_ok && e.schema != heckelab::schema_version ? " stale" : "")
                    << "\n";
        return 0;
      }
      if (crm->parsed()) {
        int missing = 0;
        for (const auto& name : rm_names)
          if (cache.remove(name))
            std::cout << "removed " << name << "\n";
          else {
            std::cerr << "no such entry: " << name << "\n";
            ++missing;
          }
        return missing ? 4 : 0;
      }
      if (cgc->parsed()) {
        auto stats = cache.gc();
        std::cout << "removed " << stats.removed << ", kept " << stats.kept << "\n";
        return 0;
      }
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

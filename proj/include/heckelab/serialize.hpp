#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "heckelab/diagnostics.hpp"
#include "heckelab/hecke_algebra.hpp"
#include "heckelab/modsym.hpp"

// Versioned JSON schema for scan payloads plus the fixed-column CSV emitter.
// All numeric values are integers so byte-identical output depends only on
// the inputs, never on formatting of floats or on wall-clock data.

namespace heckelab {

using ojson = nlohmann::ordered_json;

// Identifies the Heilbronn data the Hecke action is built from; part of the
// cache key so changing the family invalidates stored results.
inline constexpr const char* heilbronn_family_id = "cremona-merel";

std::string group_kind_name(GroupKind kind);  // "gamma0" / "gamma1"
GroupKind parse_group_kind(const std::string& name);

// Full payload for one (p, N) pair: space summary, algebra basis, local
// factors with residue data and socles, diagnostic reports.  This is the
// unit stored in the cache and dumped by `inspect`.
ojson pair_payload_json(const ModularSymbolSpace& sp, const HeckeAlgebra& alg,
                        const std::vector<LocalFactor>& factors, const ScanResult& res);

// Payload with the bulky matrix bases removed; what `scan` emits per pair.
ojson scan_view_json(const ojson& payload);

// CSV: one row per local factor, columns fixed as documented in the README.
std::string csv_header();
void append_csv_rows(std::string& out, const ojson& payload);

// FNV-1a 64-bit, used as the cache integrity checksum.
uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);

}  // namespace heckelab

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "heckelab/hecke_algebra.hpp"

// Multiplicity diagnostics on local Hecke algebra factors: the multiplicity
// r read off the socle, the scalar test for T_p on the prime-to-p socle, the
// equivalence battery between the two weight-one criteria, and derived
// conclusions.  Statements about the residual Galois representation itself
// are never computed here; they are emitted as conclusions conditional on
// the standing hypotheses (ordinary, irreducible), with the Eisenstein flag
// as the heuristic gate for the latter.

namespace heckelab {

struct Rational {
  int64_t num = 0;
  int64_t den = 1;
  bool operator==(const Rational& o) const { return num * o.den == o.num * den; }
};

struct ConsistencyEntry {
  std::string claim;
  std::string status;  // "ok", "violation", or "hypothesis not met"
};

struct DiagnosticReport {
  size_t factor_index = 0;

  bool ordinary = false;
  bool eisenstein_flag = false;

  // F_p-dimensions of the two socles, always available.
  size_t dim_fp_socle = 0;
  size_t dim_fp_socle_p = 0;
  // Dimensions over the residue field F; -1 when the F_p-dimension is not
  // divisible by the residue degree (recorded as a consistency finding).
  int64_t dim_F_socle = -1;
  int64_t dim_F_socle_p = -1;

  // r = (dim_F T[m] + 1)/2; claimed only on ordinary, unflagged factors.
  std::optional<Rational> multiplicity_r;

  bool gorenstein = false;

  // Computed only when the ordinarity hypothesis holds.
  std::optional<bool> tp_scalar_on_socle_p;   // criterion: f_p(T_p) kills T[m^(p)]
  std::optional<bool> weight_one_detected;    // criterion: T[m] strictly inside T[m^(p)]

  bool weight_one_signature = false;  // scan-level signal from the factor

  std::vector<ConsistencyEntry> consistency;
  std::vector<std::string> conclusions;

  bool has_violation() const {
    for (const auto& c : consistency)
      if (c.status == "violation") return true;
    return false;
  }
};

struct ScanResult {
  uint32_t p = 0;
  GroupSpec group{GroupKind::Gamma0, 1};
  size_t space_dim = 0;    // cuspidal dimension
  size_t algebra_dim = 0;  // dim_Fp of the full Hecke algebra
  int64_t sturm_bound = 0;
  bool h1_identification_guaranteed = true;
  std::vector<DiagnosticReport> reports;  // one per factor, factor order

  size_t violation_count() const {
    size_t n = 0;
    for (const auto& r : reports)
      for (const auto& c : r.consistency)
        if (c.status == "violation") ++n;
    return n;
  }
};

// r = (dim_F_socle + 1)/2 as an exact rational; dim_F_socle must be >= 1.
Rational multiplicity_from_socle(int64_t dim_F_socle);

// True iff f_p(T_p) annihilates T[m^(p)], with f_p the irreducible minimal
// polynomial of the residue image of T_p; false means T_p fails to act
// through its residue scalar system on the prime-to-p socle.
bool tp_scalar_test(const LocalFactor& f, const HeckeAlgebra& alg);

// Full per-factor report.  Non-ordinary factors receive a hypotheses-not-met
// report without the criteria battery; Eisenstein-flagged factors are marked
// hypotheses-unverified and carry no multiplicity claim.  The equivalence of
// the strict-socle and non-scalar criteria is recorded as a consistency
// entry, never assumed.  The block-dimension doubling claim presupposes the
// cohomology identification; when `h1_guaranteed` is false its failure is a
// hypothesis miss, not a violation.
DiagnosticReport theorem_battery(const LocalFactor& f, const HeckeAlgebra& alg,
                                 size_t factor_index, bool h1_guaranteed = true);

// Human-readable derived statements instantiated from the report.
std::vector<std::string> corollary_conclusions(const DiagnosticReport& rep);

// Reports for every factor plus algebra-level metadata.
ScanResult diagnose_all(const ModularSymbolSpace& sp, const HeckeAlgebra& alg,
                        const std::vector<LocalFactor>& factors);

}  // namespace heckelab

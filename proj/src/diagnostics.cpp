#include "heckelab/diagnostics.hpp"

#include <stdexcept>

namespace heckelab {

namespace {

// Insert a family of coordinate vectors into a span and test membership of
// another family.
bool span_contains_all(const std::vector<std::vector<uint32_t>>& big,
                       const std::vector<std::vector<uint32_t>>& small,
                       size_t width, uint32_t p) {
  VectorSpan span(p, width);
  for (const auto& v : big) span.insert(v);
  for (const auto& v : small)
    if (!span.contains(v)) return false;
  return true;
}

}  // namespace

Rational multiplicity_from_socle(int64_t dim_F_socle) {
  if (dim_F_socle < 1)
    throw std::invalid_argument("multiplicity_from_socle: socle dimension must be positive");
  int64_t num = dim_F_socle + 1;
  if (num % 2 == 0) return {num / 2, 1};
  return {num, 2};
}

bool tp_scalar_test(const LocalFactor& f, const HeckeAlgebra& alg) {
  FpMatrix fp_tp =
      eval_poly_at(f.gen_irreducible[alg.tp_index], f.gen_restricted[alg.tp_index]);
  for (const auto& s : f.socle_mp)
    if (!(factor_element(f, s) * fp_tp).is_zero()) return false;
  return true;
}

DiagnosticReport theorem_battery(const LocalFactor& f, const HeckeAlgebra& alg,
                                 size_t factor_index, bool h1_guaranteed) {
  DiagnosticReport rep;
  rep.factor_index = factor_index;
  rep.ordinary = f.ordinary;
  rep.eisenstein_flag = f.eisenstein_flag;
  rep.gorenstein = f.gorenstein;
  rep.weight_one_signature = f.weight_one_signature;
  rep.dim_fp_socle = f.socle_m.size();
  rep.dim_fp_socle_p = f.socle_mp.size();

  const size_t k = f.residue.degree;
  const uint32_t p = alg.p;

  // T[m] is a residue-field vector space, so divisibility is structural;
  // T[m^(p)] is only a module over T/m^(p)T, so it is checked.
  rep.dim_F_socle = static_cast<int64_t>(rep.dim_fp_socle / k);
  if (rep.dim_fp_socle_p % k == 0) {
    rep.dim_F_socle_p = static_cast<int64_t>(rep.dim_fp_socle_p / k);
    rep.consistency.push_back(
        {"prime-to-p socle dimension divisible by residue degree", "ok"});
  } else {
    rep.consistency.push_back(
        {"prime-to-p socle dimension divisible by residue degree", "violation"});
  }

  bool mono = rep.dim_fp_socle <= rep.dim_fp_socle_p &&
              span_contains_all(f.socle_mp, f.socle_m, f.dim_local, p);
  rep.consistency.push_back(
      {"socle of m contained in socle of m^(p)", mono ? "ok" : "violation"});

  if (!rep.ordinary) {
    rep.consistency.push_back({"ordinarity hypothesis", "hypothesis not met"});
    return rep;
  }

  // Criteria battery: strict socle growth against the scalar action of T_p.
  bool strict = rep.dim_fp_socle_p > rep.dim_fp_socle;
  bool scalar = tp_scalar_test(f, alg);
  rep.weight_one_detected = strict;
  rep.tp_scalar_on_socle_p = scalar;
  rep.consistency.push_back({"strict socle growth equals non-scalar T_p action",
                             (strict == !scalar) ? "ok" : "violation"});

  rep.consistency.push_back(
      {"cuspidal block dimension is twice the local algebra dimension",
       (2 * f.dim_local == f.block_dim) ? "ok"
                                        : (h1_guaranteed ? "violation" : "hypothesis not met")});

  if (rep.eisenstein_flag) {
    rep.consistency.push_back(
        {"residual irreducibility (heuristic Eisenstein filter)", "hypothesis not met"});
    rep.conclusions = corollary_conclusions(rep);
    return rep;
  }

  rep.consistency.push_back({"socle dimension over the residue field is odd",
                             (rep.dim_F_socle % 2 == 1) ? "ok" : "violation"});

  rep.multiplicity_r = multiplicity_from_socle(rep.dim_F_socle);
  bool r_is_one = rep.multiplicity_r->num == rep.multiplicity_r->den;
  rep.consistency.push_back(
      {"Gorenstein exactly when r = 1", (rep.gorenstein == r_is_one) ? "ok" : "violation"});

  rep.conclusions = corollary_conclusions(rep);
  return rep;
}

std::vector<std::string> corollary_conclusions(const DiagnosticReport& rep) {
  std::vector<std::string> out;
  if (!rep.ordinary) return out;
  if (rep.eisenstein_flag) {
    out.push_back(
        "Eisenstein-flagged eigenvalue system: irreducibility unverified, no "
        "multiplicity claim made.");
    return out;
  }
  if (!rep.multiplicity_r) return out;

  const Rational& r = *rep.multiplicity_r;
  bool r_above_one = r.num > r.den;
  if (r_above_one) {
    out.push_back("multiplicity r = " + std::to_string(r.num) +
                  (r.den == 1 ? "" : "/" + std::to_string(r.den)) +
                  " exceeds 1: derived conclusion, the residual representation has "
                  "weight one and Frobenius at p acts as a scalar (assumes "
                  "irreducibility; not computed here).");
    out.push_back(
        "derived conclusion: the prime-to-p kernel of the Jacobian carries the "
        "representation with multiplicity 2.");
  } else if (rep.weight_one_detected && *rep.weight_one_detected) {
    out.push_back(
        "strict socle growth with multiplicity 1: derived conclusion, a weight-one "
        "eigenform exists for this system and Frobenius at p is non-scalar (assumes "
        "irreducibility; not computed here).");
    out.push_back(
        "derived conclusion: the prime-to-p kernel of the Jacobian carries the "
        "representation with multiplicity 2 while the full kernel has multiplicity 1.");
  } else {
    out.push_back(
        "no weight-one signature at this factor: multiplicity 1 and Gorenstein "
        "duality hold.");
  }
  return out;
}

ScanResult diagnose_all(const ModularSymbolSpace& sp, const HeckeAlgebra& alg,
                        const std::vector<LocalFactor>& factors) {
  ScanResult res;
  res.p = alg.p;
  res.group = alg.group;
  res.space_dim = sp.cuspidal_dim();
  res.algebra_dim = alg.dim();
  res.sturm_bound = alg.sturm_bound;
  res.h1_identification_guaranteed = sp.h1_identification_guaranteed();
  res.reports.reserve(factors.size());
  for (size_t i = 0; i < factors.size(); ++i)
    res.reports.push_back(
        theorem_battery(factors[i], alg, i, res.h1_identification_guaranteed));
  return res;
}

}  // namespace heckelab

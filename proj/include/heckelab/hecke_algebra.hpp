#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "heckelab/matrix.hpp"
#include "heckelab/modsym.hpp"
#include "heckelab/poly.hpp"

// The mod-p Hecke algebra acting on the cuspidal subspace of weight-2
// modular symbols, generated by T_l for primes l up to the Sturm bound
// together with T_p and, for Gamma_1, the diamond operators.  The algebra
// splits into a product of local Artinian factors; each factor carries its
// maximal ideal, the prime-to-p subalgebra, the two socles compared by the
// weight-one criterion, and its residue field with the Hecke eigenvalue
// system written in a power basis.

namespace heckelab {

struct OperatorLabel {
  char kind;   // 'T' for Hecke, 'D' for diamond
  int64_t n;
  std::string str() const;
  bool operator==(const OperatorLabel& o) const { return kind == o.kind && n == o.n; }
};

struct HeckeAlgebra {
  uint32_t p = 0;
  GroupSpec group{GroupKind::Gamma0, 1};
  int64_t sturm_bound = 0;
  size_t space_dim = 0;  // dimension of the cuspidal space the algebra acts on

  std::vector<OperatorLabel> labels;  // generator labels, T_l ascending then diamonds
  std::vector<FpMatrix> generators;   // matching matrices on the cuspidal space
  size_t tp_index = 0;                // position of T_p in the lists above
  std::vector<size_t> prime_to_p;     // generator indices spanning the prime-to-p part

  std::vector<FpMatrix> basis;          // F_p-basis of the full algebra
  std::vector<FpMatrix> basis_prime_to_p;  // F_p-basis of the subalgebra without T_p

  size_t dim() const { return basis.size(); }
};

// The default generation bound is the space's own Sturm bound; an override
// below it trades completeness for speed and is recorded in the result.
HeckeAlgebra generate_algebra(const ModularSymbolSpace& sp,
                              std::optional<int64_t> sturm_override = std::nullopt);

// Residue field T/m presented as F_p[x]/(modulus) with every generator's
// eigenvalue written in the power basis of a primitive element.
struct ResidueFieldData {
  FpPoly modulus;  // monic irreducible of degree `degree`
  size_t degree = 1;
  std::vector<std::vector<uint32_t>> eigenvalues;  // per generator, length `degree`
};

struct LocalFactor {
  FpMatrix subspace;  // columns: basis of the invariant block inside the cuspidal space
  size_t block_dim = 0;  // number of columns of `subspace`

  std::vector<FpMatrix> gen_restricted;  // generators restricted to the block
  std::vector<FpPoly> gen_irreducible;   // unique irreducible factor of each min poly

  std::vector<FpMatrix> algebra_basis;  // F_p-basis of the local algebra T_m
  size_t dim_local = 0;                 // = algebra_basis.size()

  // Coordinate vectors relative to algebra_basis.
  std::vector<std::vector<uint32_t>> maximal_ideal;
  std::vector<std::vector<uint32_t>> prime_to_p_sub;  // image of the prime-to-p subalgebra
  std::vector<std::vector<uint32_t>> ideal_mp;        // maximal_ideal meet prime_to_p_sub
  std::vector<std::vector<uint32_t>> socle_m;         // annihilator of the maximal ideal
  std::vector<std::vector<uint32_t>> socle_mp;        // annihilator of ideal_mp

  ResidueFieldData residue;

  bool ordinary = false;    // image of T_p in the residue field is nonzero
  bool gorenstein = false;  // socle_m is one-dimensional over the residue field
  // f_p(T_p) fails to annihilate socle_mp; equivalent to the strict socle
  // inclusion whenever the factor is ordinary.
  bool tp_socle_obstruction = false;
  // Ordinary, not Eisenstein-flagged, and either socle_m sits strictly inside
  // socle_mp or the factor is not Gorenstein.
  bool weight_one_signature = false;
  bool eisenstein_flag = false;       // eigenvalue system matches a_l = chi(l)(1 + l)

  int64_t r_num = 0;  // r = (dim_F T_m[m] + 1) / 2 over the residue field F
  int64_t r_den = 1;
};

std::vector<LocalFactor> local_factors(const ModularSymbolSpace& sp, const HeckeAlgebra& alg);

// Element of the local algebra from coordinates relative to algebra_basis.
FpMatrix factor_element(const LocalFactor& f, const std::vector<uint32_t>& coords);

}  // namespace heckelab

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "heckelab/matrix.hpp"

// Weight-2 Manin symbols over F_p for Gamma_0(N) and Gamma_1(N), following
// Cremona (Algorithms for Modular Elliptic Curves, ch. 2) and Merel
// (Universal Fourier expansions of modular forms).  Symbols are classes of
// bottom rows (c, d) of SL_2(Z) matrices; the two-term and three-term
// relations are divided out by row reduction, the boundary map to cusp
// classes carves out the cuspidal subspace, and Hecke operators act through
// Heilbronn-type matrix families.

namespace heckelab {

enum class GroupKind { Gamma0, Gamma1 };

struct GroupSpec {
  GroupKind kind;
  int64_t level;
};

std::string group_name(const GroupSpec& g);  // e.g. "gamma0_11"

struct SpaceInvariants {
  int64_t sl2_index;
  int64_t psl2_index;
  int64_t nu2;
  int64_t nu3;
  int64_t ncusps;
  int64_t genus;
  int64_t sturm_bound;  // weight-2 generation bound ceil(sl2_index / 6)
};

SpaceInvariants group_invariants(const GroupSpec& g);

struct IntMat22 {
  int64_t a, b, c, d;
};

// Cremona's continued-fraction family for a prime l (Cremona ch. 2.4).
std::vector<IntMat22> heilbronn_cremona(int64_t l);
// Merel's set X(n), valid for every n >= 1 (Merel, p. 87).
std::vector<IntMat22> heilbronn_merel(int64_t n);

// Lift (c, d) with gcd(c, d, N) = 1 to a matrix in SL_2(Z) whose bottom row
// is congruent to (c, d) mod N.
IntMat22 lift_to_sl2(int64_t c, int64_t d, int64_t N);

// Cusp p/q in lowest terms with q >= 0; infinity is (1, 0).
struct Cusp {
  int64_t num, den;
};

Cusp reduce_cusp(int64_t a, int64_t c);
bool cusps_equivalent(const GroupSpec& g, const Cusp& c1, const Cusp& c2);

class ModularSymbolSpace {
 public:
  uint32_t p() const { return p_; }
  const GroupSpec& group() const { return group_; }
  const SpaceInvariants& invariants() const { return inv_; }
  bool h1_identification_guaranteed() const { return h1_ok_; }

  size_t symbol_count() const { return symbols_.size(); }
  size_t quotient_dim() const { return projection_.rows(); }
  size_t cuspidal_dim() const { return cuspidal_basis_.cols(); }
  size_t cusp_class_count() const { return cusp_classes_.size(); }

  const std::vector<std::pair<int64_t, int64_t>>& symbols() const { return symbols_; }
  const FpMatrix& projection() const { return projection_; }  // dim x S
  const FpMatrix& lift() const { return lift_; }              // S x dim
  const FpMatrix& boundary_on_quotient() const { return boundary_q_; }
  const FpMatrix& cuspidal_basis() const { return cuspidal_basis_; }

  // Index of the canonical symbol for (c, d), or nullopt if gcd(c, d, N) > 1.
  std::optional<size_t> symbol_index(int64_t c, int64_t d) const;

  // Hecke operator T_n (U_l-powers at primes dividing N, Heilbronn action at
  // the rest, assembled multiplicatively) on the cuspidal subspace.
  FpMatrix hecke_matrix(int64_t n) const;
  // Same operator before restriction, on the full quotient.
  FpMatrix hecke_on_quotient(int64_t n) const;
  // Diamond operator; identity for Gamma_0.  Requires gcd(d, N) = 1.
  FpMatrix diamond_matrix(int64_t d) const;
  FpMatrix diamond_on_quotient(int64_t d) const;

  // Structural checks used by the test suite: the Hecke action and the
  // boundary map must kill the relation subspace.
  bool hecke_descends(int64_t l) const;
  bool boundary_kills_relations() const;

 private:
  friend ModularSymbolSpace build_space(uint32_t p, const GroupSpec& g);
  ModularSymbolSpace() = default;

  std::optional<std::pair<int64_t, int64_t>> normalize_pair(int64_t c, int64_t d) const;
  FpMatrix hecke_prime_on_symbols(int64_t l) const;   // S x S
  FpMatrix diamond_on_symbols(int64_t d) const;       // S x S
  FpMatrix to_quotient(const FpMatrix& ambient) const;
  FpMatrix quotient_hecke_prime_power(int64_t l, int e) const;

  uint32_t p_ = 0;
  GroupSpec group_{GroupKind::Gamma0, 1};
  SpaceInvariants inv_{};
  bool h1_ok_ = true;

  std::vector<std::pair<int64_t, int64_t>> symbols_;
  std::unordered_map<uint64_t, size_t> index_;
  std::vector<std::vector<uint32_t>> relations_;  // rows, length S
  FpMatrix projection_;      // dim x S
  FpMatrix lift_;            // S x dim
  std::vector<Cusp> cusp_classes_;
  FpMatrix boundary_q_;      // classes x dim
  FpMatrix cuspidal_basis_;  // dim x cusp_dim
};

ModularSymbolSpace build_space(uint32_t p, const GroupSpec& g);

// Action of an explicit integer-matrix family on the quotient, applied by
// the Manin-symbol convention (terms leaving the symbol set are dropped).
// Lets callers compare alternative Heilbronn data for the same operator.
FpMatrix family_action_on_quotient(const ModularSymbolSpace& sp,
                                   const std::vector<IntMat22>& family);

}  // namespace heckelab

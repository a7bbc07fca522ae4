#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "heckelab/finite_field.hpp"
#include "heckelab/matrix.hpp"
#include "heckelab/poly.hpp"

// Linear-algebra laboratory for p-annihilated Dieudonne modules in the
// connected-with-etale-dual regime: V invertible, F = 0.  Provides the
// conjugacy certificate between V and the Frobenius on the point group, the
// truncated Witt-covector kernel law, a unit-deformation family over Z/p^n
// separating that regime from pM != 0, and the explicit Frobenius matrix on
// points over the splitting field.

namespace heckelab {

struct DieudonneModule {
  uint32_t p = 0;
  size_t n = 0;
  FpMatrix V;
  FpMatrix F;
};

// F := 0; V must be square and invertible.
DieudonneModule connected_etale_dual_module(const FpMatrix& V);

// Certificate that V and the Frobenius representative (the transpose) are
// conjugate over F_p, by equality of rational canonical forms.
struct ConjugacyCertificate {
  FpMatrix frobenius_rep;            // transpose of the input
  std::vector<FpPoly> invariants_v;  // invariant factors of the input
  std::vector<FpPoly> invariants_f;  // invariant factors of the transpose
  bool conjugate = false;
  size_t dim = 0;
};
ConjugacyCertificate transpose_conjugacy_certificate(const FpMatrix& A);

// Elements a + b*pi of O/pi^2 O over F_q, with pi^2 = 0 and pi^(p-1) = -p.
// For p >= 3 the quotient is F_q[pi]/(pi^2); for p = 2 addition carries a
// Teichmueller correction term (ac)^(1/p) into the pi-component.
class TruncatedWitt {
 public:
  explicit TruncatedWitt(FieldPtr field);

  struct Elt {
    FqElement a, b;  // a + b*pi
  };

  Elt make(FqElement a, FqElement b) const { return {std::move(a), std::move(b)}; }
  Elt teichmuller(const FqElement& a) const;
  Elt add(const Elt& x, const Elt& y) const;
  Elt neg(const Elt& x) const;
  Elt sub(const Elt& x, const Elt& y) const;
  Elt mul(const Elt& x, const Elt& y) const;
  Elt times_pi(const Elt& x) const;
  bool is_zero(const Elt& x) const { return x.a.is_zero() && x.b.is_zero(); }

  const FieldPtr& field() const { return field_; }

 private:
  FieldPtr field_;
  uint64_t q_;  // p^degree
};

struct WittKernelReport {
  uint32_t p = 0;
  int k = 1;
  uint64_t q = 0;
  uint64_t pairs_checked = 0;
  uint64_t kernel_count = 0;
  // Kernel pairs are exactly { (y0, y0^(1/p)) }, both inclusions checked.
  bool graph_of_inverse_frobenius = false;
};

// Exhaustively evaluates pi * (lift(y0) - lift(y_minus1)^p) over all pairs in
// F_q^2 and compares the vanishing locus with the inverse-Frobenius graph.
// q = p^k must not exceed 256.
WittKernelReport witt_kernel_check(uint32_t p, int k);

// Module Z/p^n with V acting by a unit congruent to 1 mod p and F = p V^(-1).
struct HondaExample {
  uint32_t p = 0;
  uint32_t n = 2;
  uint64_t modulus = 0;  // p^n
  uint64_t v_unit = 1;
  uint64_t f_elem = 0;  // p * v_unit^(-1) mod p^n
};

struct HondaReport {
  HondaExample data;
  bool f_generates_p_times_module = false;  // F M = pM, so M/FM has p elements
  bool v_trivial_on_quotient = false;       // V = 1 on M/FM
  bool v_nontrivial_on_module = false;      // V != 1 on M itself
  bool degenerate = false;                  // v_unit = 1 in Z/p^n: nothing separated
};

// v_unit must be congruent to 1 mod p; n >= 2.
HondaReport honda_unit_example(uint32_t p, uint32_t n, uint64_t v_unit);

// Frobenius matrix on the point group Hom(M, closure), computed over the
// splitting field F_{p^d} with d the multiplicative order of A.  The
// evaluation matrix C of a solution basis of the semilinear system
// sigma(c) = c A^(-1) is returned along with B, and the exact identity
// transpose(A) = C^(-1) B C over F_{p^d} is re-verified.
struct FrobeniusPointData {
  FpMatrix B;  // Frobenius matrix, entries in F_p
  FqMatrix C;
  FpPoly field_modulus;
  int field_degree = 1;  // d = order of A in GL_n(F_p)
  bool verified = false;
};
FrobeniusPointData frobenius_on_points(const FpMatrix& A);

}  // namespace heckelab

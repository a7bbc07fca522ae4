#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

// Dense univariate polynomials over F_p, coefficients ascending (coeff[i]
// multiplies x^i) and always trimmed so that the leading coefficient is
// nonzero.  The zero polynomial has an empty coefficient vector and
// degree() == -1.

namespace heckelab {

class FpPoly {
 public:
  FpPoly() : p_(0) {}
  explicit FpPoly(uint32_t p) : p_(p) {}
  FpPoly(uint32_t p, std::vector<uint32_t> coeffs);

  static FpPoly zero(uint32_t p) { return FpPoly(p); }
  static FpPoly one(uint32_t p) { return FpPoly(p, {1}); }
  static FpPoly x(uint32_t p) { return FpPoly(p, {0, 1}); }
  // c0 + c1*x + ... given as signed integers.
  static FpPoly from_ints(uint32_t p, const std::vector<int64_t>& cs);

  uint32_t modulus() const { return p_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_one() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }
  uint32_t coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(coeffs_.size())) ? coeffs_[static_cast<size_t>(i)] : 0;
  }
  uint32_t leading() const { return coeffs_.empty() ? 0 : coeffs_.back(); }
  const std::vector<uint32_t>& coeffs() const { return coeffs_; }

  FpPoly operator+(const FpPoly& o) const;
  FpPoly operator-(const FpPoly& o) const;
  FpPoly operator*(const FpPoly& o) const;
  FpPoly scaled(uint32_t c) const;
  bool operator==(const FpPoly& o) const { return p_ == o.p_ && coeffs_ == o.coeffs_; }
  bool operator!=(const FpPoly& o) const { return !(*this == o); }

  // Euclidean division by a nonzero divisor: returns (quotient, remainder).
  std::pair<FpPoly, FpPoly> divmod(const FpPoly& d) const;
  FpPoly operator%(const FpPoly& d) const { return divmod(d).second; }
  FpPoly operator/(const FpPoly& d) const { return divmod(d).first; }

  FpPoly monic() const;
  FpPoly derivative() const;
  uint32_t eval(uint32_t x) const;

  std::string to_string() const;  // e.g. "x^2 + 3*x + 1"

 private:
  void trim();
  uint32_t p_;
  std::vector<uint32_t> coeffs_;
};

FpPoly poly_gcd(FpPoly a, FpPoly b);                         // monic gcd
FpPoly poly_powmod(FpPoly base, uint64_t e, const FpPoly& m);  // base^e mod m

// Full factorization into monic irreducibles: squarefree split, then
// distinct-degree, then Cantor-Zassenhaus equal-degree splitting (with the
// additive trace map in characteristic 2).  Deterministically seeded, so
// repeated runs return factors in the same order after the final sort.
// Returns (irreducible, multiplicity) with factors sorted by degree then
// lexicographically by coefficients.
std::vector<std::pair<FpPoly, int>> factorize_poly(const FpPoly& f);

bool is_irreducible(const FpPoly& f);

// Smallest (in the same deterministic order used by factorize_poly) monic
// irreducible of degree d over F_p, found by seeded search.
FpPoly find_irreducible(uint32_t p, int d);

}  // namespace heckelab

#pragma once

#include <vector>

#include "heckelab/matrix.hpp"
#include "heckelab/poly.hpp"

// Rational canonical form data via the Smith normal form of xI - A over
// F_p[x].  Invariant factors are monic, nonconstant, and listed in
// divisibility order d_1 | d_2 | ... | d_k with prod d_i = char poly.

namespace heckelab {

std::vector<FpPoly> invariant_factors(const FpMatrix& a);

// Block-diagonal companion form of the invariant factors.
FpMatrix rational_canonical_form(const FpMatrix& a);

// Two square matrices over the same F_p are conjugate iff their invariant
// factors agree.
bool are_conjugate(const FpMatrix& a, const FpMatrix& b);

}  // namespace heckelab

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "heckelab/poly.hpp"

// F_{p^d} presented as F_p[x]/(modulus) with a monic irreducible modulus.
// Elements are coefficient vectors of length d; the shared field object
// carries the modulus so elements stay cheap.

namespace heckelab {

class FiniteField;
using FieldPtr = std::shared_ptr<const FiniteField>;

class FqElement {
 public:
  FqElement() = default;
  FqElement(FieldPtr field, std::vector<uint32_t> coeffs);

  const std::vector<uint32_t>& coeffs() const { return coeffs_; }
  const FieldPtr& field() const { return field_; }
  bool is_zero() const;
  bool in_prime_field() const;  // all coefficients above degree 0 vanish

  FqElement operator+(const FqElement& o) const;
  FqElement operator-(const FqElement& o) const;
  FqElement operator*(const FqElement& o) const;
  FqElement inverse() const;
  FqElement pow(uint64_t e) const;
  FqElement frobenius() const;  // x -> x^p
  bool operator==(const FqElement& o) const;
  bool operator!=(const FqElement& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  FieldPtr field_;
  std::vector<uint32_t> coeffs_;
};

class FiniteField : public std::enable_shared_from_this<FiniteField> {
 public:
  // Verifies the modulus is monic irreducible of degree >= 1.
  static FieldPtr make(uint32_t p, const FpPoly& modulus);
  // Uses the deterministic irreducible of degree d.
  static FieldPtr make(uint32_t p, int d);

  uint32_t p() const { return p_; }
  int degree() const { return modulus_.degree(); }
  const FpPoly& modulus() const { return modulus_; }

  FqElement zero() const;
  FqElement one() const;
  FqElement from_prime_field(uint32_t a) const;
  FqElement from_coeffs(std::vector<uint32_t> cs) const;
  FqElement gen() const;  // the class of x

 private:
  FiniteField(uint32_t p, FpPoly modulus) : p_(p), modulus_(std::move(modulus)) {}
  uint32_t p_;
  FpPoly modulus_;
};

// Dense matrices over a shared F_q, just enough for conjugation checks:
// multiply, invert, compare.
class FqMatrix {
 public:
  FqMatrix(FieldPtr field, size_t rows, size_t cols);
  static FqMatrix identity(FieldPtr field, size_t n);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  FqElement& at(size_t i, size_t j) { return data_[i * cols_ + j]; }
  const FqElement& at(size_t i, size_t j) const { return data_[i * cols_ + j]; }

  FqMatrix operator*(const FqMatrix& o) const;
  bool operator==(const FqMatrix& o) const;
  std::optional<FqMatrix> inverse() const;

 private:
  FieldPtr field_;
  size_t rows_, cols_;
  std::vector<FqElement> data_;
};

}  // namespace heckelab

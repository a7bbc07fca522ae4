#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "heckelab/poly.hpp"

// Dense matrices over F_p.  Vectors are column vectors and operators act on
// the left; a subspace is handed around as a matrix whose columns form a
// basis.  Entries live in [0, p) as uint32_t with uint64_t accumulation.

namespace heckelab {

class FpMatrix {
 public:
  FpMatrix() : p_(0), rows_(0), cols_(0) {}
  FpMatrix(uint32_t p, size_t rows, size_t cols)
      : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static FpMatrix identity(uint32_t p, size_t n);
  static FpMatrix from_ints(uint32_t p, const std::vector<std::vector<int64_t>>& a);
  static FpMatrix companion(const FpPoly& f);  // companion matrix of monic f

  uint32_t modulus() const { return p_; }
  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  uint32_t& at(size_t i, size_t j) { return data_[i * cols_ + j]; }
  uint32_t at(size_t i, size_t j) const { return data_[i * cols_ + j]; }

  bool operator==(const FpMatrix& o) const {
    return p_ == o.p_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool is_zero() const;
  bool is_scalar() const;  // lambda * I for some lambda (square only)

  FpMatrix operator+(const FpMatrix& o) const;
  FpMatrix operator-(const FpMatrix& o) const;
  FpMatrix operator*(const FpMatrix& o) const;
  FpMatrix scaled(uint32_t c) const;
  FpMatrix transpose() const;
  FpMatrix pow(uint64_t e) const;
  std::vector<uint32_t> apply(const std::vector<uint32_t>& v) const;  // A * v

  uint32_t trace() const;

  // Columns i..j-1 as a new matrix.
  FpMatrix column_slice(size_t i, size_t j) const;
  // Horizontal concatenation [A | B].
  static FpMatrix hconcat(const FpMatrix& a, const FpMatrix& b);

  std::vector<uint32_t> flatten() const { return data_; }  // row-major
  static FpMatrix from_flat(uint32_t p, size_t rows, size_t cols, const std::vector<uint32_t>& v);

 private:
  uint32_t p_;
  size_t rows_, cols_;
  std::vector<uint32_t> data_;
};

struct RrefResult {
  FpMatrix reduced;
  std::vector<size_t> pivot_cols;
  size_t rank;
};

RrefResult rref(FpMatrix a);

// Columns span the right kernel {v : A v = 0}; empty kernel gives a
// cols x 0 matrix.
FpMatrix kernel_basis(const FpMatrix& a);

size_t rank(const FpMatrix& a);

// Solve A X = B column by column; nullopt if any column is inconsistent.
// Free variables are set to zero.
std::optional<FpMatrix> solve_columns(const FpMatrix& a, const FpMatrix& b);

std::optional<FpMatrix> inverse(const FpMatrix& a);

// Characteristic polynomial via Hessenberg reduction (Cohen, Algorithm
// 2.2.9); degree n, monic.
FpPoly char_poly(const FpMatrix& a);

// Minimal polynomial as the lcm of Krylov relative minimal polynomials.
FpPoly min_poly(const FpMatrix& a);

// Evaluate f at the matrix argument.
FpMatrix eval_poly_at(const FpPoly& f, const FpMatrix& a);

// Matrix of A restricted to the span of the columns of basis, which must be
// A-invariant (throws otherwise).
FpMatrix restrict_to_basis(const FpMatrix& a, const FpMatrix& basis);

// Basis of the intersection of two column spaces; both arguments must have
// independent columns.
FpMatrix column_space_intersection(const FpMatrix& a, const FpMatrix& b);

// Incremental row-echelon span with linear-combination tracking.  insert()
// answers whether the vector enlarged the span; coordinates() rewrites a
// vector in terms of the successfully inserted ones.
class VectorSpan {
 public:
  VectorSpan(uint32_t p, size_t width) : p_(p), width_(width) {}

  bool insert(const std::vector<uint32_t>& v);
  bool contains(const std::vector<uint32_t>& v) const;
  // Coefficients x with v = sum x_k * inserted_k, if v lies in the span.
  std::optional<std::vector<uint32_t>> coordinates(const std::vector<uint32_t>& v) const;

  size_t dim() const { return rows_.size(); }
  size_t width() const { return width_; }
  // Basis as originally inserted (not echelonized), as matrix columns.
  FpMatrix inserted_as_columns() const;

 private:
  uint32_t p_;
  size_t width_;
  std::vector<std::vector<uint32_t>> rows_;    // echelonized
  std::vector<std::vector<uint32_t>> combos_;  // rows_[i] = sum combos_[i][k] * inserted_[k]
  std::vector<size_t> pivots_;
  std::vector<std::vector<uint32_t>> inserted_;
};

}  // namespace heckelab

#include "heckelab/matrix.hpp"

#include <stdexcept>

#include "heckelab/fp.hpp"

namespace heckelab {

FpMatrix FpMatrix::identity(uint32_t p, size_t n) {
  FpMatrix m(p, n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = 1 % p;
  return m;
}

FpMatrix FpMatrix::from_ints(uint32_t p, const std::vector<std::vector<int64_t>>& a) {
  size_t r = a.size(), c = r ? a[0].size() : 0;
  FpMatrix m(p, r, c);
  for (size_t i = 0; i < r; ++i) {
    if (a[i].size() != c) throw std::invalid_argument("from_ints: ragged rows");
    for (size_t j = 0; j < c; ++j) m.at(i, j) = reduce_int(a[i][j], p);
  }
  return m;
}

FpMatrix FpMatrix::companion(const FpPoly& f) {
  if (f.degree() < 1 || f.leading() != 1)
    throw std::invalid_argument("companion: need monic of degree >= 1");
  uint32_t p = f.modulus();
  auto n = static_cast<size_t>(f.degree());
  FpMatrix m(p, n, n);
  for (size_t i = 1; i < n; ++i) m.at(i, i - 1) = 1;
  for (size_t i = 0; i < n; ++i) m.at(i, n - 1) = negmod(f.coeff(static_cast<int>(i)), p);
  return m;
}

bool FpMatrix::is_zero() const {
  for (uint32_t x : data_)
    if (x) return false;
  return true;
}

bool FpMatrix::is_scalar() const {
  if (rows_ != cols_) return false;
  uint32_t lambda = rows_ ? at(0, 0) : 0;
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j)
      if (at(i, j) != (i == j ? lambda : 0)) return false;
  return true;
}

FpMatrix FpMatrix::operator+(const FpMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix +: shape mismatch");
  FpMatrix m(p_, rows_, cols_);
  for (size_t k = 0; k < data_.size(); ++k) m.data_[k] = addmod(data_[k], o.data_[k], p_);
  return m;
}

FpMatrix FpMatrix::operator-(const FpMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix -: shape mismatch");
  FpMatrix m(p_, rows_, cols_);
  for (size_t k = 0; k < data_.size(); ++k) m.data_[k] = submod(data_[k], o.data_[k], p_);
  return m;
}

FpMatrix FpMatrix::operator*(const FpMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix *: shape mismatch");
  FpMatrix m(p_, rows_, o.cols_);
  // Accumulate in uint64 and reduce lazily; safe while cols * (p-1)^2 < 2^64,
  // enforced by reducing every 2^22 terms for p < 2^21 and per-term above.
  const uint64_t pp = p_;
  bool small = pp < (1u << 21);
  for (size_t i = 0; i < rows_; ++i) {
    for (size_t j = 0; j < o.cols_; ++j) {
      uint64_t acc = 0;
      if (small) {
        for (size_t k = 0; k < cols_; ++k) acc += static_cast<uint64_t>(at(i, k)) * o.at(k, j);
      } else {
        for (size_t k = 0; k < cols_; ++k) {
          acc += (static_cast<uint64_t>(at(i, k)) * o.at(k, j)) % pp;
        }
      }
      m.at(i, j) = static_cast<uint32_t>(acc % pp);
    }
  }
  return m;
}

FpMatrix FpMatrix::scaled(uint32_t c) const {
  FpMatrix m(p_, rows_, cols_);
  c %= p_;
  for (size_t k = 0; k < data_.size(); ++k) m.data_[k] = mulmod(data_[k], c, p_);
  return m;
}

FpMatrix FpMatrix::transpose() const {
  FpMatrix m(p_, cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
  return m;
}

FpMatrix FpMatrix::pow(uint64_t e) const {
  if (rows_ != cols_) throw std::invalid_argument("matrix pow: need square");
  FpMatrix r = identity(p_, rows_);
  FpMatrix b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

std::vector<uint32_t> FpMatrix::apply(const std::vector<uint32_t>& v) const {
  if (v.size() != cols_) throw std::invalid_argument("matrix apply: shape mismatch");
  std::vector<uint32_t> out(rows_, 0);
  for (size_t i = 0; i < rows_; ++i) {
    uint64_t acc = 0;
    for (size_t k = 0; k < cols_; ++k) acc = (acc + static_cast<uint64_t>(at(i, k)) * v[k]) % p_;
    out[i] = static_cast<uint32_t>(acc);
  }
  return out;
}

uint32_t FpMatrix::trace() const {
  if (rows_ != cols_) throw std::invalid_argument("trace: need square");
  uint32_t t = 0;
  for (size_t i = 0; i < rows_; ++i) t = addmod(t, at(i, i), p_);
  return t;
}

FpMatrix FpMatrix::column_slice(size_t i, size_t j) const {
  if (i > j || j > cols_) throw std::invalid_argument("column_slice: bad range");
  FpMatrix m(p_, rows_, j - i);
  for (size_t r = 0; r < rows_; ++r)
    for (size_t c = i; c < j; ++c) m.at(r, c - i) = at(r, c);
  return m;
}

FpMatrix FpMatrix::hconcat(const FpMatrix& a, const FpMatrix& b) {
  if (a.rows_ != b.rows_ || a.p_ != b.p_) throw std::invalid_argument("hconcat: shape mismatch");
  FpMatrix m(a.p_, a.rows_, a.cols_ + b.cols_);
  for (size_t i = 0; i < a.rows_; ++i) {
    for (size_t j = 0; j < a.cols_; ++j) m.at(i, j) = a.at(i, j);
    for (size_t j = 0; j < b.cols_; ++j) m.at(i, a.cols_ + j) = b.at(i, j);
  }
  return m;
}

FpMatrix FpMatrix::from_flat(uint32_t p, size_t rows, size_t cols, const std::vector<uint32_t>& v) {
  if (v.size() != rows * cols) throw std::invalid_argument("from_flat: size mismatch");
  FpMatrix m(p, rows, cols);
  m.data_ = v;
  for (auto& x : m.data_) x %= p;
  return m;
}

RrefResult rref(FpMatrix a) {
  uint32_t p = a.modulus();
  size_t r = 0;
  std::vector<size_t> pivots;
  for (size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    size_t sel = r;
    while (sel < a.rows() && a.at(sel, c) == 0) ++sel;
    if (sel == a.rows()) continue;
    if (sel != r)
      for (size_t j = 0; j < a.cols(); ++j) std::swap(a.at(sel, j), a.at(r, j));
    uint32_t inv = invmod(a.at(r, c), p);
    for (size_t j = c; j < a.cols(); ++j) a.at(r, j) = mulmod(a.at(r, j), inv, p);
    for (size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a.at(i, c) == 0) continue;
      uint32_t f = a.at(i, c);
      for (size_t j = c; j < a.cols(); ++j)
        a.at(i, j) = submod(a.at(i, j), mulmod(f, a.at(r, j), p), p);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(a), std::move(pivots), r};
}

FpMatrix kernel_basis(const FpMatrix& a) {
  uint32_t p = a.modulus();
  RrefResult rr = rref(a);
  std::vector<size_t> free_cols;
  {
    size_t k = 0;
    for (size_t c = 0; c < a.cols(); ++c) {
      if (k < rr.pivot_cols.size() && rr.pivot_cols[k] == c)
        ++k;
      else
        free_cols.push_back(c);
    }
  }
  FpMatrix ker(p, a.cols(), free_cols.size());
  for (size_t t = 0; t < free_cols.size(); ++t) {
    size_t fc = free_cols[t];
    ker.at(fc, t) = 1;
    for (size_t i = 0; i < rr.rank; ++i)
      ker.at(rr.pivot_cols[i], t) = negmod(rr.reduced.at(i, fc), p);
  }
  return ker;
}

size_t rank(const FpMatrix& a) { return rref(a).rank; }

std::optional<FpMatrix> solve_columns(const FpMatrix& a, const FpMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve_columns: shape mismatch");
  uint32_t p = a.modulus();
  RrefResult rr = rref(FpMatrix::hconcat(a, b));
  for (size_t c : rr.pivot_cols)
    if (c >= a.cols()) return std::nullopt;  // pivot in the augmented block
  FpMatrix x(p, a.cols(), b.cols());
  for (size_t i = 0; i < rr.rank; ++i)
    for (size_t j = 0; j < b.cols(); ++j)
      x.at(rr.pivot_cols[i], j) = rr.reduced.at(i, a.cols() + j);
  return x;
}

std::optional<FpMatrix> inverse(const FpMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse: need square");
  auto x = solve_columns(a, FpMatrix::identity(a.modulus(), a.rows()));
  if (!x) return std::nullopt;
  // solve_columns zero-fills free variables, so verify honestly.
  if (!(a * *x == FpMatrix::identity(a.modulus(), a.rows()))) return std::nullopt;
  return x;
}

FpPoly char_poly(const FpMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("char_poly: need square");
  uint32_t p = a.modulus();
  size_t n = a.rows();
  if (n == 0) return FpPoly::one(p);
  FpMatrix h = a;
  // Hessenberg reduction by similarity transforms.
  for (size_t m = 1; m + 1 < n; ++m) {
    size_t sel = m;
    while (sel < n && h.at(sel, m - 1) == 0) ++sel;
    if (sel == n) continue;
    if (sel != m) {
      for (size_t j = 0; j < n; ++j) std::swap(h.at(sel, j), h.at(m, j));
      for (size_t i = 0; i < n; ++i) std::swap(h.at(i, sel), h.at(i, m));
    }
    uint32_t tinv = invmod(h.at(m, m - 1), p);
    for (size_t i = m + 1; i < n; ++i) {
      if (h.at(i, m - 1) == 0) continue;
      uint32_t u = mulmod(h.at(i, m - 1), tinv, p);
      for (size_t j = 0; j < n; ++j) h.at(i, j) = submod(h.at(i, j), mulmod(u, h.at(m, j), p), p);
      for (size_t j = 0; j < n; ++j) h.at(j, m) = addmod(h.at(j, m), mulmod(u, h.at(j, i), p), p);
    }
  }
  // p_m(x) = (x - h[m][m]) p_{m-1}(x) - sum_i h[i][m] (prod_j h[j+1][j]) p_{i-1}(x),
  // indices 1-based over the Hessenberg matrix.
  std::vector<FpPoly> ps;
  ps.push_back(FpPoly::one(p));
  for (size_t m = 1; m <= n; ++m) {
    FpPoly t = (FpPoly::x(p) - FpPoly(p, {h.at(m - 1, m - 1)})) * ps[m - 1];
    uint32_t prod = 1;
    for (size_t i = m - 1; i >= 1; --i) {
      prod = mulmod(prod, h.at(i, i - 1), p);  // h[i+1][i] 1-based, descending
      uint32_t c = mulmod(h.at(i - 1, m - 1), prod, p);
      if (c) t = t - ps[i - 1].scaled(c);
    }
    ps.push_back(std::move(t));
  }
  return ps[n];
}

FpPoly min_poly(const FpMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("min_poly: need square");
  uint32_t p = a.modulus();
  size_t n = a.rows();
  FpPoly acc = FpPoly::one(p);
  for (size_t k = 0; k < n; ++k) {
    if (static_cast<size_t>(acc.degree()) == n) break;
    // Relative minimal polynomial of e_k under a.
    VectorSpan span(p, n);
    std::vector<uint32_t> v(n, 0);
    v[k] = 1;
    while (span.insert(v)) v = a.apply(v);
    auto coords = span.coordinates(v);
    // v = sum c_j a^j e_k with d = span.dim(), so x^d - sum c_j x^j kills e_k.
    std::vector<uint32_t> cs(span.dim() + 1, 0);
    for (size_t j = 0; j < span.dim(); ++j) cs[j] = negmod((*coords)[j], p);
    cs[span.dim()] = 1;
    FpPoly rel(p, std::move(cs));
    acc = (acc * rel) / poly_gcd(acc, rel);  // lcm
  }
  return acc.monic();
}

FpMatrix eval_poly_at(const FpPoly& f, const FpMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("eval_poly_at: need square");
  uint32_t p = a.modulus();
  FpMatrix acc(p, a.rows(), a.rows());
  for (int i = f.degree(); i >= 0; --i) {
    acc = acc * a;
    uint32_t c = f.coeff(i);
    for (size_t d = 0; d < a.rows(); ++d) acc.at(d, d) = addmod(acc.at(d, d), c, p);
  }
  return acc;
}

FpMatrix restrict_to_basis(const FpMatrix& a, const FpMatrix& basis) {
  auto sol = solve_columns(basis, a * basis);
  if (!sol) throw std::domain_error("restrict_to_basis: subspace not invariant");
  return *sol;
}

FpMatrix column_space_intersection(const FpMatrix& a, const FpMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("intersection: row mismatch");
  uint32_t p = a.modulus();
  FpMatrix stacked(p, a.rows(), a.cols() + b.cols());
  for (size_t i = 0; i < a.rows(); ++i) {
    for (size_t j = 0; j < a.cols(); ++j) stacked.at(i, j) = a.at(i, j);
    for (size_t j = 0; j < b.cols(); ++j) stacked.at(i, a.cols() + j) = negmod(b.at(i, j), p);
  }
  FpMatrix ker = kernel_basis(stacked);
  FpMatrix out(p, a.rows(), ker.cols());
  for (size_t k = 0; k < ker.cols(); ++k)
    for (size_t i = 0; i < a.rows(); ++i) {
      uint64_t acc = 0;
      for (size_t j = 0; j < a.cols(); ++j)
        acc = (acc + (uint64_t)a.at(i, j) * ker.at(j, k)) % p;
      out.at(i, k) = (uint32_t)acc;
    }
  return out;
}

bool VectorSpan::insert(const std::vector<uint32_t>& v) {
  if (v.size() != width_) throw std::invalid_argument("VectorSpan: width mismatch");
  std::vector<uint32_t> w = v;
  std::vector<uint32_t> combo(inserted_.size() + 1, 0);
  combo.back() = 1;
  for (size_t i = 0; i < rows_.size(); ++i) {
    uint32_t c = w[pivots_[i]];
    if (c == 0) continue;
    for (size_t j = 0; j < width_; ++j) w[j] = submod(w[j], mulmod(c, rows_[i][j], p_), p_);
    for (size_t j = 0; j < combos_[i].size(); ++j)
      combo[j] = submod(combo[j], mulmod(c, combos_[i][j], p_), p_);
  }
  size_t piv = 0;
  while (piv < width_ && w[piv] == 0) ++piv;
  if (piv == width_) return false;
  uint32_t inv = invmod(w[piv], p_);
  for (auto& x : w) x = mulmod(x, inv, p_);
  for (auto& x : combo) x = mulmod(x, inv, p_);
  // Keep earlier rows reduced against the new pivot.
  for (size_t i = 0; i < rows_.size(); ++i) {
    uint32_t c = rows_[i][piv];
    if (c == 0) continue;
    for (size_t j = 0; j < width_; ++j)
      rows_[i][j] = submod(rows_[i][j], mulmod(c, w[j], p_), p_);
    if (combos_[i].size() < combo.size()) combos_[i].resize(combo.size(), 0);
    for (size_t j = 0; j < combo.size(); ++j)
      combos_[i][j] = submod(combos_[i][j], mulmod(c, combo[j], p_), p_);
  }
  rows_.push_back(std::move(w));
  combos_.push_back(std::move(combo));
  pivots_.push_back(piv);
  inserted_.push_back(v);
  return true;
}

bool VectorSpan::contains(const std::vector<uint32_t>& v) const {
  if (v.size() != width_) throw std::invalid_argument("VectorSpan: width mismatch");
  std::vector<uint32_t> w = v;
  for (size_t i = 0; i < rows_.size(); ++i) {
    uint32_t c = w[pivots_[i]];
    if (c == 0) continue;
    for (size_t j = 0; j < width_; ++j) w[j] = submod(w[j], mulmod(c, rows_[i][j], p_), p_);
  }
  for (uint32_t x : w)
    if (x) return false;
  return true;
}

std::optional<std::vector<uint32_t>> VectorSpan::coordinates(const std::vector<uint32_t>& v) const {
  if (v.size() != width_) throw std::invalid_argument("VectorSpan: width mismatch");
  std::vector<uint32_t> w = v;
  std::vector<uint32_t> acc(inserted_.size(), 0);
  for (size_t i = 0; i < rows_.size(); ++i) {
    uint32_t c = w[pivots_[i]];
    if (c == 0) continue;
    for (size_t j = 0; j < width_; ++j) w[j] = submod(w[j], mulmod(c, rows_[i][j], p_), p_);
    for (size_t j = 0; j < combos_[i].size(); ++j)
      acc[j] = addmod(acc[j], mulmod(c, combos_[i][j], p_), p_);
  }
  for (uint32_t x : w)
    if (x) return std::nullopt;
  return acc;
}

FpMatrix VectorSpan::inserted_as_columns() const {
  FpMatrix m(p_, width_, inserted_.size());
  for (size_t j = 0; j < inserted_.size(); ++j)
    for (size_t i = 0; i < width_; ++i) m.at(i, j) = inserted_[j][i];
  return m;
}

}  // namespace heckelab

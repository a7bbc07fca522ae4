#include "heckelab/finite_field.hpp"

#include <sstream>
#include <stdexcept>

#include "heckelab/fp.hpp"

namespace heckelab {

namespace {

// Extended Euclid in F_p[x]: returns (g, u) with u*a = g mod m, g = gcd(a, m).
std::pair<FpPoly, FpPoly> half_ext_gcd(FpPoly a, FpPoly m) {
  uint32_t p = a.modulus();
  FpPoly u0 = FpPoly::one(p), u1 = FpPoly::zero(p);
  FpPoly r0 = std::move(a), r1 = std::move(m);
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    FpPoly u2 = u0 - q * u1;
    r0 = std::move(r1);
    r1 = std::move(r);
    u0 = std::move(u1);
    u1 = std::move(u2);
  }
  if (r0.leading() != 1) {
    uint32_t c = invmod(r0.leading(), p);
    r0 = r0.scaled(c);
    u0 = u0.scaled(c);
  }
  return {std::move(r0), std::move(u0)};
}

}  // namespace

FqElement::FqElement(FieldPtr field, std::vector<uint32_t> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  auto d = static_cast<size_t>(field_->degree());
  if (coeffs_.size() != d) throw std::invalid_argument("FqElement: wrong coefficient count");
  for (auto& c : coeffs_) c %= field_->p();
}

bool FqElement::is_zero() const {
  for (uint32_t c : coeffs_)
    if (c) return false;
  return true;
}

bool FqElement::in_prime_field() const {
  for (size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i]) return false;
  return true;
}

FqElement FqElement::operator+(const FqElement& o) const {
  uint32_t p = field_->p();
  std::vector<uint32_t> v(coeffs_.size());
  for (size_t i = 0; i < v.size(); ++i) v[i] = addmod(coeffs_[i], o.coeffs_[i], p);
  return FqElement(field_, std::move(v));
}

FqElement FqElement::operator-(const FqElement& o) const {
  uint32_t p = field_->p();
  std::vector<uint32_t> v(coeffs_.size());
  for (size_t i = 0; i < v.size(); ++i) v[i] = submod(coeffs_[i], o.coeffs_[i], p);
  return FqElement(field_, std::move(v));
}

FqElement FqElement::operator*(const FqElement& o) const {
  uint32_t p = field_->p();
  FpPoly prod = FpPoly(p, coeffs_) * FpPoly(p, o.coeffs_);
  FpPoly red = prod % field_->modulus();
  std::vector<uint32_t> v(static_cast<size_t>(field_->degree()), 0);
  for (int i = 0; i <= red.degree(); ++i) v[static_cast<size_t>(i)] = red.coeff(i);
  return FqElement(field_, std::move(v));
}

FqElement FqElement::inverse() const {
  if (is_zero()) throw std::domain_error("FqElement: inverse of zero");
  uint32_t p = field_->p();
  auto [g, u] = half_ext_gcd(FpPoly(p, coeffs_), field_->modulus());
  if (!g.is_one()) throw std::logic_error("FqElement: modulus not irreducible");
  FpPoly red = u % field_->modulus();
  std::vector<uint32_t> v(static_cast<size_t>(field_->degree()), 0);
  for (int i = 0; i <= red.degree(); ++i) v[static_cast<size_t>(i)] = red.coeff(i);
  return FqElement(field_, std::move(v));
}

FqElement FqElement::pow(uint64_t e) const {
  FqElement r = field_->one();
  FqElement b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

FqElement FqElement::frobenius() const { return pow(field_->p()); }

bool FqElement::operator==(const FqElement& o) const { return coeffs_ == o.coeffs_; }

std::string FqElement::to_string() const {
  return FpPoly(field_->p(), coeffs_).to_string();
}

FieldPtr FiniteField::make(uint32_t p, const FpPoly& modulus) {
  require_prime_modulus(p);
  if (modulus.modulus() != p) throw std::invalid_argument("FiniteField: modulus over wrong prime");
  if (modulus.leading() != 1 || modulus.degree() < 1)
    throw std::invalid_argument("FiniteField: need monic modulus of degree >= 1");
  if (modulus.degree() > 1 && !is_irreducible(modulus))
    throw std::invalid_argument("FiniteField: modulus is reducible");
  return FieldPtr(new FiniteField(p, modulus));
}

FieldPtr FiniteField::make(uint32_t p, int d) { return make(p, find_irreducible(p, d)); }

FqElement FiniteField::zero() const {
  return FqElement(shared_from_this(), std::vector<uint32_t>(static_cast<size_t>(degree()), 0));
}

FqElement FiniteField::one() const { return from_prime_field(1); }

FqElement FiniteField::from_prime_field(uint32_t a) const {
  std::vector<uint32_t> v(static_cast<size_t>(degree()), 0);
  v[0] = a % p_;
  return FqElement(shared_from_this(), std::move(v));
}

FqElement FiniteField::from_coeffs(std::vector<uint32_t> cs) const {
  cs.resize(static_cast<size_t>(degree()), 0);
  return FqElement(shared_from_this(), std::move(cs));
}

FqElement FiniteField::gen() const {
  std::vector<uint32_t> v(static_cast<size_t>(degree()), 0);
  if (degree() == 1) {
    // x is congruent to the negated constant term of the modulus.
    v[0] = negmod(modulus().coeff(0), p_);
  } else {
    v[1] = 1;
  }
  return FqElement(shared_from_this(), std::move(v));
}

FqMatrix::FqMatrix(FieldPtr field, size_t rows, size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols) {
  data_.assign(rows_ * cols_, field_->zero());
}

FqMatrix FqMatrix::identity(FieldPtr field, size_t n) {
  FqMatrix m(field, n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = field->one();
  return m;
}

FqMatrix FqMatrix::operator*(const FqMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("FqMatrix *: shape mismatch");
  FqMatrix m(field_, rows_, o.cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < o.cols_; ++j) {
      FqElement acc = field_->zero();
      for (size_t k = 0; k < cols_; ++k) acc = acc + at(i, k) * o.at(k, j);
      m.at(i, j) = acc;
    }
  return m;
}

bool FqMatrix::operator==(const FqMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (size_t k = 0; k < data_.size(); ++k)
    if (!(data_[k] == o.data_[k])) return false;
  return true;
}

std::optional<FqMatrix> FqMatrix::inverse() const {
  if (rows_ != cols_) throw std::invalid_argument("FqMatrix inverse: need square");
  FqMatrix a = *this;
  FqMatrix inv = identity(field_, rows_);
  for (size_t c = 0; c < cols_; ++c) {
    size_t sel = c;
    while (sel < rows_ && a.at(sel, c).is_zero()) ++sel;
    if (sel == rows_) return std::nullopt;
    if (sel != c)
      for (size_t j = 0; j < cols_; ++j) {
        std::swap(a.at(sel, j), a.at(c, j));
        std::swap(inv.at(sel, j), inv.at(c, j));
      }
    FqElement d = a.at(c, c).inverse();
    for (size_t j = 0; j < cols_; ++j) {
      a.at(c, j) = a.at(c, j) * d;
      inv.at(c, j) = inv.at(c, j) * d;
    }
    for (size_t i = 0; i < rows_; ++i) {
      if (i == c || a.at(i, c).is_zero()) continue;
      FqElement f = a.at(i, c);
      for (size_t j = 0; j < cols_; ++j) {
        a.at(i, j) = a.at(i, j) - f * a.at(c, j);
        inv.at(i, j) = inv.at(i, j) - f * inv.at(c, j);
      }
    }
  }
  return inv;
}

}  // namespace heckelab

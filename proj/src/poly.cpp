#include "heckelab/poly.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

#include "heckelab/arith.hpp"
#include "heckelab/fp.hpp"

namespace heckelab {

FpPoly::FpPoly(uint32_t p, std::vector<uint32_t> coeffs) : p_(p), coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c %= p_;
  trim();
}

FpPoly FpPoly::from_ints(uint32_t p, const std::vector<int64_t>& cs) {
  std::vector<uint32_t> v(cs.size());
  for (size_t i = 0; i < cs.size(); ++i) v[i] = reduce_int(cs[i], p);
  return FpPoly(p, std::move(v));
}

void FpPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

FpPoly FpPoly::operator+(const FpPoly& o) const {
  std::vector<uint32_t> v(std::max(coeffs_.size(), o.coeffs_.size()), 0);
  for (size_t i = 0; i < v.size(); ++i) v[i] = addmod(coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)), p_);
  return FpPoly(p_, std::move(v));
}

FpPoly FpPoly::operator-(const FpPoly& o) const {
  std::vector<uint32_t> v(std::max(coeffs_.size(), o.coeffs_.size()), 0);
  for (size_t i = 0; i < v.size(); ++i) v[i] = submod(coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)), p_);
  return FpPoly(p_, std::move(v));
}

FpPoly FpPoly::operator*(const FpPoly& o) const {
  if (is_zero() || o.is_zero()) return FpPoly(p_);
  std::vector<uint32_t> v(coeffs_.size() + o.coeffs_.size() - 1, 0);
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (size_t j = 0; j < o.coeffs_.size(); ++j) {
      v[i + j] = addmod(v[i + j], mulmod(coeffs_[i], o.coeffs_[j], p_), p_);
    }
  }
  return FpPoly(p_, std::move(v));
}

FpPoly FpPoly::scaled(uint32_t c) const {
  std::vector<uint32_t> v(coeffs_);
  for (auto& x : v) x = mulmod(x, c % p_, p_);
  return FpPoly(p_, std::move(v));
}

std::pair<FpPoly, FpPoly> FpPoly::divmod(const FpPoly& d) const {
  if (d.is_zero()) throw std::domain_error("FpPoly: division by zero");
  if (degree() < d.degree()) return {FpPoly(p_), *this};
  std::vector<uint32_t> rem(coeffs_);
  std::vector<uint32_t> quot(static_cast<size_t>(degree() - d.degree()) + 1, 0);
  uint32_t lead_inv = invmod(d.leading(), p_);
  for (int k = degree() - d.degree(); k >= 0; --k) {
    uint32_t c = mulmod(rem[static_cast<size_t>(k + d.degree())], lead_inv, p_);
    quot[static_cast<size_t>(k)] = c;
    if (c == 0) continue;
    for (int i = 0; i <= d.degree(); ++i) {
      auto idx = static_cast<size_t>(k + i);
      rem[idx] = submod(rem[idx], mulmod(c, d.coeff(i), p_), p_);
    }
  }
  return {FpPoly(p_, std::move(quot)), FpPoly(p_, std::move(rem))};
}

FpPoly FpPoly::monic() const {
  if (is_zero() || leading() == 1) return *this;
  return scaled(invmod(leading(), p_));
}

FpPoly FpPoly::derivative() const {
  if (degree() < 1) return FpPoly(p_);
  std::vector<uint32_t> v(coeffs_.size() - 1);
  for (size_t i = 1; i < coeffs_.size(); ++i)
    v[i - 1] = mulmod(coeffs_[i], static_cast<uint32_t>(i % p_), p_);
  return FpPoly(p_, std::move(v));
}

uint32_t FpPoly::eval(uint32_t x) const {
  uint32_t acc = 0;
  for (size_t i = coeffs_.size(); i-- > 0;) acc = addmod(mulmod(acc, x % p_, p_), coeffs_[i], p_);
  return acc;
}

std::string FpPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    uint32_t c = coeff(i);
    if (c == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0 || c != 1) os << c;
    if (i > 0 && c != 1) os << "*";
    if (i == 1) os << "x";
    if (i > 1) os << "x^" << i;
  }
  return os.str();
}

FpPoly poly_gcd(FpPoly a, FpPoly b) {
  while (!b.is_zero()) {
    FpPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

FpPoly poly_powmod(FpPoly base, uint64_t e, const FpPoly& m) {
  FpPoly r = FpPoly::one(base.modulus());
  base = base % m;
  while (e) {
    if (e & 1) r = (r * base) % m;
    base = (base * base) % m;
    e >>= 1;
  }
  return r;
}

namespace {

bool poly_less(const FpPoly& a, const FpPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i)
    if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
  return false;
}

// f' == 0 means f is a p-th power; take the p-th root by exponent division
// (coefficients are already p-th powers since the base field is F_p).
FpPoly pth_root(const FpPoly& f) {
  uint32_t p = f.modulus();
  std::vector<uint32_t> v(static_cast<size_t>(f.degree() / static_cast<int>(p)) + 1);
  for (size_t i = 0; i < v.size(); ++i) v[i] = f.coeff(static_cast<int>(i * p));
  return FpPoly(p, std::move(v));
}

// Yun-style squarefree decomposition adapted to characteristic p.
// Returns (squarefree part, multiplicity) pairs.
void squarefree_decompose(const FpPoly& f, int mult, std::vector<std::pair<FpPoly, int>>& out) {
  uint32_t p = f.modulus();
  FpPoly d = f.derivative();
  if (d.is_zero()) {
    squarefree_decompose(pth_root(f), mult * static_cast<int>(p), out);
    return;
  }
  FpPoly g = poly_gcd(f, d);
  FpPoly w = f / g;  // product of factors with multiplicity not divisible by p
  int i = 1;
  while (!w.is_one()) {
    FpPoly y = poly_gcd(w, g);
    FpPoly fac = w / y;
    if (fac.degree() > 0) out.emplace_back(fac.monic(), mult * i);
    w = std::move(y);
    g = g / w;
    ++i;
  }
  if (g.degree() > 0) squarefree_decompose(g, mult, out);  // leftover p-th powers
}

// Distinct-degree: splits a squarefree monic f into products of irreducibles
// of equal degree.  Returns (product, degree of its irreducible factors).
std::vector<std::pair<FpPoly, int>> distinct_degree(FpPoly f) {
  uint32_t p = f.modulus();
  std::vector<std::pair<FpPoly, int>> out;
  FpPoly h = FpPoly::x(p);  // x^(p^d) mod f, maintained incrementally
  int d = 0;
  while (f.degree() > 2 * d) {
    ++d;
    h = poly_powmod(h, p, f);
    FpPoly g = poly_gcd(h - FpPoly::x(p), f);
    if (g.degree() > 0) {
      out.emplace_back(g, d);
      f = f / g;
      h = h % f;
    }
  }
  if (f.degree() > 0) out.emplace_back(f, f.degree());
  return out;
}

// Cantor-Zassenhaus equal-degree splitting of f (all factors of degree d).
void equal_degree(const FpPoly& f, int d, std::mt19937_64& rng, std::vector<FpPoly>& out) {
  uint32_t p = f.modulus();
  if (f.degree() == d) {
    out.push_back(f.monic());
    return;
  }
  int n = f.degree();
  FpPoly g(p);
  while (true) {
    std::vector<uint32_t> cs(static_cast<size_t>(n));
    for (auto& c : cs) c = static_cast<uint32_t>(rng() % p);
    FpPoly a(p, std::move(cs));
    if (a.degree() < 1) continue;
    if (p == 2) {
      // Additive trace map sum a^(2^i) over the degree-d subfield tower.
      FpPoly t(p), cur = a;
      for (int i = 0; i < d; ++i) {
        t = (t + cur) % f;
        cur = poly_powmod(cur, 2, f);
      }
      g = poly_gcd(t, f);
    } else {
      // a^((p^d-1)/2) = norm(a)^((p-1)/2) with norm(a) = prod a^(p^i); the
      // norm form keeps every exponent below p, so p^d is never formed.
      FpPoly cur = a % f, norm = cur;
      for (int i = 1; i < d; ++i) {
        cur = poly_powmod(cur, p, f);
        norm = (norm * cur) % f;
      }
      FpPoly b = poly_powmod(norm, (p - 1) / 2, f);
      g = poly_gcd(b - FpPoly::one(p), f);
    }
    if (g.degree() > 0 && g.degree() < n) break;
  }
  equal_degree(g, d, rng, out);
  equal_degree(f / g, d, rng, out);
}

}  // namespace

std::vector<std::pair<FpPoly, int>> factorize_poly(const FpPoly& f) {
  if (f.degree() < 1) throw std::invalid_argument("factorize_poly: need degree >= 1");
  std::vector<std::pair<FpPoly, int>> sqf;
  squarefree_decompose(f.monic(), 1, sqf);
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull);  // fixed seed: reproducible runs
  std::vector<std::pair<FpPoly, int>> out;
  for (const auto& [part, mult] : sqf) {
    for (const auto& [prod, d] : distinct_degree(part)) {
      std::vector<FpPoly> irred;
      equal_degree(prod, d, rng, irred);
      for (auto& g : irred) out.emplace_back(std::move(g), mult);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return poly_less(a.first, b.first); });
  return out;
}

bool is_irreducible(const FpPoly& f) {
  if (f.degree() < 1) return false;
  if (f.degree() == 1) return true;
  uint32_t p = f.modulus();
  // Rabin's test: x^(p^n) == x mod f, and x^(p^(n/q)) - x coprime to f for
  // every prime q | n.
  int n = f.degree();
  FpPoly xp = FpPoly::x(p);
  FpPoly h = xp;
  std::vector<FpPoly> powers;  // h_i = x^(p^(i+1)) mod f
  for (int i = 0; i < n; ++i) {
    h = poly_powmod(h, p, f);
    powers.push_back(h);
  }
  if (!(powers.back() % f == xp % f)) return false;
  for (auto [q, e] : factorize(n)) {
    (void)e;
    FpPoly g = poly_gcd(powers[static_cast<size_t>(n / q - 1)] - xp, f);
    if (!g.is_one()) return false;
  }
  return true;
}

FpPoly find_irreducible(uint32_t p, int d) {
  if (d < 1) throw std::invalid_argument("find_irreducible: need d >= 1");
  if (d == 1) return FpPoly::x(p);
  // Deterministic sweep: x^d + c for small c, then seeded random trials.
  for (uint32_t c = 1; c < p && c < 64; ++c) {
    std::vector<uint32_t> v(static_cast<size_t>(d) + 1, 0);
    v[0] = c;
    v.back() = 1;
    FpPoly f(p, std::move(v));
    if (is_irreducible(f)) return f;
  }
  std::mt19937_64 rng(0x517cc1b727220a95ull);
  while (true) {
    std::vector<uint32_t> v(static_cast<size_t>(d) + 1);
    for (auto& c : v) c = static_cast<uint32_t>(rng() % p);
    v.back() = 1;
    FpPoly f(p, std::move(v));
    if (is_irreducible(f)) return f;
  }
}

}  // namespace heckelab

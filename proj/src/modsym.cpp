#include "heckelab/modsym.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "heckelab/arith.hpp"
#include "heckelab/fp.hpp"

namespace heckelab {

namespace {

int64_t mod_pos(int64_t a, int64_t n) {
  int64_t r = a % n;
  return r < 0 ? r + n : r;
}

// g = gcd(a, b) together with x a + y b = g.
int64_t xgcd(int64_t a, int64_t b, int64_t& x, int64_t& y) {
  int64_t x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    int64_t q = a / b;
    int64_t t = a - q * b;
    a = b;
    b = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
    t = y0 - q * y1;
    y0 = y1;
    y1 = t;
  }
  x = x0;
  y = y0;
  return a;
}

uint64_t pair_key(int64_t c, int64_t d) {
  return (static_cast<uint64_t>(c) << 32) | static_cast<uint64_t>(d);
}

// Canonical representative of (u : v) in P^1(Z/N); follows the normalization
// used by Cremona and in Sage's p1list.  Returns false if gcd(u, v, N) > 1.
bool p1_normalize(int64_t N, int64_t u, int64_t v, int64_t& uu, int64_t& vv) {
  if (N == 1) {
    uu = 0;
    vv = 0;
    return true;
  }
  u = mod_pos(u, N);
  v = mod_pos(v, N);
  if (u == 0) {
    if (std::gcd(v, N) != 1) return false;
    uu = 0;
    vv = 1;
    return true;
  }
  int64_t s, t;
  int64_t g = xgcd(u, N, s, t);
  s = mod_pos(s, N);
  if (std::gcd(g, v) != 1) return false;
  // s*u = g (mod N); shift s by N/g until it is a unit.
  if (g != 1) {
    int64_t d = N / g;
    while (std::gcd(s, N) != 1) s = mod_pos(s + d, N);
  }
  u = g;
  v = mod_pos(s * v, N);
  // Remaining freedom: units t = 1 (mod N/g).  Pick the smallest v.
  int64_t min_v = v;
  if (g != 1) {
    int64_t Ng = N / g;
    int64_t vNg = mod_pos(v * Ng, N);
    int64_t tt = 1;
    for (int64_t k = 2; k <= g; ++k) {
      v = mod_pos(v + vNg, N);
      tt = mod_pos(tt + Ng, N);
      if (v < min_v && std::gcd(tt, N) == 1) min_v = v;
    }
  }
  uu = u;
  vv = min_v;
  return true;
}

}  // namespace

std::string group_name(const GroupSpec& g) {
  return (g.kind == GroupKind::Gamma0 ? "gamma0_" : "gamma1_") + std::to_string(g.level);
}

SpaceInvariants group_invariants(const GroupSpec& g) {
  int64_t N = g.level;
  if (N < 1) throw std::invalid_argument("group_invariants: need level >= 1");
  SpaceInvariants out{};
  auto fac = factorize(N);
  if (g.kind == GroupKind::Gamma0) {
    int64_t mu = N;
    for (auto [q, e] : fac) {
      (void)e;
      mu += mu / q;  // psi(N) = N prod (1 + 1/q)
    }
    out.sl2_index = mu;
    out.psl2_index = mu;
    if (N % 4 == 0) {
      out.nu2 = 0;
    } else {
      out.nu2 = 1;
      for (auto [q, e] : fac) {
        (void)e;
        if (q != 2) out.nu2 *= 1 + kronecker(-1, q);
      }
    }
    if (N % 9 == 0) {
      out.nu3 = 0;
    } else {
      out.nu3 = 1;
      for (auto [q, e] : fac) {
        (void)e;
        if (q != 3) out.nu3 *= 1 + kronecker(-3, q);
      }
    }
    out.ncusps = 0;
    for (int64_t d : divisors(N)) out.ncusps += euler_phi(std::gcd(d, N / d));
  } else {
    int64_t mu1 = N * N;
    for (auto [q, e] : fac) {
      (void)e;
      mu1 = mu1 / (q * q) * (q * q - 1);
    }
    out.sl2_index = mu1;
    out.psl2_index = N <= 2 ? mu1 : mu1 / 2;
    out.nu2 = (N <= 2) ? 1 : 0;
    out.nu3 = (N == 1 || N == 3) ? 1 : 0;
    if (N == 1)
      out.ncusps = 1;
    else if (N == 2)
      out.ncusps = 2;
    else if (N == 3)
      out.ncusps = 2;
    else if (N == 4)
      out.ncusps = 3;
    else {
      int64_t s = 0;
      for (int64_t d : divisors(N)) s += euler_phi(d) * euler_phi(N / d);
      out.ncusps = s / 2;
    }
  }
  // 12 g = 12 + mu - 3 nu2 - 4 nu3 - 6 ninf on the projective index
  int64_t twelve_g = 12 + out.psl2_index - 3 * out.nu2 - 4 * out.nu3 - 6 * out.ncusps;
  if (twelve_g % 12) throw std::logic_error("group_invariants: genus formula not integral");
  out.genus = twelve_g / 12;
  out.sturm_bound = (out.sl2_index + 5) / 6;
  return out;
}

std::vector<IntMat22> heilbronn_cremona(int64_t l) {
  std::vector<IntMat22> result;
  result.push_back({1, 0, 0, l});
  for (int64_t s = 0; s < l; ++s) {
    int64_t r = s - (l - 1) / 2;
    int64_t x1 = l, x2 = -r, y1 = 0, y2 = 1;
    int64_t a = -l, b = r;
    result.push_back({x1, x2, y1, y2});
    while (b != 0) {
      int64_t q = std::llround(static_cast<double>(a) / static_cast<double>(b));
      int64_t c = a - b * q;
      a = -b;
      b = c;
      int64_t x3 = q * x2 - x1;
      x1 = x2;
      x2 = x3;
      int64_t y3 = q * y2 - y1;
      y1 = y2;
      y2 = y3;
      result.push_back({x1, x2, y1, y2});
    }
  }
  return result;
}

std::vector<IntMat22> heilbronn_merel(int64_t n) {
  std::vector<IntMat22> result;
  for (int64_t a = 1; a <= n; ++a) {
    int64_t q = n / a;
    if (q * a == n) {
      int64_t d = q;
      for (int64_t b = 0; b < a; ++b) result.push_back({a, b, 0, d});
      for (int64_t c = 1; c < d; ++c) result.push_back({a, 0, c, d});
    }
    for (int64_t d = q + 1; d <= n; ++d) {
      int64_t bc = a * d - n;
      for (int64_t c = bc / a + 1; c < d; ++c) {
        if (bc % c == 0) result.push_back({a, bc / c, c, d});
      }
    }
  }
  return result;
}

IntMat22 lift_to_sl2(int64_t c, int64_t d, int64_t N) {
  if (N == 1) return {1, 0, 0, 1};
  c = mod_pos(c, N);
  d = mod_pos(d, N);
  int64_t c0 = c == 0 ? N : c;
  int64_t d0 = d;
  int64_t tries = 0;
  while (std::gcd(c0, d0) != 1) {
    d0 += N;
    if (++tries > c0 + 1) throw std::logic_error("lift_to_sl2: no coprime lift found");
  }
  int64_t s, t;
  if (xgcd(d0, c0, s, t) != 1) throw std::logic_error("lift_to_sl2: gcd != 1");
  // s d0 + t c0 = 1, so [[s, -t], [c0, d0]] has determinant 1.
  return {s, -t, c0, d0};
}

Cusp reduce_cusp(int64_t a, int64_t c) {
  if (a == 0 && c == 0) throw std::invalid_argument("reduce_cusp: 0/0");
  int64_t g = std::gcd(a < 0 ? -a : a, c < 0 ? -c : c);
  a /= g;
  c /= g;
  if (c < 0) {
    a = -a;
    c = -c;
  }
  if (c == 0) a = 1;
  return {a, c};
}

namespace {

// p s = 1 (mod q), with the conventions s(1/0) = 1 and s(p/1) = 0.
int64_t cusp_inverse_scalar(const Cusp& c) {
  if (c.den == 0) return 1;
  if (c.den == 1) return 0;
  int64_t s, t;
  if (xgcd(mod_pos(c.num, c.den), c.den, s, t) != 1)
    throw std::logic_error("cusp_inverse_scalar: cusp not reduced");
  return mod_pos(s, c.den);
}

}  // namespace

bool cusps_equivalent(const GroupSpec& g, const Cusp& c1, const Cusp& c2) {
  int64_t N = g.level;
  if (g.kind == GroupKind::Gamma0) {
    // Cremona, Proposition 2.2.3.
    int64_t s1 = cusp_inverse_scalar(c1);
    int64_t s2 = cusp_inverse_scalar(c2);
    int64_t m = std::gcd(c1.den * c2.den, N);
    if (m == 0) m = N;  // both cusps infinite
    return mod_pos(s1 * c2.den - s2 * c1.den, m) == 0;
  }
  // Gamma_1: (p2, q2) = eps (p1 + j q1, q1) (mod N) for some j and sign.
  for (int64_t eps : {1, -1}) {
    if (mod_pos(c2.den - eps * c1.den, N) != 0) continue;
    int64_t m = std::gcd(c1.den, N);
    if (m == 0) m = N;
    if (mod_pos(c2.num - eps * c1.num, m) == 0) return true;
  }
  return false;
}

std::optional<std::pair<int64_t, int64_t>> ModularSymbolSpace::normalize_pair(int64_t c,
                                                                              int64_t d) const {
  int64_t N = group_.level;
  c = mod_pos(c, N);
  d = mod_pos(d, N);
  if (group_.kind == GroupKind::Gamma0) {
    int64_t u, v;
    if (!p1_normalize(N, c, d, u, v)) return std::nullopt;
    return std::make_pair(u, v);
  }
  if (std::gcd(std::gcd(c, d), N) != 1) return std::nullopt;
  // (c, d) and (-c, -d) give the same weight-2 symbol; take the lex-smaller.
  int64_t nc = mod_pos(-c, N), nd = mod_pos(-d, N);
  if (std::make_pair(nc, nd) < std::make_pair(c, d)) return std::make_pair(nc, nd);
  return std::make_pair(c, d);
}

std::optional<size_t> ModularSymbolSpace::symbol_index(int64_t c, int64_t d) const {
  auto norm = normalize_pair(c, d);
  if (!norm) return std::nullopt;
  auto it = index_.find(pair_key(norm->first, norm->second));
  if (it == index_.end()) throw std::logic_error("symbol_index: normalized pair missing");
  return it->second;
}

ModularSymbolSpace build_space(uint32_t p, const GroupSpec& g) {
  require_prime_modulus(p);
  if (g.level < 1 || g.level >= (1 << 20))
    throw std::invalid_argument("build_space: level out of range");
  ModularSymbolSpace sp;
  sp.p_ = p;
  sp.group_ = g;
  sp.inv_ = group_invariants(g);
  sp.h1_ok_ = !((p == 2 || p == 3) && (sp.inv_.nu2 + sp.inv_.nu3 > 0));

  int64_t N = g.level;
  for (int64_t c = 0; c < N; ++c) {
    for (int64_t d = 0; d < N; ++d) {
      auto norm = sp.normalize_pair(c, d);
      if (!norm) continue;
      uint64_t key = pair_key(norm->first, norm->second);
      if (sp.index_.count(key)) continue;
      sp.index_.emplace(key, sp.symbols_.size());
      sp.symbols_.push_back(*norm);
    }
  }
  if (N == 1) {
    // The double loop above only sees (0, 0), which is the one symbol.
    if (sp.symbols_.empty()) {
      sp.index_.emplace(pair_key(0, 0), 0);
      sp.symbols_.emplace_back(0, 0);
    }
  }
  size_t S = sp.symbols_.size();

  // Two- and three-term relations x + x sigma and x + x tau + x tau^2, one
  // row per orbit representative.
  auto idx_of = [&](int64_t c, int64_t d) {
    auto i = sp.symbol_index(c, d);
    if (!i) throw std::logic_error("build_space: relation leaves the symbol set");
    return *i;
  };
  for (size_t s = 0; s < S; ++s) {
    auto [c, d] = sp.symbols_[s];
    size_t s_sigma = idx_of(d, -c);
    if (s <= s_sigma) {
      std::vector<uint32_t> row(S, 0);
      row[s] = addmod(row[s], 1, p);
      row[s_sigma] = addmod(row[s_sigma], 1, p);
      sp.relations_.push_back(std::move(row));
    }
    size_t s_tau = idx_of(d, -c - d);
    size_t s_tau2 = idx_of(-c - d, c);
    if (s <= s_tau && s <= s_tau2) {
      std::vector<uint32_t> row(S, 0);
      row[s] = addmod(row[s], 1, p);
      row[s_tau] = addmod(row[s_tau], 1, p);
      row[s_tau2] = addmod(row[s_tau2], 1, p);
      sp.relations_.push_back(std::move(row));
    }
  }

  FpMatrix R(p, sp.relations_.size(), S);
  for (size_t i = 0; i < sp.relations_.size(); ++i)
    for (size_t j = 0; j < S; ++j) R.at(i, j) = sp.relations_[i][j];
  RrefResult rr = rref(R);

  std::vector<size_t> free_cols;
  {
    size_t k = 0;
    for (size_t c = 0; c < S; ++c) {
      if (k < rr.pivot_cols.size() && rr.pivot_cols[k] == c)
        ++k;
      else
        free_cols.push_back(c);
    }
  }
  size_t dim = free_cols.size();
  sp.projection_ = FpMatrix(p, dim, S);
  sp.lift_ = FpMatrix(p, S, dim);
  for (size_t k = 0; k < dim; ++k) {
    sp.projection_.at(k, free_cols[k]) = 1;
    sp.lift_.at(free_cols[k], k) = 1;
  }
  for (size_t i = 0; i < rr.rank; ++i) {
    size_t piv = rr.pivot_cols[i];
    for (size_t k = 0; k < dim; ++k)
      sp.projection_.at(k, piv) = negmod(rr.reduced.at(i, free_cols[k]), p);
  }

  // Boundary: lift each symbol to SL_2(Z) and send it to the difference of
  // its cusp classes.
  FpMatrix B(p, 0, 0);
  std::vector<std::vector<int32_t>> braw;  // class -> signed row over symbols
  auto class_of = [&](const Cusp& c) {
    for (size_t i = 0; i < sp.cusp_classes_.size(); ++i)
      if (cusps_equivalent(g, sp.cusp_classes_[i], c)) return i;
    sp.cusp_classes_.push_back(c);
    braw.emplace_back(S, 0);
    return sp.cusp_classes_.size() - 1;
  };
  for (size_t s = 0; s < S; ++s) {
    auto [c, d] = sp.symbols_[s];
    IntMat22 m = lift_to_sl2(c, d, N);
    size_t top = class_of(reduce_cusp(m.a, m.c));
    size_t bot = class_of(reduce_cusp(m.b, m.d));
    braw[top][s] += 1;
    braw[bot][s] -= 1;
  }
  B = FpMatrix(p, sp.cusp_classes_.size(), S);
  for (size_t i = 0; i < braw.size(); ++i)
    for (size_t j = 0; j < S; ++j) B.at(i, j) = reduce_int(braw[i][j], p);

  sp.boundary_q_ = B * sp.lift_;
  sp.cuspidal_basis_ = kernel_basis(sp.boundary_q_);
  return sp;
}

FpMatrix ModularSymbolSpace::hecke_prime_on_symbols(int64_t l) const {
  int64_t N = group_.level;
  size_t S = symbols_.size();
  FpMatrix A(p_, S, S);
  std::vector<IntMat22> family =
      (N % l == 0) ? heilbronn_merel(l) : heilbronn_cremona(l);
  for (size_t s = 0; s < S; ++s) {
    auto [c, d] = symbols_[s];
    for (const IntMat22& m : family) {
      int64_t cc = c * m.a + d * m.c;
      int64_t dd = c * m.b + d * m.d;
      auto t = symbol_index(cc, dd);
      if (!t) continue;  // the coset dies at this level
      A.at(*t, s) = addmod(A.at(*t, s), 1, p_);
    }
  }
  return A;
}

FpMatrix ModularSymbolSpace::diamond_on_symbols(int64_t d) const {
  int64_t N = group_.level;
  if (std::gcd(mod_pos(d, N), N) != 1)
    throw std::invalid_argument("diamond_on_symbols: d not a unit");
  size_t S = symbols_.size();
  FpMatrix A(p_, S, S);
  for (size_t s = 0; s < S; ++s) {
    auto [c, v] = symbols_[s];
    auto t = symbol_index(c * d, v * d);
    if (!t) throw std::logic_error("diamond_on_symbols: unit action left the symbol set");
    A.at(*t, s) = addmod(A.at(*t, s), 1, p_);
  }
  return A;
}

FpMatrix ModularSymbolSpace::to_quotient(const FpMatrix& ambient) const {
  return projection_ * ambient * lift_;
}

FpMatrix ModularSymbolSpace::quotient_hecke_prime_power(int64_t l, int e) const {
  FpMatrix tl = to_quotient(hecke_prime_on_symbols(l));
  if (e == 1) return tl;
  if (group_.level % l == 0) return tl.pow(static_cast<uint64_t>(e));
  // T_{l^{r+1}} = T_l T_{l^r} - l <l> T_{l^{r-1}} in weight 2.
  FpMatrix dia = diamond_on_quotient(l).scaled(reduce_int(l, p_));
  FpMatrix prev = FpMatrix::identity(p_, quotient_dim());
  FpMatrix cur = tl;
  for (int r = 1; r < e; ++r) {
    FpMatrix next = tl * cur - dia * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

FpMatrix ModularSymbolSpace::hecke_on_quotient(int64_t n) const {
  if (n < 1) throw std::invalid_argument("hecke_on_quotient: need n >= 1");
  FpMatrix acc = FpMatrix::identity(p_, quotient_dim());
  for (auto [l, e] : factorize(n)) acc = acc * quotient_hecke_prime_power(l, e);
  return acc;
}

FpMatrix ModularSymbolSpace::hecke_matrix(int64_t n) const {
  return restrict_to_basis(hecke_on_quotient(n), cuspidal_basis_);
}

FpMatrix ModularSymbolSpace::diamond_on_quotient(int64_t d) const {
  if (group_.kind == GroupKind::Gamma0) return FpMatrix::identity(p_, quotient_dim());
  return to_quotient(diamond_on_symbols(d));
}

FpMatrix ModularSymbolSpace::diamond_matrix(int64_t d) const {
  return restrict_to_basis(diamond_on_quotient(d), cuspidal_basis_);
}

bool ModularSymbolSpace::hecke_descends(int64_t l) const {
  // P A = (P A L) P as maps from the ambient space: the Hecke action
  // preserves the relation subspace.
  FpMatrix A = hecke_prime_on_symbols(l);
  return projection_ * A == to_quotient(A) * projection_;
}

FpMatrix family_action_on_quotient(const ModularSymbolSpace& sp,
                                   const std::vector<IntMat22>& family) {
  size_t S = sp.symbol_count();
  FpMatrix A(sp.p(), S, S);
  for (size_t s = 0; s < S; ++s) {
    auto [c, d] = sp.symbols()[s];
    for (const IntMat22& m : family) {
      auto t = sp.symbol_index(c * m.a + d * m.c, c * m.b + d * m.d);
      if (!t) continue;
      A.at(*t, s) = addmod(A.at(*t, s), 1, sp.p());
    }
  }
  return sp.projection() * A * sp.lift();
}

bool ModularSymbolSpace::boundary_kills_relations() const {
  // Rebuild the ambient boundary and check every relation row maps to zero.
  int64_t N = group_.level;
  size_t S = symbols_.size();
  FpMatrix B(p_, cusp_classes_.size(), S);
  for (size_t s = 0; s < S; ++s) {
    auto [c, d] = symbols_[s];
    IntMat22 m = lift_to_sl2(c, d, N);
    Cusp top = reduce_cusp(m.a, m.c);
    Cusp bot = reduce_cusp(m.b, m.d);
    size_t ti = cusp_classes_.size(), bi = cusp_classes_.size();
    for (size_t i = 0; i < cusp_classes_.size(); ++i) {
      if (ti == cusp_classes_.size() && cusps_equivalent(group_, cusp_classes_[i], top)) ti = i;
      if (bi == cusp_classes_.size() && cusps_equivalent(group_, cusp_classes_[i], bot)) bi = i;
    }
    if (ti == cusp_classes_.size() || bi == cusp_classes_.size()) return false;
    B.at(ti, s) = addmod(B.at(ti, s), 1, p_);
    B.at(bi, s) = submod(B.at(bi, s), 1, p_);
  }
  for (const auto& row : relations_) {
    std::vector<uint32_t> img = B.apply(row);
    for (uint32_t x : img)
      if (x) return false;
  }
  return true;
}

}  // namespace heckelab

#include "heckelab/rcf.hpp"

#include <stdexcept>

#include "heckelab/fp.hpp"

namespace heckelab {

namespace {

using PolyMat = std::vector<std::vector<FpPoly>>;

// Smith normal form over the Euclidean domain F_p[x], in place.
void smith_reduce(PolyMat& m, uint32_t p) {
  size_t n = m.size();
  for (size_t t = 0; t < n; ++t) {
    // Pull a nonzero entry of minimal degree into (t, t).
    while (true) {
      int best_deg = -1;
      size_t bi = t, bj = t;
      for (size_t i = t; i < n; ++i)
        for (size_t j = t; j < n; ++j)
          if (!m[i][j].is_zero() && (best_deg < 0 || m[i][j].degree() < best_deg)) {
            best_deg = m[i][j].degree();
            bi = i;
            bj = j;
          }
      if (best_deg < 0) return;  // all remaining entries vanish
      std::swap(m[bi], m[t]);
      for (size_t i = 0; i < n; ++i) std::swap(m[i][bj], m[i][t]);

      bool clean = true;
      for (size_t i = t + 1; i < n; ++i) {
        if (m[i][t].is_zero()) continue;
        FpPoly q = m[i][t] / m[t][t];
        for (size_t j = t; j < n; ++j) m[i][j] = m[i][j] - q * m[t][j];
        if (!m[i][t].is_zero()) clean = false;  // remainder of lower degree
      }
      for (size_t j = t + 1; j < n; ++j) {
        if (m[t][j].is_zero()) continue;
        FpPoly q = m[t][j] / m[t][t];
        for (size_t i = t; i < n; ++i) m[i][j] = m[i][j] - q * m[i][t];
        if (!m[t][j].is_zero()) clean = false;
      }
      if (!clean) continue;  // smaller-degree entries appeared; repeat

      // Pivot must divide the remaining block; otherwise mix in a bad row.
      bool divides = true;
      for (size_t i = t + 1; i < n && divides; ++i)
        for (size_t j = t + 1; j < n && divides; ++j)
          if (!(m[i][j] % m[t][t]).is_zero()) {
            for (size_t c = t; c < n; ++c) m[t][c] = m[t][c] + m[i][c];
            divides = false;
          }
      if (divides) break;
    }
    m[t][t] = m[t][t].monic();
    (void)p;
  }
}

}  // namespace

std::vector<FpPoly> invariant_factors(const FpMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("invariant_factors: need square");
  uint32_t p = a.modulus();
  size_t n = a.rows();
  PolyMat m(n, std::vector<FpPoly>(n, FpPoly(p)));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      std::vector<uint32_t> cs{negmod(a.at(i, j), p)};
      if (i == j) cs.push_back(1);  // x on the diagonal
      m[i][j] = FpPoly(p, std::move(cs));
    }
  smith_reduce(m, p);
  std::vector<FpPoly> out;
  for (size_t i = 0; i < n; ++i)
    if (m[i][i].degree() > 0) out.push_back(m[i][i]);
  return out;  // divisibility order falls out of the reduction
}

FpMatrix rational_canonical_form(const FpMatrix& a) {
  uint32_t p = a.modulus();
  auto inv = invariant_factors(a);
  FpMatrix out(p, a.rows(), a.cols());
  size_t off = 0;
  for (const auto& f : inv) {
    FpMatrix c = FpMatrix::companion(f);
    for (size_t i = 0; i < c.rows(); ++i)
      for (size_t j = 0; j < c.cols(); ++j) out.at(off + i, off + j) = c.at(i, j);
    off += c.rows();
  }
  if (off != a.rows()) throw std::logic_error("rcf: invariant factor degrees do not sum to n");
  return out;
}

bool are_conjugate(const FpMatrix& a, const FpMatrix& b) {
  if (a.modulus() != b.modulus() || a.rows() != b.rows() || a.cols() != b.cols()) return false;
  auto fa = invariant_factors(a);
  auto fb = invariant_factors(b);
  if (fa.size() != fb.size()) return false;
  for (size_t i = 0; i < fa.size(); ++i)
    if (!(fa[i] == fb[i])) return false;
  return true;
}

}  // namespace heckelab

#include "heckelab/hecke_algebra.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "heckelab/arith.hpp"
#include "heckelab/finite_field.hpp"
#include "heckelab/fp.hpp"

namespace heckelab {

std::string OperatorLabel::str() const { return std::string(1, kind) + std::to_string(n); }

namespace {

std::vector<int64_t> primes_up_to(int64_t n) {
  std::vector<int64_t> out;
  for (int64_t m = 2; m <= n; ++m) {
    bool prime = true;
    for (int64_t q = 2; q * q <= m; ++q)
      if (m % q == 0) {
        prime = false;
        break;
      }
    if (prime) out.push_back(m);
  }
  return out;
}

FpPoly poly_pow(const FpPoly& f, int e) {
  FpPoly r = FpPoly::one(f.modulus());
  for (int i = 0; i < e; ++i) r = r * f;
  return r;
}

// Basis of the unital algebra generated by gens inside End(F_p^w), found by
// multiplying known basis elements by generators until the span stops
// growing.
std::vector<FpMatrix> close_algebra(uint32_t p, size_t w, const std::vector<FpMatrix>& gens) {
  std::vector<FpMatrix> basis;
  if (w == 0) return basis;
  VectorSpan span(p, w * w);
  FpMatrix id = FpMatrix::identity(p, w);
  span.insert(id.flatten());
  basis.push_back(id);
  for (size_t i = 0; i < basis.size(); ++i)
    for (const auto& g : gens) {
      FpMatrix prod = basis[i] * g;
      if (span.insert(prod.flatten())) basis.push_back(prod);
    }
  return basis;
}

std::vector<int64_t> fundamental_discriminants(int64_t N) {
  std::vector<int64_t> out;
  for (int64_t m : divisors(4 * N))
    for (int64_t s : {int64_t{1}, int64_t{-1}}) {
      int64_t D = s * m;
      if (D == 1) continue;
      bool fund = false;
      if ((((D % 4) + 4) % 4) == 1 && is_squarefree(D < 0 ? -D : D)) {
        fund = true;
      } else if (D % 4 == 0) {
        int64_t q = D / 4;
        int64_t r = ((q % 4) + 4) % 4;
        if ((r == 2 || r == 3) && is_squarefree(q < 0 ? -q : q)) fund = true;
      }
      if (fund) out.push_back(D);
    }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

HeckeAlgebra generate_algebra(const ModularSymbolSpace& sp,
                              std::optional<int64_t> sturm_override) {
  if (sturm_override && *sturm_override < 1)
    throw std::invalid_argument("generate_algebra: sturm override must be >= 1");
  HeckeAlgebra alg;
  alg.p = sp.p();
  alg.group = sp.group();
  alg.sturm_bound = sturm_override.value_or(sp.invariants().sturm_bound);
  alg.space_dim = sp.cuspidal_dim();

  std::vector<int64_t> ls = primes_up_to(alg.sturm_bound);
  if (std::find(ls.begin(), ls.end(), static_cast<int64_t>(alg.p)) == ls.end()) {
    ls.push_back(alg.p);
    std::sort(ls.begin(), ls.end());
  }
  for (int64_t l : ls) {
    alg.labels.push_back({'T', l});
    alg.generators.push_back(sp.hecke_matrix(l));
  }
  if (alg.group.kind == GroupKind::Gamma1) {
    // <d> and <N-d> coincide in weight 2, so one of each pair suffices.
    int64_t N = alg.group.level;
    for (int64_t d = 2; 2 * d < N; ++d)
      if (std::gcd(d, N) == 1) {
        alg.labels.push_back({'D', d});
        alg.generators.push_back(sp.diamond_matrix(d));
      }
  }
  for (size_t i = 0; i < alg.labels.size(); ++i) {
    if (alg.labels[i].kind == 'T' && alg.labels[i].n == static_cast<int64_t>(alg.p))
      alg.tp_index = i;
    else
      alg.prime_to_p.push_back(i);
  }

  alg.basis = close_algebra(alg.p, alg.space_dim, alg.generators);
  std::vector<FpMatrix> sub_gens;
  for (size_t i : alg.prime_to_p) sub_gens.push_back(alg.generators[i]);
  alg.basis_prime_to_p = close_algebra(alg.p, alg.space_dim, sub_gens);
  if (alg.basis_prime_to_p.size() > alg.basis.size())
    throw std::logic_error("hecke algebra: subalgebra larger than algebra");
  return alg;
}

namespace {

struct Piece {
  FpMatrix basis;  // columns in cuspidal coordinates
  std::vector<FpMatrix> gens;
};

// Split the cuspidal space into blocks on which every generator has a
// primary minimal polynomial; one block per maximal ideal.
std::vector<Piece> split_primary(uint32_t p, size_t w, const std::vector<FpMatrix>& gens) {
  std::vector<Piece> pieces{{FpMatrix::identity(p, w), gens}};
  for (size_t gi = 0; gi < gens.size(); ++gi) {
    std::vector<Piece> next;
    for (auto& piece : pieces) {
      auto facs = factorize_poly(min_poly(piece.gens[gi]));
      if (facs.size() <= 1) {
        next.push_back(std::move(piece));
        continue;
      }
      for (const auto& [f, e] : facs) {
        FpMatrix K = kernel_basis(eval_poly_at(poly_pow(f, e), piece.gens[gi]));
        Piece sub;
        sub.basis = piece.basis * K;
        sub.gens.reserve(piece.gens.size());
        for (const auto& h : piece.gens) sub.gens.push_back(restrict_to_basis(h, K));
        next.push_back(std::move(sub));
      }
    }
    pieces = std::move(next);
  }
  return pieces;
}

FpMatrix coord_vectors_as_columns(uint32_t p, size_t t,
                                  const std::vector<std::vector<uint32_t>>& vs) {
  FpMatrix m(p, t, vs.size());
  for (size_t j = 0; j < vs.size(); ++j)
    for (size_t i = 0; i < t; ++i) m.at(i, j) = vs[j][i];
  return m;
}

std::vector<std::vector<uint32_t>> columns_as_coord_vectors(const FpMatrix& m) {
  std::vector<std::vector<uint32_t>> out(m.cols(), std::vector<uint32_t>(m.rows()));
  for (size_t j = 0; j < m.cols(); ++j)
    for (size_t i = 0; i < m.rows(); ++i) out[j][i] = m.at(i, j);
  return out;
}

FqElement eval_at_fq(const FpPoly& f, const FqElement& x) {
  FqElement acc = x.field()->zero();
  for (int i = f.degree(); i >= 0; --i)
    acc = acc * x + x.field()->from_prime_field(f.coeff(i));
  return acc;
}

bool eisenstein_test(const LocalFactor& lf, const HeckeAlgebra& alg) {
  // Eigenvalue systems congruent to those of an Eisenstein series with
  // quadratic characters: a_l = chi(l)(1 + l) for l prime to Np.  Factors
  // with residually nontrivial diamond action are left unflagged.
  uint32_t p = alg.p;
  size_t k = lf.residue.degree;
  auto is_scalar_value = [&](const std::vector<uint32_t>& v, uint32_t c) {
    if (v[0] != c) return false;
    for (size_t i = 1; i < k; ++i)
      if (v[i] != 0) return false;
    return true;
  };
  std::vector<std::pair<size_t, int64_t>> tested;  // generator index, prime l
  for (size_t i = 0; i < alg.labels.size(); ++i) {
    if (alg.labels[i].kind == 'D') {
      if (!is_scalar_value(lf.residue.eigenvalues[i], 1)) return false;
      continue;
    }
    int64_t l = alg.labels[i].n;
    if (l == static_cast<int64_t>(p) || alg.group.level % l == 0) continue;
    tested.push_back({i, l});
  }
  if (tested.empty()) return false;

  std::vector<int64_t> discs = fundamental_discriminants(alg.group.level);
  discs.insert(discs.begin(), 1);  // trivial character
  for (int64_t D : discs) {
    bool all = true;
    for (const auto& [gi, l] : tested) {
      int chi = (D == 1) ? 1 : kronecker(D, l);
      uint32_t rhs = reduce_int(static_cast<int64_t>(chi) * (1 + l), p);
      if (!is_scalar_value(lf.residue.eigenvalues[gi], rhs)) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

}  // namespace

FpMatrix factor_element(const LocalFactor& f, const std::vector<uint32_t>& coords) {
  if (coords.size() != f.algebra_basis.size())
    throw std::invalid_argument("factor_element: coordinate length mismatch");
  uint32_t p = f.algebra_basis.empty() ? 0 : f.algebra_basis[0].modulus();
  FpMatrix acc(p, f.block_dim, f.block_dim);
  for (size_t i = 0; i < coords.size(); ++i)
    if (coords[i]) acc = acc + f.algebra_basis[i].scaled(coords[i]);
  return acc;
}

std::vector<LocalFactor> local_factors(const ModularSymbolSpace& sp, const HeckeAlgebra& alg) {
  uint32_t p = alg.p;
  size_t w = alg.space_dim;
  std::vector<LocalFactor> out;
  if (w == 0) return out;
  if (sp.cuspidal_dim() != w) throw std::invalid_argument("local_factors: space mismatch");

  std::vector<Piece> pieces = split_primary(p, w, alg.generators);
  size_t block_total = 0, algebra_total = 0;

  for (auto& piece : pieces) {
    LocalFactor lf;
    lf.subspace = piece.basis;
    lf.block_dim = piece.basis.cols();
    lf.gen_restricted = piece.gens;
    block_total += lf.block_dim;

    for (const auto& g : lf.gen_restricted) {
      auto facs = factorize_poly(min_poly(g));
      if (facs.size() != 1)
        throw std::logic_error("local_factors: block not primary");
      lf.gen_irreducible.push_back(facs[0].first);
    }

    size_t wm = lf.block_dim;
    VectorSpan aspan(p, wm * wm);
    for (const auto& b : alg.basis) {
      FpMatrix br = restrict_to_basis(b, piece.basis);
      if (aspan.insert(br.flatten())) lf.algebra_basis.push_back(br);
    }
    size_t t = lf.algebra_basis.size();
    lf.dim_local = t;
    algebra_total += t;

    auto coords_of = [&](const FpMatrix& m) {
      auto c = aspan.coordinates(m.flatten());
      if (!c) throw std::logic_error("local_factors: element outside local algebra");
      return *c;
    };

    // Maximal ideal: generated by the f_g(g), spanned by basis multiples.
    VectorSpan mspan(p, t);
    std::vector<std::vector<uint32_t>> mvecs;
    for (size_t gi = 0; gi < lf.gen_restricted.size(); ++gi) {
      FpMatrix x = eval_poly_at(lf.gen_irreducible[gi], lf.gen_restricted[gi]);
      for (const auto& b : lf.algebra_basis) {
        auto v = coords_of(b * x);
        if (mspan.insert(v)) mvecs.push_back(v);
      }
    }
    lf.maximal_ideal = mvecs;
    size_t dm = mvecs.size();
    if (dm >= t) throw std::logic_error("local_factors: maximal ideal is the whole ring");
    size_t k = t - dm;

    // The ideal is nil: successive powers must reach zero.
    {
      std::vector<FpMatrix> gens_m, cur;
      for (const auto& v : lf.maximal_ideal) gens_m.push_back(factor_element(lf, v));
      cur = gens_m;
      size_t steps = 0;
      while (!cur.empty()) {
        if (++steps > t) throw std::logic_error("local_factors: maximal ideal not nilpotent");
        VectorSpan s(p, wm * wm);
        std::vector<FpMatrix> nxt;
        for (const auto& x : cur)
          for (const auto& y : gens_m) {
            FpMatrix prod = x * y;
            if (!prod.is_zero() && s.insert(prod.flatten())) nxt.push_back(prod);
          }
        cur = std::move(nxt);
      }
    }

    // Image of the prime-to-p subalgebra and its trace of the maximal ideal.
    VectorSpan pspan(p, t);
    std::vector<std::vector<uint32_t>> pvecs;
    for (const auto& b : alg.basis_prime_to_p) {
      auto v = coords_of(restrict_to_basis(b, piece.basis));
      if (pspan.insert(v)) pvecs.push_back(v);
    }
    lf.prime_to_p_sub = pvecs;
    lf.ideal_mp = columns_as_coord_vectors(column_space_intersection(
        coord_vectors_as_columns(p, t, lf.maximal_ideal),
        coord_vectors_as_columns(p, t, lf.prime_to_p_sub)));

    // Multiplication-by matrices in algebra coordinates, then socles as
    // kernel intersections.
    auto mult_matrix = [&](const std::vector<uint32_t>& yc) {
      FpMatrix y = factor_element(lf, yc);
      FpMatrix m(p, t, t);
      for (size_t j = 0; j < t; ++j) {
        auto c = coords_of(lf.algebra_basis[j] * y);
        for (size_t i = 0; i < t; ++i) m.at(i, j) = c[i];
      }
      return m;
    };
    auto annihilator = [&](const std::vector<std::vector<uint32_t>>& ideal) {
      if (ideal.empty()) {
        std::vector<std::vector<uint32_t>> all(t, std::vector<uint32_t>(t, 0));
        for (size_t i = 0; i < t; ++i) all[i][i] = 1;
        return all;
      }
      FpMatrix stacked(p, ideal.size() * t, t);
      for (size_t a = 0; a < ideal.size(); ++a) {
        FpMatrix m = mult_matrix(ideal[a]);
        for (size_t i = 0; i < t; ++i)
          for (size_t j = 0; j < t; ++j) stacked.at(a * t + i, j) = m.at(i, j);
      }
      return columns_as_coord_vectors(kernel_basis(stacked));
    };
    lf.socle_m = annihilator(lf.maximal_ideal);
    lf.socle_mp = annihilator(lf.ideal_mp);

    // Residue field via a primitive element of T/m.
    VectorSpan qspan(p, t);
    for (const auto& v : lf.maximal_ideal) qspan.insert(v);
    std::vector<std::vector<uint32_t>> reps;
    for (size_t i = 0; i < t && reps.size() < k; ++i) {
      std::vector<uint32_t> e(t, 0);
      e[i] = 1;
      if (qspan.insert(e)) reps.push_back(e);
    }
    if (reps.size() != k) throw std::logic_error("local_factors: quotient basis failure");
    auto qcoords = [&](const std::vector<uint32_t>& v) {
      auto c = qspan.coordinates(v);
      if (!c) throw std::logic_error("local_factors: quotient coordinates failure");
      return std::vector<uint32_t>(c->begin() + dm, c->end());
    };
    auto qlift = [&](const std::vector<uint32_t>& qc) {
      std::vector<uint32_t> v(t, 0);
      for (size_t j = 0; j < k; ++j)
        for (size_t i = 0; i < t; ++i)
          v[i] = addmod(v[i], mulmod(qc[j], reps[j][i], p), p);
      return v;
    };
    auto qmul_matrix = [&](const std::vector<uint32_t>& qc) {
      FpMatrix x = factor_element(lf, qlift(qc));
      FpMatrix m(p, k, k);
      for (size_t j = 0; j < k; ++j) {
        auto c = qcoords(coords_of(factor_element(lf, reps[j]) * x));
        for (size_t i = 0; i < k; ++i) m.at(i, j) = c[i];
      }
      return m;
    };

    std::vector<std::vector<uint32_t>> gen_images;
    for (size_t gi = 0; gi < lf.gen_restricted.size(); ++gi)
      gen_images.push_back(qcoords(coords_of(restrict_to_basis(
          alg.generators[gi], piece.basis))));

    std::vector<uint32_t> theta(k, 0);
    FpPoly modulus = FpPoly::x(p);
    if (k > 1) {
      bool found = false;
      std::vector<std::vector<uint32_t>> candidates = gen_images;
      for (size_t i = 0; i < gen_images.size() && !found; ++i)
        for (size_t j = i + 1; j < gen_images.size(); ++j)
          for (uint32_t c = 1; c < p; ++c) {
            std::vector<uint32_t> v(k);
            for (size_t a = 0; a < k; ++a)
              v[a] = addmod(gen_images[i][a], mulmod(c, gen_images[j][a], p), p);
            candidates.push_back(v);
          }
      uint64_t state = 0x9e3779b97f4a7c15ull;
      for (size_t tries = 0; !found; ++tries) {
        std::vector<uint32_t> cand;
        if (tries < candidates.size()) {
          cand = candidates[tries];
        } else {
          cand.resize(k);
          for (size_t a = 0; a < k; ++a) {
            state = state * 6364136223846793005ull + 1442695040888963407ull;
            cand[a] = static_cast<uint32_t>((state >> 33) % p);
          }
        }
        FpPoly mp = min_poly(qmul_matrix(cand));
        if (mp.degree() == static_cast<int>(k)) {
          theta = cand;
          modulus = mp;
          found = true;
        }
      }
    }
    if (!is_irreducible(modulus))
      throw std::logic_error("local_factors: residue modulus not irreducible");

    // Rewrite eigenvalues in the power basis of theta.
    FpMatrix mtheta = qmul_matrix(theta);
    FpMatrix pb(p, k, k);
    std::vector<uint32_t> v0 = qcoords(coords_of(FpMatrix::identity(p, wm)));
    for (size_t j = 0; j < k; ++j) {
      for (size_t i = 0; i < k; ++i) pb.at(i, j) = v0[i];
      v0 = mtheta.apply(v0);
    }
    auto pbinv = inverse(pb);
    if (!pbinv) throw std::logic_error("local_factors: power basis singular");
    lf.residue.modulus = modulus;
    lf.residue.degree = k;
    for (const auto& gimg : gen_images) lf.residue.eigenvalues.push_back(pbinv->apply(gimg));

    // Each generator's residue must be a root of its irreducible factor.
    auto field = FiniteField::make(p, modulus);
    for (size_t gi = 0; gi < lf.gen_irreducible.size(); ++gi) {
      FqElement root = field->from_coeffs(lf.residue.eigenvalues[gi]);
      if (!eval_at_fq(lf.gen_irreducible[gi], root).is_zero())
        throw std::logic_error("local_factors: eigenvalue root check failed");
    }

    lf.ordinary = !(lf.gen_irreducible[alg.tp_index] == FpPoly::x(p));
    lf.gorenstein = lf.socle_m.size() == k;
    FpMatrix fp_tp = eval_poly_at(lf.gen_irreducible[alg.tp_index],
                                  lf.gen_restricted[alg.tp_index]);
    lf.tp_socle_obstruction = false;
    for (const auto& s : lf.socle_mp)
      if (!(factor_element(lf, s) * fp_tp).is_zero()) {
        lf.tp_socle_obstruction = true;
        break;
      }
    // T[m] is a vector space over the residue field, so k divides its F_p-dimension.
    if (lf.socle_m.size() % k != 0)
      throw std::logic_error("local_factors: socle dimension not divisible by residue degree");
    int64_t num = static_cast<int64_t>(lf.socle_m.size() / k) + 1;
    lf.r_num = (num % 2 == 0) ? num / 2 : num;
    lf.r_den = (num % 2 == 0) ? 1 : 2;

    lf.eisenstein_flag = eisenstein_test(lf, alg);
    // Weight-one signal: either the prime-to-p socle strictly exceeds the full
    // socle (T_p fails to act as a scalar there), or the factor fails Gorenstein
    // duality (r > 1), which forces a scalar Frobenius weight-one system.
    lf.weight_one_signature = lf.ordinary && !lf.eisenstein_flag &&
                              (lf.socle_mp.size() > lf.socle_m.size() || !lf.gorenstein);
    out.push_back(std::move(lf));
  }

  if (block_total != w) throw std::logic_error("local_factors: blocks do not cover the space");
  if (algebra_total != alg.dim())
    throw std::logic_error("local_factors: local dimensions do not sum to dim T");

  std::stable_sort(out.begin(), out.end(), [](const LocalFactor& a, const LocalFactor& b) {
    if (a.block_dim != b.block_dim) return a.block_dim < b.block_dim;
    if (a.dim_local != b.dim_local) return a.dim_local < b.dim_local;
    if (a.residue.degree != b.residue.degree) return a.residue.degree < b.residue.degree;
    if (a.residue.modulus.coeffs() != b.residue.modulus.coeffs())
      return a.residue.modulus.coeffs() < b.residue.modulus.coeffs();
    return a.residue.eigenvalues < b.residue.eigenvalues;
  });
  return out;
}

}  // namespace heckelab

#include "heckelab/dieudonne.hpp"

#include <stdexcept>

#include "heckelab/fp.hpp"
#include "heckelab/rcf.hpp"

namespace heckelab {

namespace {

uint64_t pow_u64_checked(uint64_t base, uint32_t exp, const char* what) {
  uint64_t r = 1;
  for (uint32_t i = 0; i < exp; ++i) {
    if (r > (uint64_t(1) << 40) / base)
      throw std::invalid_argument(std::string(what) + ": modulus too large");
    r *= base;
  }
  return r;
}

uint64_t inverse_mod(uint64_t a, uint64_t m) {
  int64_t t = 0, nt = 1;
  int64_t r = static_cast<int64_t>(m), nr = static_cast<int64_t>(a % m);
  while (nr != 0) {
    int64_t q = r / nr;
    t -= q * nt;
    std::swap(t, nt);
    r -= q * nr;
    std::swap(r, nr);
  }
  if (r != 1) throw std::invalid_argument("inverse_mod: not a unit");
  return static_cast<uint64_t>(t < 0 ? t + static_cast<int64_t>(m) : t);
}

// All elements of F_q in a deterministic order (coefficient counting).
std::vector<FqElement> field_elements(const FieldPtr& field) {
  uint32_t p = field->p();
  int d = field->degree();
  std::vector<FqElement> out;
  std::vector<uint32_t> cs(static_cast<size_t>(d), 0);
  for (;;) {
    out.push_back(field->from_coeffs(cs));
    int i = 0;
    while (i < d && ++cs[static_cast<size_t>(i)] == p) cs[static_cast<size_t>(i++)] = 0;
    if (i == d) break;
  }
  return out;
}

}  // namespace

DieudonneModule connected_etale_dual_module(const FpMatrix& V) {
  if (V.rows() != V.cols()) throw std::invalid_argument("module: V must be square");
  if (!inverse(V))
    throw std::domain_error("V must be bijective: connected with etale dual");
  DieudonneModule m;
  m.p = V.modulus();
  m.n = V.rows();
  m.V = V;
  m.F = FpMatrix(V.modulus(), V.rows(), V.rows());
  return m;
}

ConjugacyCertificate transpose_conjugacy_certificate(const FpMatrix& A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("certificate: matrix must be square");
  if (!inverse(A))
    throw std::domain_error("V must be bijective: connected with etale dual");
  ConjugacyCertificate cert;
  cert.frobenius_rep = A.transpose();
  cert.invariants_v = invariant_factors(A);
  cert.invariants_f = invariant_factors(cert.frobenius_rep);
  cert.conjugate = cert.invariants_v == cert.invariants_f;
  cert.dim = A.rows();
  return cert;
}

TruncatedWitt::TruncatedWitt(FieldPtr field) : field_(std::move(field)) {
  q_ = 1;
  for (int i = 0; i < field_->degree(); ++i) q_ *= field_->p();
}

TruncatedWitt::Elt TruncatedWitt::teichmuller(const FqElement& a) const {
  return {a, field_->zero()};
}

TruncatedWitt::Elt TruncatedWitt::add(const Elt& x, const Elt& y) const {
  FqElement a = x.a + y.a;
  FqElement b = x.b + y.b;
  // p = -pi for p = 2, so adding Teichmueller parts carries (ac)^(1/p) into
  // the pi-component; for p >= 3 the prime vanishes in O/pi^2 O.
  if (field_->p() == 2) b = b + (x.a * y.a).pow(q_ / 2);
  return {a, b};
}

TruncatedWitt::Elt TruncatedWitt::neg(const Elt& x) const {
  if (field_->p() != 2) {
    FqElement z = field_->zero();
    return {z - x.a, z - x.b};
  }
  // -(a + b pi) = a + (a + b) pi, since -1 = 1 + pi in W(F_q)/4.
  return {x.a, x.a + x.b};
}

TruncatedWitt::Elt TruncatedWitt::sub(const Elt& x, const Elt& y) const {
  return add(x, neg(y));
}

TruncatedWitt::Elt TruncatedWitt::mul(const Elt& x, const Elt& y) const {
  return {x.a * y.a, x.a * y.b + x.b * y.a};
}

TruncatedWitt::Elt TruncatedWitt::times_pi(const Elt& x) const {
  return {field_->zero(), x.a};
}

WittKernelReport witt_kernel_check(uint32_t p, int k) {
  require_prime_modulus(p);
  if (k < 1) throw std::invalid_argument("witt_kernel_check: degree must be positive");
  uint64_t q = 1;
  for (int i = 0; i < k; ++i) {
    q *= p;
    if (q > 256) throw std::invalid_argument("witt_kernel_check: q must not exceed 256");
  }

  auto field = FiniteField::make(p, k);
  TruncatedWitt ring(field);
  auto elems = field_elements(field);

  WittKernelReport rep;
  rep.p = p;
  rep.k = k;
  rep.q = q;
  rep.graph_of_inverse_frobenius = true;

  for (const auto& y0 : elems) {
    for (const auto& ym1 : elems) {
      ++rep.pairs_checked;
      auto diff = ring.sub(ring.teichmuller(y0), ring.teichmuller(ym1.pow(p)));
      bool in_kernel = ring.is_zero(ring.times_pi(diff));
      bool on_graph = ym1 == y0.pow(q / p);  // y_{-1} = y_0^(1/p)
      if (in_kernel) ++rep.kernel_count;
      if (in_kernel != on_graph) rep.graph_of_inverse_frobenius = false;
    }
  }
  return rep;
}

HondaReport honda_unit_example(uint32_t p, uint32_t n, uint64_t v_unit) {
  require_prime_modulus(p);
  if (n < 2) throw std::invalid_argument("honda_unit_example: need n >= 2");
  uint64_t m = pow_u64_checked(p, n, "honda_unit_example");
  v_unit %= m;
  if (v_unit % p != 1)
    throw std::invalid_argument("honda_unit_example: V must be a unit congruent to 1 mod p");

  HondaReport rep;
  rep.data.p = p;
  rep.data.n = n;
  rep.data.modulus = m;
  rep.data.v_unit = v_unit;
  rep.data.f_elem = (p * inverse_mod(v_unit, m)) % m;

  if ((rep.data.f_elem * v_unit) % m != p % m)
    throw std::logic_error("honda_unit_example: F V != p");
  rep.f_generates_p_times_module =
      rep.data.f_elem % p == 0 && (rep.data.f_elem / p) % p != 0;
  rep.v_trivial_on_quotient = v_unit % p == 1;
  rep.v_nontrivial_on_module = v_unit != 1;
  rep.degenerate = v_unit == 1;
  return rep;
}

FrobeniusPointData frobenius_on_points(const FpMatrix& A) {
  if (A.rows() != A.cols())
    throw std::invalid_argument("frobenius_on_points: matrix must be square");
  auto ainv = inverse(A);
  if (!ainv) throw std::domain_error("V must be bijective: connected with etale dual");

  const uint32_t p = A.modulus();
  const size_t n = A.rows();

  // Splitting degree: the multiplicative order of A, since every solution of
  // sigma(c) = c A^(-1) satisfies sigma^e(c) = c A^(-e).
  FpMatrix id = FpMatrix::identity(p, n);
  int d = 1;
  FpMatrix power = A;
  while (!(power == id)) {
    power = power * A;
    if (++d > 64)
      throw std::invalid_argument("frobenius_on_points: order of A exceeds 64");
  }

  auto field = FiniteField::make(p, d);
  const size_t nd = n * static_cast<size_t>(d);
  const uint64_t q = [&] {
    uint64_t r = 1;
    for (int i = 0; i < d; ++i) r *= p;
    return r;
  }();

  // Matrix of x -> x^p on F_q in the power basis.
  std::vector<std::vector<uint32_t>> frob_cols;
  for (int e = 0; e < d; ++e)
    frob_cols.push_back(field->gen().pow(static_cast<uint64_t>(e)).frobenius().coeffs());

  // F_p-linear system for sigma(c) = c A^(-1), unknown (i, e) -> c_i's
  // e-th coefficient.
  FpMatrix sys(p, nd, nd);
  for (size_t j = 0; j < n; ++j)
    for (int f = 0; f < d; ++f)
      for (size_t i = 0; i < n; ++i)
        for (int e = 0; e < d; ++e) {
          uint32_t val = 0;
          if (i == j) val = frob_cols[static_cast<size_t>(e)][static_cast<size_t>(f)];
          if (f == e) val = reduce_int(static_cast<int64_t>(val) - ainv->at(i, j), p);
          sys.at(j * static_cast<size_t>(d) + static_cast<size_t>(f),
                 i * static_cast<size_t>(d) + static_cast<size_t>(e)) = val;
        }

  FpMatrix K = kernel_basis(sys);
  if (K.cols() != n)
    throw std::logic_error("frobenius_on_points: solution space has wrong dimension");

  // Rows of the evaluation matrix: solution i gives c^(i) in F_q^n.
  std::vector<std::vector<FqElement>> c(n);
  for (size_t i = 0; i < n; ++i)
    for (size_t jj = 0; jj < n; ++jj) {
      std::vector<uint32_t> cs(static_cast<size_t>(d));
      for (int e = 0; e < d; ++e)
        cs[static_cast<size_t>(e)] = K.at(jj * static_cast<size_t>(d) + static_cast<size_t>(e), i);
      c[i].push_back(field->from_coeffs(cs));
    }

  VectorSpan span(p, nd);
  for (size_t i = 0; i < n; ++i) {
    std::vector<uint32_t> flat(nd);
    for (size_t r = 0; r < nd; ++r) flat[r] = K.at(r, i);
    if (!span.insert(flat)) throw std::logic_error("frobenius_on_points: dependent solutions");
  }

  // The geometric Frobenius sends c to sigma^(-1)(c) = c A; its coordinates
  // in the solution basis are the rows of B.  Both expressions are computed
  // and compared, which re-checks the semilinear solve.
  FpMatrix b_rows(p, n, n);
  for (size_t i = 0; i < n; ++i) {
    std::vector<FqElement> w;
    for (size_t jj = 0; jj < n; ++jj) {
      FqElement s = field->zero();
      for (size_t t = 0; t < n; ++t)
        s = s + c[i][t] * field->from_prime_field(A.at(t, jj));
      if (s != c[i][jj].pow(q / p))
        throw std::logic_error("frobenius_on_points: semilinear identity failed");
      w.push_back(s);
    }
    std::vector<uint32_t> flat(nd);
    for (size_t jj = 0; jj < n; ++jj) {
      const auto& cs = w[jj].coeffs();
      for (int e = 0; e < d; ++e)
        flat[jj * static_cast<size_t>(d) + static_cast<size_t>(e)] = cs[static_cast<size_t>(e)];
    }
    auto coords = span.coordinates(flat);
    if (!coords)
      throw std::logic_error("frobenius_on_points: Frobenius leaves the solution space");
    for (size_t jj = 0; jj < n; ++jj) b_rows.at(i, jj) = (*coords)[jj];
  }

  FrobeniusPointData out{b_rows.transpose(), FqMatrix(field, n, n), field->modulus(), d,
                         false};

  // Evaluation matrix with the solutions as columns; then
  // transpose(A) * E = E * B, and C := E^(-1) gives transpose(A) = C^(-1) B C.
  FqMatrix ct(field, n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t jj = 0; jj < n; ++jj) ct.at(i, jj) = c[jj][i];
  FqMatrix at_q(field, n, n);
  FqMatrix b_q(field, n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t jj = 0; jj < n; ++jj) {
      at_q.at(i, jj) = field->from_prime_field(A.at(jj, i));
      b_q.at(i, jj) = field->from_prime_field(out.B.at(i, jj));
    }
  out.verified = (at_q * ct == ct * b_q);

  auto cinv = ct.inverse();
  if (!cinv) throw std::logic_error("frobenius_on_points: evaluation matrix not invertible");
  out.C = *cinv;
  return out;
}

}  // namespace heckelab

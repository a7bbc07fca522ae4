#include <doctest.h>

#include <stdexcept>

#include "heckelab/diagnostics.hpp"

using namespace heckelab;

namespace {

struct Setup {
  ModularSymbolSpace space;
  HeckeAlgebra alg;
  std::vector<LocalFactor> factors;
};

Setup run(uint32_t p, GroupKind kind, int64_t N) {
  Setup s{build_space(p, {kind, N}), {}, {}};
  s.alg = generate_algebra(s.space);
  s.factors = local_factors(s.space, s.alg);
  return s;
}

// Hand-built dual-numbers algebra F_p[e]/(e^2) acting on a two-dimensional
// column space, with T_p := lambda + e.  The identity and e form the algebra
// basis; the prime-to-p subalgebra is the scalar line.
struct Artificial {
  HeckeAlgebra alg;
  LocalFactor f;
};

Artificial dual_numbers_factor(uint32_t p, uint32_t lambda, bool nilpotent_part) {
  Artificial a;
  // Two diagonal copies of the regular representation, so the block carries
  // the algebra with multiplicity two as a genuine weight-2 factor would.
  FpMatrix tp(p, 4, 4);
  FpMatrix eps(p, 4, 4);
  for (size_t i = 0; i < 4; ++i) tp.at(i, i) = lambda;
  if (nilpotent_part) {
    tp.at(0, 1) = 1;
    tp.at(2, 3) = 1;
  }
  eps.at(0, 1) = 1;
  eps.at(2, 3) = 1;

  a.alg.p = p;
  a.alg.group = {GroupKind::Gamma0, 1};
  a.alg.space_dim = 4;
  a.alg.labels = {{'T', p}};
  a.alg.generators = {tp};
  a.alg.tp_index = 0;

  LocalFactor& f = a.f;
  f.subspace = FpMatrix::identity(p, 4);
  f.block_dim = 4;
  f.gen_restricted = {tp};
  FpPoly fp = FpPoly::from_ints(p, {(p - lambda) % p, 1});  // x - lambda
  f.gen_irreducible = {fp};
  f.algebra_basis = {FpMatrix::identity(p, 4), eps};
  f.dim_local = 2;
  f.maximal_ideal = {{0, 1}};
  f.prime_to_p_sub = {{1, 0}};
  f.ideal_mp = {};
  f.socle_m = {{0, 1}};
  f.socle_mp = {{1, 0}, {0, 1}};
  f.residue.modulus = FpPoly::x(p);
  f.residue.degree = 1;
  f.residue.eigenvalues = {{lambda}};
  f.ordinary = lambda != 0;
  f.gorenstein = true;
  return a;
}

bool has_entry(const DiagnosticReport& rep, const std::string& claim,
               const std::string& status) {
  for (const auto& c : rep.consistency)
    if (c.claim == claim && c.status == status) return true;
  return false;
}

}  // namespace

TEST_CASE("multiplicity formula from the socle dimension") {
  CHECK(multiplicity_from_socle(1) == Rational{1, 1});
  CHECK(multiplicity_from_socle(3) == Rational{2, 1});
  CHECK(multiplicity_from_socle(5) == Rational{3, 1});
  // Even input signals a parity violation upstream; the value stays exact.
  CHECK(multiplicity_from_socle(2) == Rational{3, 2});
  CHECK_THROWS_AS(multiplicity_from_socle(0), std::invalid_argument);
  CHECK_THROWS_AS(multiplicity_from_socle(-3), std::invalid_argument);
}

TEST_CASE("dual numbers with T_p = lambda + e: T_p is not scalar on the socle") {
  auto a = dual_numbers_factor(5, 1, true);
  CHECK_FALSE(tp_scalar_test(a.f, a.alg));

  auto rep = theorem_battery(a.f, a.alg, 0);
  REQUIRE(rep.tp_scalar_on_socle_p.has_value());
  CHECK_FALSE(*rep.tp_scalar_on_socle_p);
  REQUIRE(rep.weight_one_detected.has_value());
  CHECK(*rep.weight_one_detected);  // socle grows from 1 to 2
  CHECK(rep.dim_F_socle == 1);
  CHECK(rep.dim_F_socle_p == 2);
  REQUIRE(rep.multiplicity_r.has_value());
  CHECK(*rep.multiplicity_r == Rational{1, 1});
  CHECK(has_entry(rep, "strict socle growth equals non-scalar T_p action", "ok"));
  CHECK_FALSE(rep.has_violation());
  // Strict growth at multiplicity one concludes a weight-one form with
  // non-scalar Frobenius.
  REQUIRE(!rep.conclusions.empty());
  CHECK(rep.conclusions[0].find("strict socle growth") != std::string::npos);
}

TEST_CASE("dual numbers with scalar T_p: the criteria battery records the clash") {
  // T_p acts as the scalar 2 while the socle still grows, which cannot happen
  // for a genuine Hecke factor; the battery must record the violation.
  auto a = dual_numbers_factor(5, 2, false);
  CHECK(tp_scalar_test(a.f, a.alg));

  auto rep = theorem_battery(a.f, a.alg, 0);
  REQUIRE(rep.tp_scalar_on_socle_p.has_value());
  CHECK(*rep.tp_scalar_on_socle_p);
  CHECK(has_entry(rep, "strict socle growth equals non-scalar T_p action", "violation"));
  CHECK(rep.has_violation());
}

TEST_CASE("level 23 mod 2: clean Gorenstein report with residue field F_4") {
  auto s = run(2, GroupKind::Gamma0, 23);
  auto res = diagnose_all(s.space, s.alg, s.factors);
  REQUIRE(res.reports.size() == 1);
  const auto& rep = res.reports[0];
  CHECK(rep.ordinary);
  CHECK_FALSE(rep.eisenstein_flag);
  CHECK(rep.dim_fp_socle == 2);
  CHECK(rep.dim_F_socle == 1);  // one line over F_4
  CHECK(rep.dim_F_socle_p == 1);
  REQUIRE(rep.multiplicity_r.has_value());
  CHECK(*rep.multiplicity_r == Rational{1, 1});
  CHECK(rep.gorenstein);
  REQUIRE(rep.weight_one_detected.has_value());
  CHECK_FALSE(*rep.weight_one_detected);
  REQUIRE(rep.tp_scalar_on_socle_p.has_value());
  CHECK(*rep.tp_scalar_on_socle_p);
  CHECK_FALSE(rep.has_violation());
  CHECK(res.violation_count() == 0);
  REQUIRE(!rep.conclusions.empty());
  CHECK(rep.conclusions[0].find("no weight-one signature") != std::string::npos);
}

TEST_CASE("level 23 mod 5: ramified factor keeps multiplicity one") {
  auto s = run(5, GroupKind::Gamma0, 23);
  auto res = diagnose_all(s.space, s.alg, s.factors);
  REQUIRE(res.reports.size() == 1);
  const auto& rep = res.reports[0];
  CHECK(rep.ordinary);
  CHECK(rep.dim_F_socle == 1);
  CHECK(rep.dim_F_socle_p == 1);
  REQUIRE(rep.multiplicity_r.has_value());
  CHECK(*rep.multiplicity_r == Rational{1, 1});
  CHECK(rep.gorenstein);
  CHECK_FALSE(rep.has_violation());
}

TEST_CASE("level 11 mod 5: Eisenstein-flagged factor makes no multiplicity claim") {
  auto s = run(5, GroupKind::Gamma0, 11);
  auto res = diagnose_all(s.space, s.alg, s.factors);
  REQUIRE(res.reports.size() == 1);
  const auto& rep = res.reports[0];
  CHECK(rep.ordinary);
  CHECK(rep.eisenstein_flag);
  CHECK_FALSE(rep.multiplicity_r.has_value());
  CHECK(has_entry(rep, "residual irreducibility (heuristic Eisenstein filter)",
                  "hypothesis not met"));
  CHECK_FALSE(rep.has_violation());  // hypothesis gaps are not violations
  REQUIRE(!rep.conclusions.empty());
  CHECK(rep.conclusions[0].find("no multiplicity claim") != std::string::npos);
}

TEST_CASE("level 37 mod 2: congruent curves give a non-ordinary factor") {
  // The elliptic-point relations drop rank mod 2, so a flagged extra line
  // splits off next to the genuine factor of the 2-congruent pair 37a, 37b.
  auto s = run(2, GroupKind::Gamma0, 37);
  REQUIRE_FALSE(s.space.h1_identification_guaranteed());
  auto res = diagnose_all(s.space, s.alg, s.factors);
  REQUIRE(res.reports.size() == 2);
  size_t idx = res.reports[0].ordinary ? 1 : 0;
  const auto& rep = res.reports[idx];
  CHECK_FALSE(rep.ordinary);
  CHECK(rep.dim_fp_socle == 1);  // 37a and 37b glue into one 2-dimensional local ring
  CHECK_FALSE(rep.tp_scalar_on_socle_p.has_value());
  CHECK_FALSE(rep.weight_one_detected.has_value());
  CHECK_FALSE(rep.multiplicity_r.has_value());
  CHECK(has_entry(rep, "ordinarity hypothesis", "hypothesis not met"));
  CHECK(rep.conclusions.empty());
}

TEST_CASE("level 37 mod 7: two clean reports and scan metadata") {
  auto s = run(7, GroupKind::Gamma0, 37);
  auto res = diagnose_all(s.space, s.alg, s.factors);
  CHECK(res.p == 7);
  CHECK(res.space_dim == 4);
  CHECK(res.algebra_dim == 2);
  CHECK(res.h1_identification_guaranteed);
  REQUIRE(res.reports.size() == 2);
  for (const auto& rep : res.reports) {
    CHECK(rep.ordinary);
    CHECK_FALSE(rep.eisenstein_flag);
    REQUIRE(rep.multiplicity_r.has_value());
    CHECK(*rep.multiplicity_r == Rational{1, 1});
    CHECK(has_entry(rep, "cuspidal block dimension is twice the local algebra dimension",
                    "ok"));
    CHECK_FALSE(rep.has_violation());
  }
  CHECK(res.violation_count() == 0);
}

#include <doctest.h>

#include <fstream>
#include <nlohmann/json.hpp>

#include "oracle_helpers.hpp"

// Consistency of the reference machinery itself, plus a guard that the
// frozen fixture files equal what the oracles recompute today.

using nlohmann::json;

TEST_CASE("sigma and class numbers") {
  CHECK(oracle::sigma1(1) == 1);
  CHECK(oracle::sigma1(6) == 12);
  CHECK(oracle::sigma1(19) == 20);
  // h(-D) table: Cohen, Table B.1
  CHECK(oracle::class_number(-3) == 1);
  CHECK(oracle::class_number(-4) == 1);
  CHECK(oracle::class_number(-15) == 2);
  CHECK(oracle::class_number(-23) == 3);
  CHECK(oracle::class_number(-47) == 5);
  CHECK(oracle::class_number(-71) == 7);
  CHECK(oracle::class_number(-163) == 1);
}

TEST_CASE("eta product and point counts agree for level 11") {
  auto a = oracle::eta_square_coeffs(11, 40);
  CHECK(a[1] == 1);
  CHECK(a[11] == 1);  // U_11 eigenvalue of the level-11 newform
  for (long long l : {2, 3, 5, 7, 13, 17, 19, 23, 29, 31, 37}) {
    CHECK(a[static_cast<size_t>(l)] == oracle::curve_ap(oracle::curve_11a, l));
  }
  // multiplicativity sanity: a_6 = a_2 a_3, a_4 = a_2^2 - 2
  CHECK(a[6] == a[2] * a[3]);
  CHECK(a[4] == a[2] * a[2] - 2);
}

TEST_CASE("trace formula against isolated newforms") {
  // genus-1 prime levels: S_2 is spanned by the single newform, so the trace
  // of T_n equals its coefficient a_n.
  for (long long n : {1, 2, 3, 4, 5, 6, 7, 9, 13, 17, 19}) {
    CHECK(oracle::trace_tn_weight2(11, n) ==
          [&] {
            auto c = oracle::eta_square_coeffs(11, 40);
            return c[static_cast<size_t>(n)];
          }());
  }
  for (long long l : {2, 3, 5, 7, 11, 13, 19}) {
    CHECK(oracle::trace_tn_weight2(17, l) == oracle::curve_ap(oracle::curve_17a, l));
  }
  for (long long l : {2, 3, 5, 7, 11, 13, 17}) {
    CHECK(oracle::trace_tn_weight2(19, l) == oracle::curve_ap(oracle::curve_19a, l));
  }
  // genus-2 level 37: trace = a_l(37a) + a_l(37b)
  for (long long l : {2, 3, 5, 7, 11, 13, 17, 19}) {
    CHECK(oracle::trace_tn_weight2(37, l) ==
          oracle::curve_ap(oracle::curve_37a, l) + oracle::curve_ap(oracle::curve_37b, l));
  }
  // T_1 = identity, so the trace is the genus
  CHECK(oracle::trace_tn_weight2(11, 1) == 1);
  CHECK(oracle::trace_tn_weight2(23, 1) == 2);
  CHECK(oracle::trace_tn_weight2(37, 1) == 2);
  CHECK(oracle::trace_tn_weight2(431, 1) == 36);
}

TEST_CASE("frozen trace fixture matches the oracle") {
  std::ifstream in("tests/fixtures/gamma0_traces.json");
  REQUIRE(in.good());
  json fx = json::parse(in);
  for (const auto& entry : fx.at("traces")) {
    long long N = entry.at("level").get<long long>();
    long long n = entry.at("n").get<long long>();
    long long t = entry.at("trace").get<long long>();
    CHECK(oracle::trace_tn_weight2(N, n) == t);
  }
}

TEST_CASE("level 431 fixture is well formed") {
  std::ifstream in("tests/fixtures/kilford_431.json");
  REQUIRE(in.good());
  json fx = json::parse(in);
  CHECK(fx.at("p").get<int>() == 2);
  CHECK(fx.at("level").get<int>() == 431);
  CHECK(fx.at("genus").get<int>() == 36);
  const auto& f = fx.at("expected_factor");
  // r = (dim_F T[m] + 1) / 2 must hold inside the fixture itself
  CHECK(2 * f.at("r_num").get<int>() ==
        (f.at("socle_dim_over_F").get<int>() + 1) * f.at("r_den").get<int>());
  // Gorenstein fails exactly when the socle exceeds one residue-field line
  CHECK(f.at("socle_dim_over_F").get<int>() > 1);
  CHECK_FALSE(f.at("gorenstein").get<bool>());
  CHECK(f.at("ordinary").get<bool>());
  CHECK(f.at("weight_one_signature").get<bool>());
}

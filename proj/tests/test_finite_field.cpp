#include <doctest.h>

#include "heckelab/finite_field.hpp"

using namespace heckelab;

TEST_CASE("F_4 arithmetic") {
  auto F4 = FiniteField::make(2, FpPoly::from_ints(2, {1, 1, 1}));
  FqElement g = F4->gen();
  CHECK(g * g == g + F4->one());       // g^2 = g + 1
  CHECK(g.pow(3) == F4->one());        // multiplicative order 3
  CHECK(g.pow(4) == g);                // Frobenius fixed points are F_2 only
  CHECK(g.frobenius() == g * g);
  CHECK(F4->one().frobenius() == F4->one());
  CHECK_FALSE(g.in_prime_field());
  CHECK((g + g).is_zero());
  CHECK(g.inverse() * g == F4->one());
  CHECK(g.inverse() == g * g);
}

TEST_CASE("F_9 arithmetic") {
  auto F9 = FiniteField::make(3, FpPoly::from_ints(3, {1, 0, 1}));  // x^2 + 1
  FqElement i = F9->gen();
  CHECK(i * i == F9->from_prime_field(2));  // i^2 = -1
  for (uint32_t a = 0; a < 3; ++a)
    for (uint32_t b = 0; b < 3; ++b) {
      FqElement e = F9->from_coeffs({a, b});
      if (e.is_zero()) continue;
      CHECK(e * e.inverse() == F9->one());
      CHECK(e.pow(8) == F9->one());
      CHECK(e.pow(9) == e);
      CHECK(e.frobenius().frobenius() == e);
    }
}

TEST_CASE("constructed extension fields") {
  auto F16 = FiniteField::make(2, 4);
  CHECK(F16->degree() == 4);
  CHECK(is_irreducible(F16->modulus()));
  CHECK(F16->gen().pow(15) == F16->one());
  auto F125 = FiniteField::make(5, 3);
  CHECK(F125->gen().pow(124) == F125->one());
  CHECK_THROWS(FiniteField::make(2, FpPoly::from_ints(2, {1, 0, 1})));  // reducible
  // degree-1 field behaves like F_p itself
  auto F5 = FiniteField::make(5, 1);
  CHECK(F5->degree() == 1);
  CHECK(F5->from_prime_field(3) * F5->from_prime_field(4) == F5->from_prime_field(2));
}

TEST_CASE("matrices over F_4") {
  auto F4 = FiniteField::make(2, FpPoly::from_ints(2, {1, 1, 1}));
  FqElement g = F4->gen();
  FqMatrix m(F4, 2, 2);
  m.at(0, 0) = g;
  m.at(0, 1) = F4->one();
  m.at(1, 1) = F4->one();
  auto inv = m.inverse();
  REQUIRE(inv.has_value());
  CHECK(m * *inv == FqMatrix::identity(F4, 2));
  FqMatrix sing(F4, 2, 2);
  sing.at(0, 0) = g;
  sing.at(0, 1) = g;
  sing.at(1, 0) = g;
  sing.at(1, 1) = g;
  CHECK_FALSE(sing.inverse().has_value());
}

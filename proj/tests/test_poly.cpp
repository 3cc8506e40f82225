#include "doctest.h"
#include "hypcells/error.hpp"
#include "hypcells/poly.hpp"

using namespace hypcells;

TEST_CASE("int poly arithmetic") {
  const IntPoly a({-1, 1});
  const IntPoly b({1, 1});
  CHECK((a * b) == IntPoly({-1, 0, 1}));
  CHECK((a + b) == IntPoly({0, 2}));
  CHECK((a - a).is_zero());
  CHECK(IntPoly({0, 0, 0}).is_zero());
  CHECK(IntPoly({1, 2, 3}).truncated(1) == IntPoly({1, 2}));
  CHECK(IntPoly({1, 2}).reversed(3) == IntPoly({0, 0, 2, 1}));
  CHECK(IntPoly({1, 2}).shifted(2) == IntPoly({0, 0, 1, 2}));
  CHECK(IntPoly().degree() == -1);
}

TEST_CASE("int poly csv") {
  for (const IntPoly& p : {IntPoly(), IntPoly({1}), IntPoly({-3, 0, 7})}) CHECK(IntPoly::from_csv(p.to_csv()) == p);
  CHECK_THROWS_AS(IntPoly::from_csv("1,x"), Error);
  CHECK_THROWS_AS(IntPoly::from_csv("1,0"), Error);
  CHECK(IntPoly({-1, 1}).to_string() == "-1 + q");
}

TEST_CASE("half laurent") {
  const HalfLaurent v = HalfLaurent::monomial(1, 1);
  const HalfLaurent vinv = HalfLaurent::monomial(1, -1);
  CHECK((v * vinv) == HalfLaurent::monomial(1, 0));
  const HalfLaurent sum = v + vinv;
  CHECK(sum.low() == -1);
  CHECK(sum.high() == 1);
  CHECK(sum.coeff(0) == 0);
  CHECK((sum - v - vinv).is_zero());
  CHECK((-sum).to_string() == "-v^-1 - v");
  // P(q) = 1 + q at q^{-1}, times v^3: v^3 + v.
  CHECK(HalfLaurent::from_q_poly(IntPoly({1, 1}), 3, true) == HalfLaurent(1, {1, 0, 1}));
  CHECK(HalfLaurent::from_q_poly(IntPoly({1, 2}), 0, false) == HalfLaurent(0, {1, 0, 2}));
}

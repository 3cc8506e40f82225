#include "doctest.h"
#include "fixtures.hpp"
#include "hypcells/error.hpp"

using namespace hypcells;

namespace {

ErrorCode code_of(const nlohmann::json& cfg) {
  try {
    (void)Presentation::from_json(cfg);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::BadConfig;
}

}  // namespace

TEST_CASE("w237 coxeter matrix") {
  const Presentation& p = testing::w237().presentation();
  const Generator r = *p.find_symbol('r'), s = *p.find_symbol('s'), t = *p.find_symbol('t');
  CHECK(p.rank() == 3);
  CHECK(p.order(r, s) == CoxeterOrder(3));
  CHECK(p.order(r, t) == CoxeterOrder(2));
  CHECK(p.order(s, t) == CoxeterOrder(7));
  CHECK(p.order(s, r) == CoxeterOrder(3));
  CHECK(p.order(r, r) == CoxeterOrder(1));
}

TEST_CASE("w2224 coxeter matrix") {
  const Presentation& p = testing::w2224().presentation();
  CHECK(p.order(0, 1) == CoxeterOrder(2));
  CHECK(p.order(1, 2) == CoxeterOrder(2));
  CHECK(p.order(2, 3) == CoxeterOrder(2));
  CHECK(p.order(0, 3) == CoxeterOrder(4));
  CHECK(p.order(0, 2).infinite() == p.order(0, 2));
  CHECK_FALSE(p.order(1, 3).is_finite());
}

TEST_CASE("validation errors") {
  CHECK(code_of({{"angles", {3, 3, 3}}}) == ErrorCode::NonHyperbolic);
  CHECK(code_of({{"angles", {2, 2, 2, 2}}}) == ErrorCode::NonHyperbolic);
  CHECK(code_of({{"angles", {2, 1, 7}}}) == ErrorCode::BadDenominator);
  CHECK(code_of({{"angles", {2, 3}}}) == ErrorCode::TooFewSides);
  CHECK(code_of({{"angles", {2, 4, 5}}, {"generators", "ab"}}) == ErrorCode::BadConfig);
  CHECK_NOTHROW((void)Presentation::from_json({{"angles", {"inf", "inf", "inf"}}}));
  CHECK_NOTHROW((void)Presentation::from_json({{"angles", {2, 3, 7}}}));
}

TEST_CASE("json round trip and hash") {
  const Presentation& p = testing::w237().presentation();
  const Presentation q = Presentation::from_json(nlohmann::json::parse(p.to_json().dump()));
  CHECK(q.canonical_string() == p.canonical_string());
  CHECK(q.hash() == p.hash());
  CHECK(testing::w2224().presentation().hash() != p.hash());
}

TEST_CASE("word and set formatting") {
  const Presentation& p = testing::w237().presentation();
  CHECK(p.format_word(p.parse_word("srt")) == "srt");
  CHECK(p.format_word(Word{}) == "");
  CHECK(p.parse_set(p.format_set(0b101)) == 0b101);
  CHECK_THROWS_AS((void)p.parse_word("rx"), Error);
}

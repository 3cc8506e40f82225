#include <map>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "hypcells/ball.hpp"

using namespace hypcells;

namespace {

std::string nf(const CoxeterGroup& g, std::string_view w) { return g.format(g.normal_form(w)); }

}  // namespace

TEST_CASE("normal forms in w237") {
  const CoxeterGroup& g = testing::w237();
  CHECK(nf(g, "tr") == "rt");
  CHECK(nf(g, "srs") == "rsr");
  CHECK(nf(g, "ss") == "");
  CHECK(nf(g, "tststst") == "stststs");
  CHECK(nf(g, "stststs") == "stststs");
  CHECK(nf(g, "rsrs") == "sr");
}

TEST_CASE("small roots") {
  const CoxeterGroup& g = testing::w237();
  const SmallRootTable& t = g.small_roots();
  CHECK(t.size() >= 3);
  for (Generator s = 0; s < 3; ++s) {
    CHECK(t.action(s, s).kind == RootActionKind::NegativeSimple);
    for (std::size_t i = 0; i < t.size(); ++i) {
      const RootAction a = t.action(i, s);
      if (a.kind == RootActionKind::Root) {
        const RootAction back = t.action(a.index, s);
        CHECK(back.kind == RootActionKind::Root);
        CHECK(back.index == i);
      }
    }
  }
  const CoxeterGroup free_pair(Presentation::from_angles("p", {CoxeterOrder::infinite(), CoxeterOrder::infinite(),
                                                                CoxeterOrder::infinite()}));
  CHECK(free_pair.small_roots().size() == 3);
}

TEST_CASE("descents") {
  const CoxeterGroup& g = testing::w237();
  const Presentation& p = g.presentation();
  CHECK(g.identity().left == 0);
  CHECK(g.normal_form("rs").right == p.parse_set("s"));
  CHECK(g.normal_form("rs").left == p.parse_set("r"));
  const Element wt = g.normal_form("stststs");
  CHECK(wt.left == p.parse_set("st"));
  CHECK(wt.right == p.parse_set("st"));
  CHECK(g.normal_form("rsr").left == p.parse_set("rs"));
}

TEST_CASE("multiply") {
  const CoxeterGroup& g = testing::w237();
  const Element a = g.normal_form("srt");
  CHECK(g.multiply(a, g.identity()) == a);
  const Element s = g.normal_form("s");
  CHECK(g.multiply(s, s).is_identity());
  CHECK(g.format(g.multiply(g.normal_form("r"), g.normal_form("t"))) == "rt");
  CHECK(g.multiply(a, g.inverse(a)).is_identity());
}

TEST_CASE("ball sizes and edges") {
  const CoxeterGroup& g = testing::w237();
  CHECK(ElementBall(g, 0).size() == 1);
  CHECK(ElementBall(g, 1).size() == 4);
  const ElementBall ball(g, 8);
  // Brute-force identification of all words up to length 8 via normal forms.
  std::set<Word> seen;
  std::vector<Word> frontier{{}};
  seen.insert({});
  for (int len = 0; len < 8; ++len) {
    std::vector<Word> next;
    for (const Word& w : frontier) {
      for (Generator s = 0; s < 3; ++s) {
        Word x = w;
        x.push_back(s);
        Word n = g.normal_form(x).word;
        if (seen.insert(n).second) next.push_back(n);
      }
    }
    frontier = std::move(next);
  }
  CHECK(seen.size() == ball.size());
  for (ElementBall::Index i = 0; i < ball.size(); ++i) {
    const Element& w = ball[i];
    for (Generator s = 0; s < 3; ++s) {
      const ElementBall::Index j = ball.right(i, s);
      const ElementBall::Index k = ball.left(i, s);
      if (w.length() < 8 || contains(w.right, s)) {
        REQUIRE(j != ElementBall::kOutside);
        CHECK(ball.right(j, s) == i);
        CHECK(ball[j] == g.multiply(w, s));
      }
      if (w.length() < 8 || contains(w.left, s)) {
        REQUIRE(k != ElementBall::kOutside);
        CHECK(ball.left(k, s) == i);
        CHECK(ball[k] == g.multiply(s, w));
      }
    }
  }
  for (std::size_t i = 1; i < ball.size(); ++i) CHECK(ball[static_cast<ElementBall::Index>(i - 1)] < ball[static_cast<ElementBall::Index>(i)]);
}

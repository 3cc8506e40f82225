#include <algorithm>

#include "doctest.h"
#include "fixtures.hpp"
#include "hypcells/error.hpp"
#include "hypcells/verify.hpp"

using namespace hypcells;

namespace {

std::vector<std::string> closure_names(const Presentation& p, const char* w) {
  std::vector<std::string> out;
  for (const Word& x : braid_closure(p, p.parse_word(w)).words) out.push_back(p.format_word(x));
  return out;
}

const ConjecturalPartition& part237() {
  static const ConjecturalPartition part(testing::w237(), *validate_k(testing::w237(), 6, 10));
  return part;
}

}  // namespace

TEST_CASE("braid closure examples") {
  const Presentation& p = testing::w237().presentation();
  CHECK(closure_names(p, "rsr") == std::vector<std::string>{"rsr", "srs"});
  CHECK(closure_names(p, "r") == std::vector<std::string>{"r"});
  CHECK(closure_names(p, "rt") == std::vector<std::string>{"rt", "tr"});
  CHECK(closure_names(p, "stststs") == std::vector<std::string>{"stststs", "tststst"});
  CHECK_THROWS_AS(braid_closure(p, p.parse_word("rsrt"), 2), Error);
}

TEST_CASE("closure members share length and endpoint") {
  for (const CoxeterGroup* g : {&testing::w237(), &testing::w2224()}) {
    const ElementBall ball(*g, g->rank() == 3 ? 9 : 7);
    for (const Element& e : ball.elements()) {
      const ClosureSet c = braid_closure(g->presentation(), e.word);
      REQUIRE(c.size() >= 1);
      CHECK(std::find(c.words.begin(), c.words.end(), e.word) != c.words.end());
      for (const Word& w : c.words) {
        CHECK(w.size() == e.length());
        CHECK(g->normal_form(w) == e);
      }
    }
  }
}

TEST_CASE("oracle classification") {
  const CoxeterGroup& g = testing::w237();
  const Presentation& p = g.presentation();
  const DihedralData d = dihedral_data(p);
  CHECK(oracle_classify(p, d, p.parse_word("stststs")) == CellLabel::at(3));
  CHECK(oracle_classify(p, d, p.parse_word("rs")) == CellLabel::zero());
  CHECK(oracle_classify(p, d, {}) == CellLabel::id());
  CHECK(oracle_classify(p, d, p.parse_word("srt")) == CellLabel::at(1));
  const ElementBall ball(g, 10);
  std::size_t disagreements = 0;
  for (const Element& e : ball.elements()) {
    if (oracle_classify(p, d, e.word) != part237().classify(e)) ++disagreements;
  }
  CHECK(disagreements == 0);
}

TEST_CASE("classical KL recursion agrees with the table") {
  const CoxeterGroup& g = testing::w237();
  const ElementBall ball(g, 8);
  const KLTable table(ball);
  const ClassicalKL oracle(g, 8);
  const auto summary = kl_cross_check_all(oracle, table);
  CHECK(summary.pairs > 0);
  CHECK(summary.disagreements == 0);
  const auto idx = [&](const char* w) { return ball.index_of(g.normal_form(w)); };
  CHECK(kl_cross_check(oracle, table, idx("rsr"), idx("rsr")));
  CHECK_FALSE(oracle.bruhat_leq(g.normal_form("st").word, g.normal_form("rt").word));
  CHECK(oracle.p(g.normal_form("st").word, g.normal_form("rt").word).is_zero());
  CHECK(kl_cross_check(oracle, table, idx("st"), idx("rt")));
}

TEST_CASE("unique reduced expression census") {
  const CoxeterGroup& g = testing::w237();
  const Census c10 = unique_reduced_census(ElementBall(g, 10));
  const Census c12 = unique_reduced_census(ElementBall(g, 12));
  CHECK(c10.count() == 27);
  CHECK(c12.count() == c10.count());
  CHECK(c12.elements == c10.elements);
  for (const char* w : {"r", "s", "t", "rs", "rst"}) {
    CHECK(std::find(c10.elements.begin(), c10.elements.end(), g.normal_form(w)) != c10.elements.end());
  }
  CHECK(std::find(c10.elements.begin(), c10.elements.end(), g.normal_form("srt")) == c10.elements.end());
}

TEST_CASE("empirical cells agree with the conjectural partition") {
  const CoxeterGroup& g = testing::w237();
  const ElementBall ball(g, 12);
  const KLTable table(ball);
  const EmpiricalCells cells = empirical_cells(table);
  const auto specs = one_sided_cells(part237(), 3, ElementBall(g, 10));
  const ComparisonReport report = empirical_vs_conjectural(table, cells, part237(), 4, specs);
  CHECK(report.trusted == ball.end_of_length(8));
  CHECK(report.agreeing == report.trusted);
  CHECK(report.agreement_ratio() == 1.0);
  CHECK(report.disagreements.empty());
  CHECK(report.conjectural_labels == 5);
  CHECK(report.boundary.size() == ball.size() - report.trusted);
  const auto json = report.to_json(g.presentation());
  CHECK(json.dump() == empirical_vs_conjectural(table, cells, part237(), 4, specs).to_json(g.presentation()).dump());
}

TEST_CASE("coverage of the top cell by one-sided specs") {
  const CoxeterGroup& g = testing::w237();
  const auto specs = one_sided_cells(part237(), 3, ElementBall(g, 10));
  const CoverageCheck cov = coverage_check(part237(), 3, specs, 10);
  CHECK(cov.inside);
  CHECK_FALSE(cov.exact);
  CHECK(cov.radius == 10);
}

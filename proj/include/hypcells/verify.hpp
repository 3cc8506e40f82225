#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include <json.hpp>

#include "hypcells/cells.hpp"
#include "hypcells/conjecture.hpp"
#include "hypcells/kl.hpp"

namespace hypcells {

// All reduced expressions reachable from one reduced word by braid moves,
// sorted ShortLex. Uses only the Coxeter matrix.
struct ClosureSet {
  std::vector<Word> words;
  std::size_t size() const { return words.size(); }
};

ClosureSet braid_closure(const Presentation& p, const Word& reduced, std::size_t cap = 1'000'000);

// Label from the braid closure: levels top-down by factor scan, then C_0 for
// a singleton closure.
CellLabel oracle_classify(const Presentation& p, const DihedralData& d, const Word& reduced,
                          std::size_t cap = 1'000'000);

// classify (automata) against oracle_classify per element, and every cell
// automaton against the oracle label on every reduced word of the ball.
// Elements whose closure exceeds the cap are counted as inconclusive.
struct OracleCheck {
  std::size_t elements = 0;
  std::size_t words = 0;
  std::size_t disagreements = 0;
  std::size_t fsa_mismatches = 0;
  std::size_t inconclusive = 0;
  std::vector<Element> disagreeing;  // ShortLex order
  bool passed() const { return disagreements == 0 && fsa_mismatches == 0 && inconclusive == 0; }
};
OracleCheck oracle_equivalence(const ConjecturalPartition& part, const ElementBall& ball,
                               std::size_t cap = 1'000'000);

// Classical Kazhdan-Lusztig recursion with Bruhat order from subexpressions.
// Independent of KLTable; exponential, meant for short elements.
class ClassicalKL {
 public:
  ClassicalKL(const CoxeterGroup& g, std::size_t max_length);

  std::size_t max_length() const { return max_length_; }
  bool bruhat_leq(const Word& v, const Word& w) const;  // normal words
  const IntPoly& p(const Word& v, const Word& w) const;  // zero polynomial if v is not below w

 private:
  const CoxeterGroup* group_;
  std::size_t max_length_;
  std::map<Word, std::vector<Word>> below_;  // sorted lower Bruhat interval
  std::map<std::pair<Word, Word>, IntPoly> p_;
  IntPoly zero_;
};

// True iff the classical recursion reproduces the table entry.
bool kl_cross_check(const ClassicalKL& oracle, const KLTable& table, ElementBall::Index v, ElementBall::Index w);

struct CrossCheckSummary {
  std::size_t pairs = 0;
  std::size_t disagreements = 0;
};
CrossCheckSummary kl_cross_check_all(const ClassicalKL& oracle, const KLTable& table);

struct Census {
  std::size_t radius = 0;
  std::vector<Element> elements;  // non-identity, singleton closure
  std::size_t count() const { return elements.size(); }
};
Census unique_reduced_census(const ElementBall& ball);

struct TranslationCheck {
  std::size_t words = 0;
  std::size_t mismatches = 0;
};
// Every reduced expression of every ball element is tested against the
// element set translator * U^T, decided per element from the descents and
// oracle label of translator^-1 * x.
TranslationCheck translation_check(const OneSidedCellSpec& spec, const DihedralData& d, const ElementBall& ball);

struct CoverageCheck {
  bool exact = false;          // union of specs == Red(C_level)
  bool inside = false;         // union of specs within Red(C_level)
  std::size_t radius = 0;
  bool bounded = false;        // equal on words of length <= radius
  long first_gap = -1;         // shortest length where a word is missed
};
CoverageCheck coverage_check(const ConjecturalPartition& part, std::size_t level,
                             const std::vector<OneSidedCellSpec>& specs, std::size_t radius);

struct Disagreement {
  Element element;
  CellLabel conjectural;
  std::size_t empirical_block = 0;
};

struct ComparisonReport {
  std::string group;
  std::size_t radius = 0;
  std::size_t trust_margin = 0;
  std::size_t trusted = 0;   // elements of length <= radius - trust_margin
  std::size_t agreeing = 0;
  std::vector<Disagreement> disagreements;
  std::vector<Element> boundary;  // untrusted shell
  std::size_t empirical_blocks = 0;
  std::size_t conjectural_labels = 0;
  nlohmann::ordered_json one_sided;

  double agreement_ratio() const { return trusted == 0 ? 1.0 : static_cast<double>(agreeing) / trusted; }
  nlohmann::ordered_json to_json(const Presentation& p) const;
};

// An element agrees when the trusted members of its empirical two-sided
// block are exactly the trusted members of its conjectural cell. When specs
// are given, each is also matched against the empirical right and left cells
// on the trusted region.
ComparisonReport empirical_vs_conjectural(const KLTable& table, const EmpiricalCells& cells,
                                          const ConjecturalPartition& part, std::size_t trust_margin,
                                          const std::vector<OneSidedCellSpec>& specs = {});

}  // namespace hypcells

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hypcells/ball.hpp"
#include "hypcells/group_automata.hpp"

namespace hypcells {

// One finite polygon vertex: a generator pair with finite order.
struct DihedralEntry {
  GeneratorSet pair = 0;
  unsigned order = 0;
  Word longest;           // ShortLex-least alternating word of length `order`
  std::size_t level = 0;  // 1-based index of `order` among the distinct orders
};

struct DihedralData {
  std::vector<DihedralEntry> entries;  // sorted by (order, longest word)
  std::vector<unsigned> exponents;     // distinct orders, increasing

  std::size_t levels() const { return exponents.size(); }
  std::vector<DihedralEntry> at_level(std::size_t level) const;
  const DihedralEntry& entry_for(GeneratorSet pair) const;
};

// Throws NoFiniteVertex when every vertex is ideal.
DihedralData dihedral_data(const Presentation& p);

struct CellLabel {
  enum class Kind { Id, Zero, Level };
  Kind kind = Kind::Id;
  std::size_t level = 0;

  static CellLabel id() { return {}; }
  static CellLabel zero() { return {Kind::Zero, 0}; }
  static CellLabel at(std::size_t i) { return {Kind::Level, i}; }

  // Dense index: Id 0, Zero 1, Level(i) 1 + i.
  std::size_t index() const { return kind == Kind::Id ? 0 : kind == Kind::Zero ? 1 : 1 + level; }
  static CellLabel from_index(std::size_t i);
  std::string name() const;  // "C_id", "C_0", "C_3"

  friend bool operator==(const CellLabel& a, const CellLabel& b) { return a.index() == b.index(); }
  friend auto operator<=>(const CellLabel& a, const CellLabel& b) { return a.index() <=> b.index(); }
};

// All labels of the partition: Id, Zero, Level(1..m).
std::vector<CellLabel> all_labels(const DihedralData& d);

// Every reduced expression of w, by descent recursion. ResourceLimit past cap.
std::vector<Word> reduced_expressions(const CoxeterGroup& g, const Element& w, std::size_t cap = 1'000'000);

// Label from the set of reduced expressions; used where no automata exist.
CellLabel classify_by_expressions(const CoxeterGroup& g, const Element& w, const DihedralData& d);

// The conjectured two-sided partition as automata over the generators.
class ConjecturalPartition {
 public:
  ConjecturalPartition(const CoxeterGroup& g, ValidatedK k);
  // From stored automata: one pattern automaton per level, then the cells in
  // label index order. CorruptCache on a count or alphabet mismatch.
  ConjecturalPartition(const CoxeterGroup& g, ValidatedK k, std::vector<Fsa> patterns, std::vector<Fsa> cells);

  const CoxeterGroup& group() const { return *group_; }
  const DihedralData& data() const { return data_; }
  const ValidatedK& k() const { return k_; }

  // Red(C) for a label; Red(X_i) for the elements containing a level-i
  // pattern.
  const Fsa& cell(CellLabel label) const { return cells_[label.index()]; }
  const Fsa& level_patterns(std::size_t level) const { return patterns_[level - 1]; }
  // Red(C_j) for all j > level.
  Fsa above(std::size_t level) const;
  const std::vector<Fsa>& all_patterns() const { return patterns_; }
  const std::vector<Fsa>& all_cells() const { return cells_; }

  // Automaton membership; the reduced-expression scan only if no automaton
  // accepts the word.
  CellLabel classify(const Element& w) const;
  std::vector<CellLabel> classify(const ElementBall& ball) const;

  struct Check {
    bool pairwise_disjoint = false;
    bool covers = false;
  };
  Check check() const;

 private:
  std::optional<CellLabel> lookup(const Element& w) const;

  const CoxeterGroup* group_;
  DihedralData data_;
  ValidatedK k_;
  std::vector<Fsa> patterns_;
  std::vector<Fsa> cells_;
};

CellLabel classify_element(const ConjecturalPartition& part, const Element& w);

// Red(U^T) for a pair T at some level i: Red(W^T) minus Red(C_j), j > i.
Fsa u_t_fsa(const ConjecturalPartition& part, GeneratorSet pair);

// {u^-1 w_T : u in U^T, l(u) <= ball radius}, sorted and deduplicated.
std::vector<Element> omega_elements(const ConjecturalPartition& part, GeneratorSet pair, const ElementBall& ball);

struct Translator {
  GeneratorSet pair = 0;
  Element element;
  Fsa translate;  // Red(element * U^pair)
};

struct MinimalTranslators {
  std::size_t level = 0;
  std::size_t radius = 0;
  std::size_t candidates = 0;
  std::vector<Translator> minimal;  // sorted by (length, ShortLex, pair)
  // Dominations where the containing translate used a different pair.
  std::vector<std::string> cross_pair_log;
};

// Translators whose translate is not contained in the translate of a
// shorter (or equal length, ShortLex-earlier) translator of the same level.
MinimalTranslators omega_minimal(const ConjecturalPartition& part, std::size_t level, const ElementBall& ball);

struct OneSidedCellSpec {
  std::size_t level = 0;
  GeneratorSet pair = 0;
  Element translator;
  Fsa right_cell;
  Fsa left_cell;  // reversal of right_cell
};

std::vector<OneSidedCellSpec> one_sided_cells(const ConjecturalPartition& part, std::size_t level,
                                              const ElementBall& ball);

// Element counts per label and length plus provenance.
nlohmann::ordered_json partition_report(const ConjecturalPartition& part, const ElementBall& ball,
                                        std::size_t trust_margin);

}  // namespace hypcells

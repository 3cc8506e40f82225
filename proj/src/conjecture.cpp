#include "hypcells/conjecture.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "hypcells/error.hpp"

namespace hypcells {

namespace {

Fsa only_empty_word(const Presentation& p) {
  Fsa f(generator_alphabet(p), 1);
  f.set_accepting(0);
  return f;
}

Fsa empty_language(const Presentation& p) { return Fsa(generator_alphabet(p), 1); }

bool has_factor(const Word& w, const Word& pattern) {
  return std::search(w.begin(), w.end(), pattern.begin(), pattern.end()) != w.end();
}

bool shortlex_element_less(const Element& a, const Element& b) { return shortlex_less(a.word, b.word); }

}  // namespace

std::vector<DihedralEntry> DihedralData::at_level(std::size_t level) const {
  std::vector<DihedralEntry> out;
  for (const auto& e : entries) {
    if (e.level == level) out.push_back(e);
  }
  return out;
}

const DihedralEntry& DihedralData::entry_for(GeneratorSet pair) const {
  for (const auto& e : entries) {
    if (e.pair == pair) return e;
  }
  throw Error(ErrorCode::InvalidDescentClass, "no finite dihedral subgroup for this pair");
}

DihedralData dihedral_data(const Presentation& p) {
  DihedralData d;
  const std::size_t n = p.rank();
  for (std::size_t i = 0; i < n; ++i) {
    const CoxeterOrder a = p.angles()[i];
    if (!a.is_finite()) continue;
    Generator x = p.sides()[i];
    Generator y = p.sides()[(i + 1) % n];
    if (y < x) std::swap(x, y);
    DihedralEntry e;
    e.pair = singleton(x) | singleton(y);
    e.order = a.value();
    for (unsigned j = 0; j < e.order; ++j) e.longest.push_back(j % 2 == 0 ? x : y);
    d.entries.push_back(std::move(e));
  }
  if (d.entries.empty()) throw Error(ErrorCode::NoFiniteVertex, "every polygon vertex is ideal");
  std::sort(d.entries.begin(), d.entries.end(), [](const DihedralEntry& a, const DihedralEntry& b) {
    return a.order != b.order ? a.order < b.order : shortlex_less(a.longest, b.longest);
  });
  for (const auto& e : d.entries) {
    if (d.exponents.empty() || d.exponents.back() != e.order) d.exponents.push_back(e.order);
  }
  for (auto& e : d.entries) {
    e.level = static_cast<std::size_t>(std::lower_bound(d.exponents.begin(), d.exponents.end(), e.order) -
                                       d.exponents.begin()) + 1;
  }
  return d;
}

CellLabel CellLabel::from_index(std::size_t i) {
  if (i == 0) return id();
  if (i == 1) return zero();
  return at(i - 1);
}

std::string CellLabel::name() const {
  switch (kind) {
    case Kind::Id: return "C_id";
    case Kind::Zero: return "C_0";
    case Kind::Level: return "C_" + std::to_string(level);
  }
  return {};
}

std::vector<CellLabel> all_labels(const DihedralData& d) {
  std::vector<CellLabel> out;
  for (std::size_t i = 0; i < d.levels() + 2; ++i) out.push_back(CellLabel::from_index(i));
  return out;
}

std::vector<Word> reduced_expressions(const CoxeterGroup& g, const Element& w, std::size_t cap) {
  std::map<Word, std::vector<Word>> memo;
  auto rec = [&](auto&& self, const Element& x) -> const std::vector<Word>& {
    if (auto it = memo.find(x.word); it != memo.end()) return it->second;
    std::vector<Word> out;
    if (x.is_identity()) {
      out.push_back({});
    } else {
      for (Generator s = 0; s < g.rank(); ++s) {
        if (!contains(x.right, s)) continue;
        for (const Word& prefix : self(self, g.multiply(x, s))) {
          Word y = prefix;
          y.push_back(s);
          out.push_back(std::move(y));
          if (out.size() > cap) throw Error(ErrorCode::ResourceLimit, "too many reduced expressions");
        }
      }
      std::sort(out.begin(), out.end(), [](const Word& a, const Word& b) { return shortlex_less(a, b); });
    }
    return memo.emplace(x.word, std::move(out)).first->second;
  };
  return rec(rec, w);
}

CellLabel classify_by_expressions(const CoxeterGroup& g, const Element& w, const DihedralData& d) {
  if (w.is_identity()) return CellLabel::id();
  const auto exprs = reduced_expressions(g, w);
  for (std::size_t level = d.levels(); level >= 1; --level) {
    for (const auto& e : d.at_level(level)) {
      for (const Word& x : exprs) {
        if (has_factor(x, e.longest)) return CellLabel::at(level);
      }
    }
  }
  return CellLabel::zero();
}

ConjecturalPartition::ConjecturalPartition(const CoxeterGroup& g, ValidatedK k)
    : group_(&g), data_(dihedral_data(g.presentation())), k_(std::move(k)) {
  require_validated(g, k_);
  const Presentation& p = g.presentation();
  const std::size_t m = data_.levels();
  patterns_.assign(m, empty_language(p));
  for (const auto& e : data_.entries) {
    patterns_[e.level - 1] = combine(BoolOp::Union, patterns_[e.level - 1], red_x_mu(g, e.longest, k_));
  }
  cells_.assign(m + 2, empty_language(p));
  cells_[0] = only_empty_word(p);
  Fsa higher = empty_language(p);
  for (std::size_t level = m; level >= 1; --level) {
    cells_[1 + level] = combine(BoolOp::Difference, patterns_[level - 1], higher);
    higher = combine(BoolOp::Union, higher, patterns_[level - 1]);
  }
  cells_[1] = combine(BoolOp::Difference, combine(BoolOp::Difference, canonical_fsa(g), higher), cells_[0]);
}

ConjecturalPartition::ConjecturalPartition(const CoxeterGroup& g, ValidatedK k, std::vector<Fsa> patterns,
                                           std::vector<Fsa> cells)
    : group_(&g),
      data_(dihedral_data(g.presentation())),
      k_(std::move(k)),
      patterns_(std::move(patterns)),
      cells_(std::move(cells)) {
  require_validated(g, k_);
  if (patterns_.size() != data_.levels() || cells_.size() != data_.levels() + 2) {
    throw Error(ErrorCode::CorruptCache, "stored partition has the wrong number of automata");
  }
  const Alphabet alphabet = generator_alphabet(g.presentation());
  for (const auto* list : {&patterns_, &cells_}) {
    for (const Fsa& f : *list) {
      if (!(f.alphabet() == alphabet)) throw Error(ErrorCode::CorruptCache, "stored automaton has a foreign alphabet");
    }
  }
}

Fsa ConjecturalPartition::above(std::size_t level) const {
  Fsa out = empty_language(group_->presentation());
  for (std::size_t j = level + 1; j <= data_.levels(); ++j) out = combine(BoolOp::Union, out, cells_[1 + j]);
  return out;
}

std::optional<CellLabel> ConjecturalPartition::lookup(const Element& w) const {
  const auto word = symbols(w.word);
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (cells_[i].accepts(word)) return CellLabel::from_index(i);
  }
  return std::nullopt;
}

CellLabel ConjecturalPartition::classify(const Element& w) const {
  if (auto label = lookup(w)) return *label;
  return classify_by_expressions(*group_, w, data_);
}

std::vector<CellLabel> ConjecturalPartition::classify(const ElementBall& ball) const {
  std::vector<CellLabel> out(ball.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::size_t i = 0; i < ball.size(); ++i) out[i] = classify(ball[static_cast<ElementBall::Index>(i)]);
  return out;
}

ConjecturalPartition::Check ConjecturalPartition::check() const {
  Check c;
  c.pairwise_disjoint = true;
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    for (std::size_t j = i + 1; j < cells_.size(); ++j) {
      if (!is_empty(combine(BoolOp::Intersection, cells_[i], cells_[j]))) c.pairwise_disjoint = false;
    }
  }
  Fsa all = empty_language(group_->presentation());
  for (const auto& f : cells_) all = combine(BoolOp::Union, all, f);
  c.covers = are_equivalent(all, canonical_fsa(*group_));
  return c;
}

CellLabel classify_element(const ConjecturalPartition& part, const Element& w) { return part.classify(w); }

Fsa u_t_fsa(const ConjecturalPartition& part, GeneratorSet pair) {
  const DihedralEntry& e = part.data().entry_for(pair);
  const Fsa descent = descent_class_fsa(part.group(), pair);
  if (e.level == part.data().levels()) return descent;
  return combine(BoolOp::Difference, descent, part.above(e.level));
}

std::vector<Element> omega_elements(const ConjecturalPartition& part, GeneratorSet pair, const ElementBall& ball) {
  const CoxeterGroup& g = part.group();
  const Fsa u = u_t_fsa(part, pair);
  const Element longest = g.normal_form(part.data().entry_for(pair).longest);
  std::vector<Element> out;
  for (const Element& w : ball.elements()) {
    if (w.left == pair && u.accepts(symbols(w.word))) out.push_back(g.multiply(g.inverse(w), longest));
  }
  std::sort(out.begin(), out.end(), shortlex_element_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

MinimalTranslators omega_minimal(const ConjecturalPartition& part, std::size_t level, const ElementBall& ball) {
  const CoxeterGroup& g = part.group();
  const Presentation& p = g.presentation();
  MinimalTranslators out;
  out.level = level;
  out.radius = ball.radius();

  struct Candidate {
    GeneratorSet pair;
    Element element;
  };
  std::vector<Candidate> candidates;
  std::map<GeneratorSet, Fsa> regions;
  for (const auto& e : part.data().at_level(level)) {
    regions.emplace(e.pair, u_t_fsa(part, e.pair));
    for (Element& x : omega_elements(part, e.pair, ball)) candidates.push_back({e.pair, std::move(x)});
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.element.word != b.element.word) return shortlex_less(a.element.word, b.element.word);
    return a.pair < b.pair;
  });
  out.candidates = candidates.size();

  std::vector<Fsa> translates(candidates.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    translates[i] = left_translate(g, regions.at(candidates[i].pair), candidates[i].element, part.k());
  }

  auto contained = [](const Fsa& inner, const Fsa& outer) {
    return is_empty(combine(BoolOp::Difference, inner, outer));
  };
  auto describe = [&](std::size_t inner, std::size_t outer) {
    return p.format_word(candidates[inner].element.word) + "*U^" + p.format_set(candidates[inner].pair) + " in " +
           p.format_word(candidates[outer].element.word) + "*U^" + p.format_set(candidates[outer].pair);
  };

  std::vector<std::size_t> kept;
  std::size_t begin = 0;
  while (begin < candidates.size()) {
    std::size_t end = begin;
    while (end < candidates.size() && candidates[end].element.length() == candidates[begin].element.length()) ++end;
    // Drop translates inside a strictly shorter kept translate.
    std::vector<std::size_t> alive;
    for (std::size_t i = begin; i < end; ++i) {
      bool dominated = false;
      for (std::size_t j : kept) {
        if (contained(translates[i], translates[j])) {
          if (candidates[i].pair != candidates[j].pair) out.cross_pair_log.push_back(describe(i, j));
          dominated = true;
          break;
        }
      }
      if (!dominated) alive.push_back(i);
    }
    // Among equal lengths keep the maximal translates, earliest on ties.
    std::vector<std::size_t> level_kept;
    for (std::size_t i : alive) {
      bool dominated = false;
      for (std::size_t j : alive) {
        if (i == j || !contained(translates[i], translates[j])) continue;
        if (!contained(translates[j], translates[i]) || j < i) {
          if (candidates[i].pair != candidates[j].pair) out.cross_pair_log.push_back(describe(i, j));
          dominated = true;
          break;
        }
      }
      if (!dominated) level_kept.push_back(i);
    }
    kept.insert(kept.end(), level_kept.begin(), level_kept.end());
    begin = end;
  }
  for (std::size_t i : kept) out.minimal.push_back({candidates[i].pair, candidates[i].element, translates[i]});
  return out;
}

std::vector<OneSidedCellSpec> one_sided_cells(const ConjecturalPartition& part, std::size_t level,
                                              const ElementBall& ball) {
  std::vector<OneSidedCellSpec> out;
  for (Translator& t : omega_minimal(part, level, ball).minimal) {
    OneSidedCellSpec spec;
    spec.level = level;
    spec.pair = t.pair;
    spec.translator = std::move(t.element);
    spec.left_cell = determinize_minimize(reversed(t.translate));
    spec.right_cell = std::move(t.translate);
    out.push_back(std::move(spec));
  }
  std::sort(out.begin(), out.end(), [](const OneSidedCellSpec& a, const OneSidedCellSpec& b) {
    if (a.pair != b.pair) return a.pair < b.pair;
    return shortlex_less(a.translator.word, b.translator.word);
  });
  return out;
}

nlohmann::ordered_json partition_report(const ConjecturalPartition& part, const ElementBall& ball,
                                        std::size_t trust_margin) {
  const Presentation& p = part.group().presentation();
  nlohmann::ordered_json report;
  report["group"] = p.name();
  report["group_hash"] = p.hash();
  report["radius"] = ball.radius();
  report["k"] = part.k().k();
  report["k_radius"] = part.k().radius();
  report["trust_margin"] = trust_margin;
  nlohmann::ordered_json dihedral = nlohmann::ordered_json::array();
  for (const auto& e : part.data().entries) {
    dihedral.push_back({{"pair", p.format_set(e.pair)}, {"order", e.order}, {"longest", p.format_word(e.longest)},
                        {"level", e.level}});
  }
  report["dihedral"] = dihedral;
  report["exponents"] = part.data().exponents;

  const auto labels = part.classify(ball);
  nlohmann::ordered_json cells = nlohmann::ordered_json::object();
  for (const CellLabel& label : all_labels(part.data())) {
    std::vector<std::size_t> counts(ball.radius() + 1, 0);
    for (std::size_t i = 0; i < ball.size(); ++i) {
      if (labels[i] == label) ++counts[ball[static_cast<ElementBall::Index>(i)].length()];
    }
    const Fsa& f = part.cell(label);
    cells[label.name()] = {{"counts_by_length", counts},
                           {"fsa_states", f.state_count()},
                           {"fsa_file", "fsa/" + label.name() + ".fsa"}};
  }
  report["cells"] = cells;
  return report;
}

}  // namespace hypcells

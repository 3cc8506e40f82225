#include "hypcells/verify.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "hypcells/error.hpp"

namespace hypcells {

namespace {

bool shortlex_words(const Word& a, const Word& b) { return shortlex_less(a, b); }

bool contains_factor(const Word& w, const Word& pattern) {
  return std::search(w.begin(), w.end(), pattern.begin(), pattern.end()) != w.end();
}

}  // namespace

ClosureSet braid_closure(const Presentation& p, const Word& reduced, std::size_t cap) {
  std::set<Word> seen{reduced};
  std::deque<Word> queue{reduced};
  while (!queue.empty()) {
    const Word w = std::move(queue.front());
    queue.pop_front();
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      const Generator s = w[i];
      const Generator t = w[i + 1];
      if (s == t) continue;
      const CoxeterOrder m = p.order(s, t);
      if (!m.is_finite() || i + m.value() > w.size()) continue;
      bool alternating = true;
      for (std::size_t j = 0; j < m.value() && alternating; ++j) alternating = w[i + j] == (j % 2 == 0 ? s : t);
      if (!alternating) continue;
      Word x = w;
      for (std::size_t j = 0; j < m.value(); ++j) x[i + j] = j % 2 == 0 ? t : s;
      if (seen.insert(x).second) {
        if (seen.size() > cap) throw Error(ErrorCode::ResourceLimit, "braid closure exceeds cap");
        queue.push_back(std::move(x));
      }
    }
  }
  ClosureSet out{{seen.begin(), seen.end()}};
  std::sort(out.words.begin(), out.words.end(), shortlex_words);
  return out;
}

namespace {

CellLabel label_of_closure(const DihedralData& d, const ClosureSet& closure) {
  if (closure.words.front().empty()) return CellLabel::id();
  for (std::size_t level = d.levels(); level >= 1; --level) {
    for (const auto& e : d.entries) {
      if (e.level != level) continue;
      for (const Word& w : closure.words) {
        if (contains_factor(w, e.longest)) return CellLabel::at(level);
      }
    }
  }
  return CellLabel::zero();
}

}  // namespace

CellLabel oracle_classify(const Presentation& p, const DihedralData& d, const Word& reduced, std::size_t cap) {
  return label_of_closure(d, braid_closure(p, reduced, cap));
}

OracleCheck oracle_equivalence(const ConjecturalPartition& part, const ElementBall& ball, std::size_t cap) {
  const Presentation& p = ball.group().presentation();
  const auto labels = all_labels(part.data());
  OracleCheck out;
  out.elements = ball.size();
  std::vector<unsigned char> bad(ball.size(), 0);
  std::size_t words = 0, mismatches = 0, inconclusive = 0;
  const auto n = static_cast<std::ptrdiff_t>(ball.size());
#pragma omp parallel for schedule(dynamic, 32) reduction(+ : words, mismatches, inconclusive)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const Element& e = ball[static_cast<ElementBall::Index>(i)];
    ClosureSet closure;
    try {
      closure = braid_closure(p, e.word, cap);
    } catch (const Error&) {
      ++inconclusive;
      continue;
    }
    const CellLabel oracle = label_of_closure(part.data(), closure);
    if (part.classify(e) != oracle) bad[i] = 1;
    for (const Word& w : closure.words) {
      ++words;
      const auto sym = symbols(w);
      for (const CellLabel& l : labels) {
        if (part.cell(l).accepts(sym) != (l == oracle)) ++mismatches;
      }
    }
  }
  out.words = words;
  out.fsa_mismatches = mismatches;
  out.inconclusive = inconclusive;
  for (std::size_t i = 0; i < ball.size(); ++i) {
    if (bad[i]) out.disagreeing.push_back(ball[static_cast<ElementBall::Index>(i)]);
  }
  out.disagreements = out.disagreeing.size();
  return out;
}

ClassicalKL::ClassicalKL(const CoxeterGroup& g, std::size_t max_length) : group_(&g), max_length_(max_length) {
  // Elements by length through left multiplication of normal words.
  std::vector<std::vector<Word>> layers{{Word{}}};
  std::set<Word> seen{Word{}};
  for (std::size_t len = 1; len <= max_length; ++len) {
    std::vector<Word> next;
    for (const Word& w : layers.back()) {
      for (Generator s = 0; s < g.rank(); ++s) {
        Word x{s};
        x.insert(x.end(), w.begin(), w.end());
        const Element e = g.normal_form(x);
        if (e.length() == len && seen.insert(e.word).second) next.push_back(e.word);
      }
    }
    std::sort(next.begin(), next.end(), shortlex_words);
    layers.push_back(std::move(next));
  }
  for (const auto& layer : layers) {
    for (const Word& w : layer) {
      std::set<Word> below;
      for (std::size_t mask = 0; mask < (std::size_t{1} << w.size()); ++mask) {
        Word sub;
        for (std::size_t i = 0; i < w.size(); ++i) {
          if ((mask >> i) & 1u) sub.push_back(w[i]);
        }
        below.insert(g.normal_form(sub).word);
      }
      below_[w] = {below.begin(), below.end()};
    }
  }
  auto mu = [&](const Word& z, const Word& w) -> IntPoly::Coeff {
    const std::size_t d = w.size() - z.size();
    if (d % 2 == 0) return 0;
    return p(z, w)[(d - 1) / 2];
  };
  p_[{Word{}, Word{}}] = IntPoly::constant(1);
  for (std::size_t len = 1; len <= max_length; ++len) {
    for (const Word& w : layers[len]) {
      const Generator s = w.front();
      const Word shorter(w.begin() + 1, w.end());
      for (const Word& x : below_.at(w)) {
        const Element xe = g.normal_form(x);
        const Word sx = g.multiply(s, xe).word;
        const bool c = contains(xe.left, s);
        IntPoly value = c ? p(sx, shorter) + p(x, shorter).shifted(1) : p(sx, shorter).shifted(1) + p(x, shorter);
        for (const Word& z : below_.at(shorter)) {
          if (z == shorter || !contains(g.normal_form(z).left, s)) continue;
          const IntPoly::Coeff m = mu(z, shorter);
          if (m == 0 || !bruhat_leq(x, z)) continue;
          value -= (IntPoly::constant(m) * p(x, z)).shifted((w.size() - z.size()) / 2);
        }
        p_[{x, w}] = std::move(value);
      }
    }
  }
}

bool ClassicalKL::bruhat_leq(const Word& v, const Word& w) const {
  const auto it = below_.find(w);
  if (it == below_.end()) throw Error(ErrorCode::BallTooSmall, "element beyond the oracle's length");
  return std::binary_search(it->second.begin(), it->second.end(), v);
}

const IntPoly& ClassicalKL::p(const Word& v, const Word& w) const {
  const auto it = p_.find({v, w});
  return it == p_.end() ? zero_ : it->second;
}

bool kl_cross_check(const ClassicalKL& oracle, const KLTable& table, ElementBall::Index v, ElementBall::Index w) {
  const ElementBall& ball = table.ball();
  const Word& vw = ball[v].word;
  const Word& ww = ball[w].word;
  if (oracle.bruhat_leq(vw, ww) != table.bruhat_leq(v, w)) return false;
  return oracle.p(vw, ww) == table.kl_poly(v, w);
}

CrossCheckSummary kl_cross_check_all(const ClassicalKL& oracle, const KLTable& table) {
  const ElementBall& ball = table.ball();
  const std::size_t end = ball.end_of_length(std::min(oracle.max_length(), ball.radius()));
  CrossCheckSummary out;
  std::size_t bad = 0;
#pragma omp parallel for reduction(+ : bad) schedule(dynamic, 8)
  for (std::size_t w = 0; w < end; ++w) {
    for (std::size_t v = 0; v < end; ++v) {
      if (!kl_cross_check(oracle, table, static_cast<ElementBall::Index>(v), static_cast<ElementBall::Index>(w))) ++bad;
    }
  }
  out.pairs = end * end;
  out.disagreements = bad;
  return out;
}

Census unique_reduced_census(const ElementBall& ball) {
  Census out;
  out.radius = ball.radius();
  const Presentation& p = ball.group().presentation();
  for (const Element& e : ball.elements()) {
    if (!e.is_identity() && braid_closure(p, e.word).size() == 1) out.elements.push_back(e);
  }
  return out;
}

TranslationCheck translation_check(const OneSidedCellSpec& spec, const DihedralData& d, const ElementBall& ball) {
  const CoxeterGroup& g = ball.group();
  const Presentation& p = g.presentation();
  const Element inverse = g.inverse(spec.translator);
  std::vector<unsigned char> member(ball.size(), 0);
  const auto m = static_cast<std::ptrdiff_t>(ball.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t i = 0; i < m; ++i) {
    // x lies in w * U^T iff w^-1 x does.
    const Element u = g.multiply(inverse, ball[static_cast<ElementBall::Index>(i)]);
    if (u.left != spec.pair) continue;
    const CellLabel label = oracle_classify(p, d, u.word);
    member[i] = label.kind != CellLabel::Kind::Level || label.level <= spec.level;
  }
  std::size_t words = 0, mismatches = 0;
  const auto n = static_cast<std::ptrdiff_t>(ball.size());
#pragma omp parallel for schedule(dynamic, 64) reduction(+ : words, mismatches)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const Element& e = ball[static_cast<ElementBall::Index>(i)];
    for (const Word& w : braid_closure(p, e.word).words) {
      ++words;
      if (spec.right_cell.accepts(symbols(w)) != (member[i] != 0)) ++mismatches;
    }
  }
  return {words, mismatches};
}

CoverageCheck coverage_check(const ConjecturalPartition& part, std::size_t level,
                             const std::vector<OneSidedCellSpec>& specs, std::size_t radius) {
  Fsa all(generator_alphabet(part.group().presentation()), 1);
  for (const auto& spec : specs) {
    if (spec.level == level) all = combine(BoolOp::Union, all, spec.right_cell);
  }
  const Fsa& cell = part.cell(CellLabel::at(level));
  CoverageCheck out;
  out.radius = radius;
  out.exact = are_equivalent(all, cell);
  out.inside = is_empty(combine(BoolOp::Difference, all, cell));
  const Fsa gap = combine(BoolOp::Difference, cell, all);
  const std::size_t horizon = out.exact ? radius : std::max(radius, gap.state_count());
  const auto missed = analyze(gap, horizon).counts;
  for (std::size_t len = 0; len < missed.size(); ++len) {
    if (missed[len] != 0) {
      out.first_gap = static_cast<long>(len);
      break;
    }
  }
  out.bounded = out.first_gap < 0 || out.first_gap > static_cast<long>(radius);
  return out;
}

ComparisonReport empirical_vs_conjectural(const KLTable& table, const EmpiricalCells& cells,
                                          const ConjecturalPartition& part, std::size_t trust_margin,
                                          const std::vector<OneSidedCellSpec>& specs) {
  const ElementBall& ball = table.ball();
  const Presentation& p = ball.group().presentation();
  ComparisonReport out;
  out.group = p.name();
  out.radius = ball.radius();
  out.trust_margin = trust_margin;
  const std::size_t limit = ball.radius() >= trust_margin ? ball.radius() - trust_margin : 0;
  const std::size_t end = ball.radius() >= trust_margin ? ball.end_of_length(limit) : 0;
  out.trusted = end;
  for (std::size_t i = end; i < ball.size(); ++i) out.boundary.push_back(ball[static_cast<ElementBall::Index>(i)]);

  std::vector<CellLabel> labels(end);
  for (std::size_t i = 0; i < end; ++i) labels[i] = part.classify(ball[static_cast<ElementBall::Index>(i)]);
  std::map<std::uint32_t, std::size_t> per_block;
  std::map<std::size_t, std::size_t> per_label;
  std::map<std::pair<std::uint32_t, std::size_t>, std::size_t> per_both;
  for (std::size_t i = 0; i < end; ++i) {
    const std::uint32_t b = cells.two_sided.block[i];
    ++per_block[b];
    ++per_label[labels[i].index()];
    ++per_both[{b, labels[i].index()}];
  }
  out.empirical_blocks = per_block.size();
  out.conjectural_labels = per_label.size();
  for (std::size_t i = 0; i < end; ++i) {
    const std::uint32_t b = cells.two_sided.block[i];
    const std::size_t both = per_both[{b, labels[i].index()}];
    if (both == per_block[b] && both == per_label[labels[i].index()]) {
      ++out.agreeing;
    } else {
      out.disagreements.push_back({ball[static_cast<ElementBall::Index>(i)], labels[i], b});
    }
  }

  if (!specs.empty()) {
    auto trusted_blocks = [&](const Partition& part_) {
      std::map<std::uint32_t, std::vector<std::size_t>> blocks;
      for (std::size_t i = 0; i < end; ++i) blocks[part_.block[i]].push_back(i);
      std::set<std::vector<std::size_t>> out_;
      for (auto& [b, members] : blocks) out_.insert(members);
      return out_;
    };
    const auto right_blocks = trusted_blocks(cells.right);
    const auto left_blocks = trusted_blocks(cells.left);
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    std::size_t right_matches = 0;
    std::size_t left_matches = 0;
    std::size_t nonempty = 0;
    for (const auto& spec : specs) {
      std::vector<std::size_t> members;
      std::vector<std::size_t> inverse_members;
      for (std::size_t i = 0; i < end; ++i) {
        if (spec.right_cell.accepts(symbols(ball[static_cast<ElementBall::Index>(i)].word))) members.push_back(i);
        if (spec.left_cell.accepts(symbols(ball[static_cast<ElementBall::Index>(i)].word))) inverse_members.push_back(i);
      }
      const bool right = !members.empty() && right_blocks.count(members) > 0;
      const bool left = !inverse_members.empty() && left_blocks.count(inverse_members) > 0;
      if (!members.empty()) ++nonempty;
      right_matches += right;
      left_matches += left;
      entries.push_back({{"level", spec.level},
                         {"pair", p.format_set(spec.pair)},
                         {"translator", p.format_word(spec.translator.word)},
                         {"trusted_members", members.size()},
                         {"matches_right_cell", right},
                         {"reversal_matches_left_cell", left}});
    }
    out.one_sided = {{"specs", specs.size()},
                     {"nonempty_in_trusted_region", nonempty},
                     {"right_cell_matches", right_matches},
                     {"left_cell_matches", left_matches},
                     {"entries", entries}};
  }
  return out;
}

nlohmann::ordered_json ComparisonReport::to_json(const Presentation& p) const {
  nlohmann::ordered_json j;
  j["group"] = group;
  j["radius"] = radius;
  j["trust_margin"] = trust_margin;
  j["trusted_elements"] = trusted;
  j["agreeing"] = agreeing;
  j["agreement_ratio"] = agreement_ratio();
  j["empirical_blocks"] = empirical_blocks;
  j["conjectural_labels"] = conjectural_labels;
  nlohmann::ordered_json dis = nlohmann::ordered_json::array();
  for (const auto& d : disagreements) {
    dis.push_back({{"element", p.format_word(d.element.word)},
                   {"conjectural", d.conjectural.name()},
                   {"empirical_block", d.empirical_block}});
  }
  j["disagreements"] = dis;
  j["boundary_count"] = boundary.size();
  if (!one_sided.is_null()) j["one_sided"] = one_sided;
  return j;
}

}  // namespace hypcells

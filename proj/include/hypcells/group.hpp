#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hypcells/presentation.hpp"
#include "hypcells/small_roots.hpp"

namespace hypcells {

enum class Side { Left, Right };

// ShortLex: shorter first, then lexicographic in generator order.
bool shortlex_less(WordView a, WordView b);

struct Element {
  Word word;  // ShortLex-minimal reduced expression
  GeneratorSet left = 0;
  GeneratorSet right = 0;

  std::size_t length() const { return word.size(); }
  bool is_identity() const { return word.empty(); }
  GeneratorSet descents(Side side) const { return side == Side::Left ? left : right; }

  friend bool operator==(const Element& a, const Element& b) { return a.word == b.word; }
  friend bool operator<(const Element& a, const Element& b) { return shortlex_less(a.word, b.word); }
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Generator g : w) {
      h ^= g + 1u;
      h *= 1099511628211ull;
    }
    return h;
  }
};

// Deterministic automaton over the generators accepting exactly the reduced
// words. A state is the set of small roots sent negative by the prefix read
// so far; its simple roots are the prefix's right descents.
class CanonicalAutomaton {
 public:
  static constexpr std::uint32_t kDead = ~std::uint32_t{0};

  static CanonicalAutomaton build(const SmallRootTable& roots);

  std::size_t state_count() const { return descents_.size(); }
  std::size_t rank() const { return rank_; }
  std::uint32_t initial() const { return 0; }
  std::uint32_t next(std::uint32_t state, Generator s) const { return delta_[state * rank_ + s]; }
  GeneratorSet right_descents(std::uint32_t state) const { return descents_[state]; }
  const std::vector<std::uint32_t>& roots(std::uint32_t state) const { return members_[state]; }

  // kDead if the word is not reduced.
  std::uint32_t run(WordView w, std::uint32_t from = 0) const;

 private:
  std::size_t rank_ = 0;
  std::vector<std::uint32_t> delta_;
  std::vector<GeneratorSet> descents_;
  std::vector<std::vector<std::uint32_t>> members_;
};

// Word problem for a polygon group, driven by the small-root automaton.
// Immutable after construction.
class CoxeterGroup {
 public:
  explicit CoxeterGroup(Presentation p);

  const Presentation& presentation() const { return presentation_; }
  std::size_t rank() const { return presentation_.rank(); }
  const SmallRootTable& small_roots() const { return roots_; }
  const CanonicalAutomaton& canonical() const { return canonical_; }

  bool is_reduced(WordView w) const { return canonical_.run(w) != CanonicalAutomaton::kDead; }
  // Both require a reduced word.
  GeneratorSet right_descents(WordView reduced) const;
  GeneratorSet left_descents(WordView reduced) const;

  // Some reduced word for the product of the letters of w.
  Word reduce(WordView w) const;
  std::size_t length(WordView w) const { return reduce(w).size(); }

  Element normal_form(WordView w) const;
  Element normal_form(std::string_view text) const { return normal_form(presentation_.parse_word(text)); }
  Element identity() const { return Element{}; }
  Element generator(Generator s) const { return normal_form(Word{s}); }
  Element multiply(const Element& a, const Element& b) const;
  Element multiply(Generator s, const Element& a) const;
  Element multiply(const Element& a, Generator s) const;
  Element inverse(const Element& a) const;
  GeneratorSet descents(const Element& w, Side side) const { return w.descents(side); }

  std::string format(const Element& w) const { return presentation_.format_word(w.word); }

 private:
  Word right_multiply_reduced(Word u, Generator s) const;
  Word shortlex_from_reduced(Word x) const;

  Presentation presentation_;
  SmallRootTable roots_;
  CanonicalAutomaton canonical_;
};

}  // namespace hypcells

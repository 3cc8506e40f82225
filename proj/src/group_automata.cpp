#include "hypcells/group_automata.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

#include "hypcells/ball.hpp"
#include "hypcells/error.hpp"

namespace hypcells {

Fsa canonical_fsa(const CoxeterGroup& g) {
  const CanonicalAutomaton& c = g.canonical();
  Fsa a(generator_alphabet(g.presentation()), c.state_count());
  for (std::uint32_t q = 0; q < c.state_count(); ++q) {
    a.set_accepting(q);
    for (std::size_t s = 0; s < g.rank(); ++s) {
      const std::uint32_t t = c.next(q, static_cast<Generator>(s));
      if (t != CanonicalAutomaton::kDead) a.add_edge(q, static_cast<Fsa::Symbol>(s), t);
    }
  }
  a.set_initial(c.initial());
  return a;
}

Fsa factor_fsa(const CoxeterGroup& g, const Word& pattern) {
  if (!g.is_reduced(pattern)) {
    throw Error(ErrorCode::PatternNotReduced, "pattern '" + g.presentation().format_word(pattern) + "' is not reduced");
  }
  const std::size_t k = pattern.size();
  const std::size_t n = g.rank();
  // Failure function and the full matching automaton over pattern prefixes.
  std::vector<std::size_t> fail(k + 1, 0);
  for (std::size_t i = 1, j = 0; i < k; ++i) {
    while (j > 0 && pattern[i] != pattern[j]) j = fail[j];
    if (pattern[i] == pattern[j]) ++j;
    fail[i + 1] = j;
  }
  std::vector<std::size_t> match((k + 1) * n, 0);
  for (std::size_t j = 0; j <= k; ++j) {
    for (std::size_t s = 0; s < n; ++s) {
      std::size_t& out = match[j * n + s];
      if (j == k) out = k;
      else if (pattern[j] == s) out = j + 1;
      else out = j == 0 ? 0 : match[fail[j] * n + s];
    }
  }
  const CanonicalAutomaton& c = g.canonical();
  Fsa a(generator_alphabet(g.presentation()), 0);
  std::unordered_map<std::uint64_t, Fsa::State> index;
  std::vector<std::pair<std::uint32_t, std::size_t>> states;
  auto intern = [&](std::uint32_t q, std::size_t j) {
    const std::uint64_t key = (static_cast<std::uint64_t>(q) << 32) | j;
    const auto [it, fresh] = index.emplace(key, static_cast<Fsa::State>(states.size()));
    if (fresh) {
      states.emplace_back(q, j);
      a.add_state(j == k);
    }
    return it->second;
  };
  a.set_initial(intern(c.initial(), 0));
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto [q, j] = states[i];
    for (std::size_t s = 0; s < n; ++s) {
      const std::uint32_t t = c.next(q, static_cast<Generator>(s));
      if (t == CanonicalAutomaton::kDead) continue;
      a.add_edge(static_cast<Fsa::State>(i), static_cast<Fsa::Symbol>(s), intern(t, match[j * n + s]));
    }
  }
  return determinize_minimize(a);
}

Fsa equal_endpoint_pairs(const CoxeterGroup& g, const Fsa& a, const Fsa& b, std::size_t bound, const Element& offset,
                         std::size_t state_cap) {
  if (!a.is_deterministic() || !b.is_deterministic()) {
    throw Error(ErrorCode::AlphabetMismatch, "pair machine needs deterministic inputs");
  }
  const Presentation& p = g.presentation();
  if (!(a.alphabet() == generator_alphabet(p)) || !(b.alphabet() == generator_alphabet(p))) {
    throw Error(ErrorCode::AlphabetMismatch, "pair machine inputs must be over the generator alphabet");
  }
  const std::size_t n = g.rank();
  Fsa out(pair_alphabet(p), 0);
  if (offset.length() > bound || a.state_count() == 0 || b.state_count() == 0) {
    out.add_state(false);
    return out;
  }
  const ElementBall diffs(g, bound + 1);
  const auto identity = static_cast<ElementBall::Index>(0);

  struct Key {
    Fsa::State qa, qb;
    ElementBall::Index d;
    std::uint8_t pads;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      std::uint64_t h = k.qa;
      h = h * 0x9e3779b97f4a7c15ull ^ k.qb;
      h = h * 0x9e3779b97f4a7c15ull ^ k.d;
      h = h * 0x9e3779b97f4a7c15ull ^ k.pads;
      return static_cast<std::size_t>(h ^ (h >> 29));
    }
  };
  std::unordered_map<Key, Fsa::State, KeyHash> index;
  std::vector<Key> keys;
  auto intern = [&](const Key& key) {
    const auto [it, fresh] = index.emplace(key, static_cast<Fsa::State>(keys.size()));
    if (fresh) {
      if (keys.size() >= state_cap) {
        throw Error(ErrorCode::StateBlowup, "pair machine exceeds state cap " + std::to_string(state_cap));
      }
      keys.push_back(key);
      out.add_state(a.accepting(key.qa) && b.accepting(key.qb) && key.d == identity);
    }
    return it->second;
  };
  out.set_initial(intern({a.initial(), b.initial(), diffs.index_of(offset), 0}));
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const Key key = keys[i];
    const bool pad_a = key.pads & 1, pad_b = key.pads & 2;
    for (std::size_t x = 0; x <= n; ++x) {
      if (pad_a && x != n) continue;
      Fsa::State qa = key.qa;
      ElementBall::Index left = key.d;
      if (x < n) {
        qa = a.next(key.qa, static_cast<Fsa::Symbol>(x));
        if (qa == Fsa::kNone) continue;
        left = diffs.left(key.d, static_cast<Generator>(x));
        if (left == ElementBall::kOutside) continue;
      } else if (!a.accepting(key.qa)) {
        continue;
      }
      for (std::size_t y = 0; y <= n; ++y) {
        if (x == n && y == n) continue;
        if (pad_b && y != n) continue;
        Fsa::State qb = key.qb;
        ElementBall::Index d = left;
        if (y < n) {
          qb = b.next(key.qb, static_cast<Fsa::Symbol>(y));
          if (qb == Fsa::kNone) continue;
          d = diffs.right(left, static_cast<Generator>(y));
          if (d == ElementBall::kOutside) continue;
        } else if (!b.accepting(key.qb)) {
          continue;
        }
        if (diffs[d].length() > bound) continue;
        const std::uint8_t pads =
            static_cast<std::uint8_t>((x == n ? 1 : 0) | (y == n ? 2 : 0) | key.pads);
        out.add_edge(static_cast<Fsa::State>(i), pair_symbol(n, x, y), intern({qa, qb, d, pads}));
      }
    }
  }
  return out;
}

Fsa project_first(const Fsa& pairs, const Presentation& p) {
  const std::size_t n = p.rank();
  Fsa out(generator_alphabet(p), pairs.state_count());
  if (pairs.state_count() == 0) return out;
  out.set_initial(pairs.initial());
  for (Fsa::State q = 0; q < pairs.state_count(); ++q) {
    out.set_accepting(q, pairs.accepting(q));
    for (const auto& e : pairs.edges(q)) {
      const std::size_t x = e.symbol / (n + 1);
      if (x == n) out.add_epsilon(q, e.target);
      else out.add_edge(q, static_cast<Fsa::Symbol>(x), e.target);
    }
    for (auto t : pairs.epsilons(q)) out.add_epsilon(q, t);
  }
  return out;
}

// Prefixes of reduced expressions of w are the elements below w in the right
// weak order; two reduced expressions can sit at any pair of same-length
// prefixes simultaneously, so the maxima reduce to prefix-set diameters.
FellowTravelMeasure measure_fellow_travel(const CoxeterGroup& g, std::size_t radius) {
  const ElementBall ball(g, radius + 1);
  using Index = ElementBall::Index;
  std::vector<std::vector<Index>> prefixes(ball.size());
  for (Index w = 0; w < ball.size(); ++w) {
    std::vector<Index>& pre = prefixes[w];
    pre.push_back(w);
    for (std::size_t s = 0; s < g.rank(); ++s) {
      if (!contains(ball[w].right, static_cast<Generator>(s))) continue;
      const auto& sub = prefixes[ball.right(w, static_cast<Generator>(s))];
      pre.insert(pre.end(), sub.begin(), sub.end());
    }
    std::sort(pre.begin(), pre.end());
    pre.erase(std::unique(pre.begin(), pre.end()), pre.end());
  }
  std::unordered_map<std::uint64_t, std::size_t> cache;
  auto distance = [&](Index u, Index v) -> std::size_t {
    if (u == v) return 0;
    if (u > v) std::swap(u, v);
    const std::uint64_t key = (static_cast<std::uint64_t>(u) << 32) | v;
    if (const auto it = cache.find(key); it != cache.end()) return it->second;
    const std::size_t d = g.multiply(g.inverse(ball[u]), ball[v]).length();
    cache.emplace(key, d);
    return d;
  };
  auto level = [&](const std::vector<Index>& pre, std::size_t len) {
    const auto lo = std::lower_bound(pre.begin(), pre.end(), static_cast<Index>(ball.begin_of_length(len)));
    const auto hi = std::lower_bound(pre.begin(), pre.end(), static_cast<Index>(ball.end_of_length(len)));
    return std::vector<Index>(lo, hi);
  };

  FellowTravelMeasure m;
  m.radius = radius;
  const std::size_t inner = ball.end_of_length(radius);
  for (Index w = 0; w < inner; ++w) {
    const std::size_t lw = ball[w].length();
    for (std::size_t i = 1; i < lw; ++i) {
      const auto lv = level(prefixes[w], i);
      for (std::size_t x = 0; x < lv.size(); ++x) {
        for (std::size_t y = x + 1; y < lv.size(); ++y) m.same_element = std::max(m.same_element, distance(lv[x], lv[y]));
      }
    }
    for (std::size_t s = 0; s < g.rank(); ++s) {
      if (contains(ball[w].right, static_cast<Generator>(s))) continue;
      const Index ws = ball.right(w, static_cast<Generator>(s));
      m.neighbour = std::max<std::size_t>(m.neighbour, 1);
      for (std::size_t i = 1; i <= lw; ++i) {
        const auto a = level(prefixes[w], i);
        const auto b = level(prefixes[ws], i);
        for (const Index u : a) {
          for (const Index v : b) m.neighbour = std::max(m.neighbour, distance(u, v));
        }
      }
    }
  }
  return m;
}

ValidatedK ValidatedK::raised(std::size_t k) const {
  ValidatedK out = *this;
  out.k_ = std::max(k_, k);
  return out;
}

ValidatedK ValidatedK::restore(const CoxeterGroup& g, std::size_t k, std::size_t radius) {
  return ValidatedK(k, radius, g.presentation().hash());
}

std::optional<ValidatedK> validate_k(const CoxeterGroup& g, std::size_t k, std::size_t radius) {
  if (k == 0) return std::nullopt;
  if (k < radius + 1) {
    const FellowTravelMeasure m = measure_fellow_travel(g, radius);
    if (m.required() > k) return std::nullopt;
  }
  return ValidatedK(k, radius, g.presentation().hash());
}

void require_validated(const CoxeterGroup& g, const ValidatedK& k) {
  if (k.group_hash() != g.presentation().hash()) {
    throw Error(ErrorCode::KNotValidated, "fellow-traveller constant was validated for a different group");
  }
}

Fsa red_x_mu(const CoxeterGroup& g, const Word& pattern, const ValidatedK& k) {
  require_validated(g, k);
  const Fsa pairs = equal_endpoint_pairs(g, canonical_fsa(g), factor_fsa(g, pattern), k.k(), g.identity());
  return determinize_minimize(project_first(pairs, g.presentation()));
}

Fsa left_translate(const CoxeterGroup& g, const Fsa& a, const Element& w, const ValidatedK& k) {
  require_validated(g, k);
  // One generator at a time, rightmost first, with bound k + 1.
  const Fsa can = canonical_fsa(g);
  Fsa current = determinize_minimize(a);
  for (auto it = w.word.rbegin(); it != w.word.rend(); ++it) {
    const Fsa pairs = equal_endpoint_pairs(g, can, current, k.k() + 1, g.generator(*it));
    current = determinize_minimize(project_first(pairs, g.presentation()));
  }
  return current;
}

ValidatedK select_k(const CoxeterGroup& g, const std::vector<Word>& patterns, std::size_t radius) {
  const FellowTravelMeasure m = measure_fellow_travel(g, radius);
  std::optional<ValidatedK> k = validate_k(g, m.required(), radius);
  if (!k) throw Error(ErrorCode::KNotValidated, "measured constant failed validation");
  for (;;) {
    const ValidatedK next = k->raised(k->k() + 1);
    bool stable = true;
    for (const Word& pattern : patterns) {
      if (!(red_x_mu(g, pattern, *k) == red_x_mu(g, pattern, next))) {
        stable = false;
        break;
      }
    }
    if (stable) return *k;
    k = next;
  }
}

// A word is not ShortLex-least iff some lexicographically smaller reduced
// expression of the same element fellow-travels it.
Fsa shortlex_fsa(const CoxeterGroup& g, const ValidatedK& k) {
  require_validated(g, k);
  const Presentation& p = g.presentation();
  const std::size_t n = g.rank();
  const Fsa can = canonical_fsa(g);
  Fsa smaller(pair_alphabet(p), 3);  // 0 equal so far, 1 second word smaller, 2 larger
  smaller.set_initial(0);
  smaller.set_accepting(1);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const Fsa::Symbol sym = pair_symbol(n, x, y);
      smaller.add_edge(0, sym, x == y ? 0 : (y < x ? 1 : 2));
      smaller.add_edge(1, sym, 1);
      smaller.add_edge(2, sym, 2);
    }
  }
  const Fsa pairs = combine(BoolOp::Intersection, equal_endpoint_pairs(g, can, can, k.k(), g.identity()), smaller);
  return combine(BoolOp::Difference, can, project_first(pairs, p));
}

bool valid_descent_class(const Presentation& p, GeneratorSet t) {
  const int size = std::popcount(t);
  if (size <= 1) return t < (GeneratorSet{1} << p.rank());
  if (size > 2) return false;
  const auto s = static_cast<Generator>(std::countr_zero(t));
  const auto u = static_cast<Generator>(std::countr_zero(t & (t - 1)));
  return u < p.rank() && p.order(s, u).is_finite();
}

std::vector<GeneratorSet> valid_descent_classes(const Presentation& p) {
  std::vector<GeneratorSet> out;
  for (GeneratorSet t = 0; t < (GeneratorSet{1} << p.rank()); ++t) {
    if (valid_descent_class(p, t)) out.push_back(t);
  }
  return out;
}

Fsa descent_class_fsa(const CoxeterGroup& g, GeneratorSet t) {
  if (!valid_descent_class(g.presentation(), t)) {
    throw Error(ErrorCode::InvalidDescentClass, "no elements have left descent set " + g.presentation().format_set(t));
  }
  const CanonicalAutomaton& c = g.canonical();
  std::vector<GeneratorSet> tags;
  for (std::uint32_t q = 0; q < c.state_count(); ++q) tags.push_back(c.right_descents(q));
  std::sort(tags.begin(), tags.end());
  tags.erase(std::unique(tags.begin(), tags.end()), tags.end());
  const std::size_t d = tags.size();
  auto tag_index = [&](GeneratorSet x) {
    return static_cast<std::size_t>(std::lower_bound(tags.begin(), tags.end(), x) - tags.begin());
  };
  auto node = [&](std::uint32_t q, std::size_t tag) { return static_cast<Fsa::State>(1 + q * d + tag); };

  // Guess the end state of the reversed word's run, walk it backwards.
  Fsa nfa(generator_alphabet(g.presentation()), 1 + c.state_count() * d);
  nfa.set_initial(0);
  for (std::uint32_t q = 0; q < c.state_count(); ++q) nfa.add_epsilon(0, node(q, tag_index(c.right_descents(q))));
  for (std::uint32_t p = 0; p < c.state_count(); ++p) {
    for (std::size_t s = 0; s < g.rank(); ++s) {
      const std::uint32_t q = c.next(p, static_cast<Generator>(s));
      if (q == CanonicalAutomaton::kDead) continue;
      for (std::size_t tag = 0; tag < d; ++tag) nfa.add_edge(node(q, tag), static_cast<Fsa::Symbol>(s), node(p, tag));
    }
  }
  const auto it = std::lower_bound(tags.begin(), tags.end(), t);
  if (it != tags.end() && *it == t) nfa.set_accepting(node(c.initial(), tag_index(t)));
  return determinize_minimize(nfa);
}

}  // namespace hypcells

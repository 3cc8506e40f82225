#include <random>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "hypcells/ball.hpp"
#include "hypcells/error.hpp"
#include "hypcells/group_automata.hpp"
#include "oracles.hpp"

using namespace hypcells;

namespace {

Alphabet ab() { return Alphabet{{"a", "b"}}; }

// Words over {a,b} with an even number of a's; deliberately redundant.
Fsa even_a_redundant() {
  Fsa f(ab(), 5);
  f.set_initial(0);
  f.add_edge(0, 0, 1);
  f.add_edge(0, 1, 2);
  f.add_edge(1, 0, 2);
  f.add_edge(1, 1, 1);
  f.add_edge(2, 0, 1);
  f.add_edge(2, 1, 0);
  f.add_edge(4, 0, 3);  // unreachable
  f.set_accepting(0);
  f.set_accepting(2);
  f.set_accepting(3);
  return f;
}

Fsa random_nfa(std::mt19937& rng, std::size_t states, std::size_t symbols) {
  Alphabet alpha;
  for (std::size_t i = 0; i < symbols; ++i) alpha.names.push_back(std::string(1, static_cast<char>('a' + i)));
  Fsa f(alpha, states);
  std::uniform_int_distribution<std::size_t> pick(0, states - 1), sym(0, symbols - 1), coin(0, 3);
  for (std::size_t i = 0; i < 3 * states; ++i) f.add_edge(static_cast<Fsa::State>(pick(rng)), static_cast<Fsa::Symbol>(sym(rng)), static_cast<Fsa::State>(pick(rng)));
  for (std::size_t i = 0; i < states / 3; ++i) f.add_epsilon(static_cast<Fsa::State>(pick(rng)), static_cast<Fsa::State>(pick(rng)));
  for (Fsa::State q = 0; q < states; ++q) f.set_accepting(q, coin(rng) == 0);
  return f;
}

std::vector<Fsa::Symbol> word_of(std::size_t code, std::size_t len, std::size_t symbols) {
  std::vector<Fsa::Symbol> w;
  for (std::size_t i = 0; i < len; ++i, code /= symbols) w.push_back(static_cast<Fsa::Symbol>(code % symbols));
  return w;
}

const ValidatedK& k237() {
  static const ValidatedK k = *validate_k(testing::w237(), 6, 10);
  return k;
}

bool accepts_word(const Fsa& f, const CoxeterGroup& g, std::string_view w) {
  return f.accepts(symbols(g.presentation().parse_word(w)));
}

}  // namespace

TEST_CASE("determinize_minimize basics") {
  const Fsa f = even_a_redundant();
  const Fsa m = determinize_minimize(f);
  CHECK(m.state_count() == 2);
  CHECK(m.is_deterministic());
  CHECK(m.is_trim());
  CHECK(determinize_minimize(m) == m);
  CHECK(m.accepts({}));
  CHECK(m.accepts({0, 1, 0}));
  CHECK_FALSE(m.accepts({0, 1}));
  CHECK(analyze(m, 3).counts == std::vector<mpz_class>{1, 1, 2, 4});
}

TEST_CASE("determinize_minimize preserves languages of random automata") {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 40; ++trial) {
    const Fsa nfa = random_nfa(rng, 7, 2);
    const Fsa dfa = determinize_minimize(nfa);
    CHECK(dfa.is_deterministic());
    CHECK(determinize_minimize(dfa) == dfa);
    for (std::size_t len = 0; len <= 7; ++len) {
      for (std::size_t code = 0; code < (1u << len); ++code) {
        const auto w = word_of(code, len, 2);
        REQUIRE(dfa.accepts(w) == nfa.accepts(w));
      }
    }
    CHECK(are_equivalent(nfa, dfa));
    CHECK(is_empty(combine(BoolOp::Difference, nfa, dfa)));
  }
}

TEST_CASE("boolean algebra") {
  std::mt19937 rng(7);
  const Fsa a = random_nfa(rng, 6, 2);
  const Fsa b = random_nfa(rng, 6, 2);
  const Fsa u = combine(BoolOp::Union, a, b);
  const Fsa i = combine(BoolOp::Intersection, a, b);
  const Fsa d = combine(BoolOp::Difference, a, b);
  for (std::size_t len = 0; len <= 6; ++len) {
    for (std::size_t code = 0; code < (1u << len); ++code) {
      const auto w = word_of(code, len, 2);
      CHECK(u.accepts(w) == (a.accepts(w) || b.accepts(w)));
      CHECK(i.accepts(w) == (a.accepts(w) && b.accepts(w)));
      CHECK(d.accepts(w) == (a.accepts(w) && !b.accepts(w)));
    }
  }
  const Fsa empty(ab(), 1);
  CHECK(are_equivalent(combine(BoolOp::Union, a, empty), a));
  CHECK(is_empty(combine(BoolOp::Intersection, a, combine(BoolOp::Difference, u, a))));
  CHECK(is_empty(empty));
  const Analysis an = analyze(empty, 4);
  CHECK(an.is_empty);
  for (const auto& c : an.counts) CHECK(c == 0);
  Fsa other(Alphabet{{"x", "y"}}, 1);
  CHECK_THROWS_AS(combine(BoolOp::Union, a, other), Error);
  CHECK_THROWS_AS(are_equivalent(a, other), Error);
}

TEST_CASE("reversal") {
  std::mt19937 rng(99);
  const Fsa a = random_nfa(rng, 6, 2);
  const Fsa r = determinize_minimize(reversed(a));
  for (std::size_t len = 0; len <= 6; ++len) {
    for (std::size_t code = 0; code < (1u << len); ++code) {
      auto w = word_of(code, len, 2);
      const bool fwd = a.accepts(w);
      std::reverse(w.begin(), w.end());
      CHECK(r.accepts(w) == fwd);
    }
  }
}

TEST_CASE("file format round trip") {
  std::mt19937 rng(3);
  for (const Fsa& f : {even_a_redundant(), random_nfa(rng, 5, 2), determinize_minimize(canonical_fsa(testing::w237()))}) {
    std::stringstream s;
    f.write(s);
    const std::string text = s.str();
    const Fsa g = Fsa::read(s);
    CHECK(g == f);
    std::stringstream again;
    g.write(again);
    CHECK(again.str() == text);
  }
  std::stringstream bad("states 2 alphabet a b initial 0\n0 a 5\naccept 1\n");
  CHECK_THROWS_AS(Fsa::read(bad), Error);
  std::stringstream no_accept("states 1 alphabet a initial 0\n");
  CHECK_THROWS_AS(Fsa::read(no_accept), Error);
}

TEST_CASE("state cap") {
  std::mt19937 rng(5);
  const Fsa f = random_nfa(rng, 12, 2);
  try {
    (void)determinize_minimize(f, 1);
    FAIL("expected StateBlowup");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::StateBlowup);
  }
}

TEST_CASE("canonical automaton agrees with the floating-point root oracle") {
  for (const CoxeterGroup* g : {&testing::w237(), &testing::w2224()}) {
    const Fsa can = canonical_fsa(*g);
    CHECK(can.is_deterministic());
    const testing::FloatReflections oracle(g->presentation());
    const std::size_t max_len = g->rank() == 3 ? 10 : 8;
    std::size_t mismatches = 0;
    for (std::size_t len = 0; len <= max_len; ++len) {
      for (const auto& w : testing::all_words(g->rank(), len)) {
        if (can.accepts(symbols(w)) != oracle.is_reduced(w)) ++mismatches;
      }
    }
    CHECK(mismatches == 0);
    const auto counts = analyze(can, max_len).counts;
    const auto expect = oracle.reduced_word_counts(max_len);
    for (std::size_t i = 0; i <= max_len; ++i) CHECK(counts[i] == expect[i]);
  }
  CHECK_FALSE(accepts_word(canonical_fsa(testing::w237()), testing::w237(), "ss"));
}

TEST_CASE("factor automaton") {
  const CoxeterGroup& g = testing::w237();
  const Fsa f = factor_fsa(g, g.presentation().parse_word("rt"));
  CHECK(accepts_word(f, g, "srt"));
  CHECK_FALSE(accepts_word(f, g, "tr"));
  CHECK_FALSE(accepts_word(f, g, "rtt"));
  CHECK(are_equivalent(factor_fsa(g, {}), canonical_fsa(g)));
  CHECK_THROWS_AS(factor_fsa(g, g.presentation().parse_word("rr")), Error);
}

TEST_CASE("pair machines and projection") {
  const CoxeterGroup& g = testing::w237();
  const Presentation& p = g.presentation();
  const Fsa can = canonical_fsa(g);
  const Fsa pairs = equal_endpoint_pairs(g, can, can, 1, g.identity());
  CHECK(pairs.accepts(pairs.symbols_of({"r,r"})));
  CHECK_FALSE(pairs.accepts(pairs.symbols_of({"r,t", "t,r"})));
  const Fsa wider = equal_endpoint_pairs(g, can, can, 2, g.identity());
  CHECK(wider.accepts(wider.symbols_of({"r,t", "t,r"})));
  CHECK_FALSE(pairs.accepts(pairs.symbols_of({"r,s"})));
  CHECK_FALSE(pairs.accepts(pairs.symbols_of({"r,_"})));
  const Fsa proj = project_first(pairs, p);
  CHECK(are_equivalent(proj, can));
  const Fsa empty_pairs(pair_alphabet(p), 1);
  CHECK(is_empty(project_first(empty_pairs, p)));
  const Fsa rt = project_first(equal_endpoint_pairs(g, can, factor_fsa(g, p.parse_word("rt")), 2, g.identity()), p);
  CHECK(accepts_word(rt, g, "tr"));
  CHECK(pair_alphabet(p).size() == 15);
}

TEST_CASE("fellow-traveller constant") {
  const CoxeterGroup& g = testing::w237();
  const FellowTravelMeasure m = measure_fellow_travel(g, 10);
  CHECK(m.required() == 6);
  CHECK(validate_k(g, 6, 10).has_value());
  CHECK_FALSE(validate_k(g, 5, 10).has_value());
  CHECK_FALSE(validate_k(g, 0, 10).has_value());
  CHECK(validate_k(g, 11, 10).has_value());
  CHECK(measure_fellow_travel(testing::w2224(), 10).required() == 4);
  const ValidatedK k = *validate_k(testing::w2224(), 4, 10);
  try {
    (void)red_x_mu(g, g.presentation().parse_word("rt"), k);
    FAIL("expected KNotValidated");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::KNotValidated);
  }
}

TEST_CASE("Red(X_mu) examples and stability") {
  const CoxeterGroup& g = testing::w237();
  const Presentation& p = g.presentation();
  const Fsa rt = red_x_mu(g, p.parse_word("rt"), k237());
  CHECK(accepts_word(rt, g, "tr"));
  CHECK(accepts_word(rt, g, "rt"));
  CHECK_FALSE(accepts_word(rt, g, "rsr"));
  CHECK_FALSE(accepts_word(rt, g, "srs"));
  const Fsa top = red_x_mu(g, p.parse_word("stststs"), k237());
  CHECK(accepts_word(top, g, "stststs"));
  CHECK(accepts_word(top, g, "tststst"));
  CHECK(top == red_x_mu(g, p.parse_word("stststs"), k237().raised(8)));
  CHECK(rt == red_x_mu(g, p.parse_word("tr"), k237()));
}

TEST_CASE("inversion duality") {
  const CoxeterGroup& g = testing::w237();
  const ElementBall ball(g, 10);
  for (const char* pat : {"rt", "rsr", "stststs", "srt"}) {
    Word mu = g.presentation().parse_word(pat);
    Word rev(mu.rbegin(), mu.rend());
    const Fsa fwd = red_x_mu(g, mu, k237());
    const Fsa back = red_x_mu(g, rev, k237());
    for (const Element& w : ball.elements()) {
      CHECK(fwd.accepts(symbols(w.word)) == back.accepts(symbols(g.inverse(w).word)));
    }
  }
}

TEST_CASE("left translation") {
  const CoxeterGroup& g = testing::w237();
  const Presentation& p = g.presentation();
  const Fsa can = canonical_fsa(g);
  const Fsa rt = red_x_mu(g, p.parse_word("rt"), k237());
  CHECK(are_equivalent(left_translate(g, rt, g.identity(), k237()), rt));
  Fsa only_empty(generator_alphabet(p), 1);
  only_empty.set_accepting(0);
  const Element w = g.normal_form("rsrt");
  const Fsa tw = left_translate(g, only_empty, w, k237());
  CHECK(analyze(tw, 6).counts == std::vector<mpz_class>{0, 0, 0, 0, 3, 0, 0});
  for (const char* x : {"rsrt", "srst", "rstr"}) CHECK(accepts_word(tw, g, x));
  Fsa only_s(generator_alphabet(p), 2);
  only_s.add_edge(0, *p.find_symbol('s'), 1);
  only_s.set_accepting(1);
  const Fsa back = left_translate(g, only_s, g.normal_form("s"), k237());
  CHECK(are_equivalent(back, only_empty));
}

TEST_CASE("ShortLex automaton counts elements") {
  for (const CoxeterGroup* g : {&testing::w237(), &testing::w2224()}) {
    const std::size_t k = measure_fellow_travel(*g, 10).required();
    const Fsa sl = shortlex_fsa(*g, *validate_k(*g, k, 10));
    const auto counts = analyze(sl, 12).counts;
    const auto expect = testing::FloatReflections(g->presentation()).element_counts(12);
    for (std::size_t i = 0; i <= 12; ++i) CHECK(counts[i] == expect[i]);
    const ElementBall ball(*g, 8);
    for (const Element& e : ball.elements()) CHECK(sl.accepts(symbols(e.word)));
  }
}

TEST_CASE("descent classes") {
  for (const CoxeterGroup* g : {&testing::w237(), &testing::w2224()}) {
    const Presentation& p = g->presentation();
    const ElementBall ball(*g, g->rank() == 3 ? 10 : 7);
    const auto classes = valid_descent_classes(p);
    CHECK(classes.size() == 1 + p.rank() + (p.rank() == 3 ? 3 : 4));
    Fsa all(generator_alphabet(p), 1);
    for (GeneratorSet t : classes) {
      const Fsa f = descent_class_fsa(*g, t);
      for (const Element& w : ball.elements()) CHECK(f.accepts(symbols(w.word)) == (w.left == t));
      CHECK(is_empty(combine(BoolOp::Intersection, all, f)));
      all = combine(BoolOp::Union, all, f);
    }
    CHECK(are_equivalent(all, canonical_fsa(*g)));
    Fsa only_empty(generator_alphabet(p), 1);
    only_empty.set_accepting(0);
    CHECK(are_equivalent(descent_class_fsa(*g, 0), only_empty));
  }
  try {
    (void)descent_class_fsa(testing::w2224(), testing::w2224().presentation().parse_set("ac"));
    FAIL("expected InvalidDescentClass");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidDescentClass);
  }
}

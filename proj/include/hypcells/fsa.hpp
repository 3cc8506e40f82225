#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace hypcells {

class Presentation;

// Named symbols; indices are dense.
struct Alphabet {
  std::vector<std::string> names;

  std::size_t size() const { return names.size(); }
  std::uint32_t index_of(std::string_view name) const;  // throws AlphabetMismatch
  friend bool operator==(const Alphabet&, const Alphabet&) = default;
};

// One symbol per generator, named by its character.
Alphabet generator_alphabet(const Presentation& p);
// Padded pairs (a, b) with a, b in generators + pad, excluding (pad, pad).
// Symbol a*(n+1)+b, pad = n; names "r,s" and "r,_".
Alphabet pair_alphabet(const Presentation& p);
inline std::uint32_t pair_symbol(std::size_t rank, std::size_t a, std::size_t b) {
  return static_cast<std::uint32_t>(a * (rank + 1) + b);
}

// Finite automaton with optional epsilon moves. Edges per state are kept
// sorted by (symbol, target).
class Fsa {
 public:
  using State = std::uint32_t;
  using Symbol = std::uint32_t;
  static constexpr State kNone = std::numeric_limits<State>::max();
  static constexpr std::size_t kDefaultStateCap = 2'000'000;

  struct Edge {
    Symbol symbol;
    State target;
    friend auto operator<=>(const Edge&, const Edge&) = default;
  };

  Fsa() = default;
  Fsa(Alphabet alphabet, std::size_t states);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t state_count() const { return edges_.size(); }
  std::size_t edge_count() const;
  State initial() const { return initial_; }
  bool accepting(State q) const { return accept_[q] != 0; }
  const std::vector<Edge>& edges(State q) const { return edges_[q]; }
  const std::vector<State>& epsilons(State q) const { return eps_[q]; }

  State add_state(bool accepting = false);
  void add_edge(State from, Symbol symbol, State to);
  void add_epsilon(State from, State to);
  void set_initial(State q) { initial_ = q; }
  void set_accepting(State q, bool on = true) { accept_[q] = on; }

  // Deterministic transition (kNone if absent). Requires is_deterministic().
  State next(State q, Symbol a) const;

  bool is_deterministic() const;
  bool is_trim() const;  // every state reachable and co-reachable (initial exempt)
  bool accepts(const std::vector<Symbol>& word) const;

  // Symbols by name.
  std::vector<Symbol> symbols_of(const std::vector<std::string>& names) const;

  // Line format: "states N alphabet <names...> initial I", then "from sym to"
  // per edge ("@" for epsilon), then "accept i1 i2 ...".
  void write(std::ostream& out) const;
  static Fsa read(std::istream& in);
  void save(const std::filesystem::path& path) const;
  static Fsa load(const std::filesystem::path& path);

  friend bool operator==(const Fsa&, const Fsa&) = default;

 private:
  Alphabet alphabet_;
  std::vector<std::vector<Edge>> edges_;
  std::vector<std::vector<State>> eps_;
  State initial_ = 0;
  std::vector<char> accept_;
};

// Subset construction, trimming, Moore refinement and BFS renumbering. The
// result is the unique minimal partial DFA, so equal languages give equal
// objects. An empty language is a single non-accepting state.
Fsa determinize_minimize(const Fsa& a, std::size_t state_cap = Fsa::kDefaultStateCap);

bool are_equivalent(const Fsa& a, const Fsa& b);

enum class BoolOp { Union, Intersection, Difference };
// Product construction on determinized inputs; minimal result.
Fsa combine(BoolOp op, const Fsa& a, const Fsa& b);
Fsa reversed(const Fsa& a);

struct Analysis {
  bool is_empty = true;
  std::vector<mpz_class> counts;  // accepted words of each length 0..max_length
};
Analysis analyze(const Fsa& a, std::size_t max_length);

bool is_empty(const Fsa& a);

}  // namespace hypcells

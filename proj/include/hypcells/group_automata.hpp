#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "hypcells/fsa.hpp"
#include "hypcells/group.hpp"

namespace hypcells {

// Generator alphabet symbol i is generator i.
inline std::vector<Fsa::Symbol> symbols(const Word& w) { return {w.begin(), w.end()}; }

// Red(W): all reduced words; one state per reachable small-root set.
Fsa canonical_fsa(const CoxeterGroup& g);

// Reduced words containing `pattern` as a consecutive factor.
Fsa factor_fsa(const CoxeterGroup& g, const Word& pattern);

// Padded pairs (alpha, beta), alpha in L(a), beta in L(b), with
// alpha-bar = offset * beta-bar and every synchronous difference
// alpha_i^-1 * offset * beta_i of length <= bound. a and b must be
// deterministic over the generator alphabet.
Fsa equal_endpoint_pairs(const CoxeterGroup& g, const Fsa& a, const Fsa& b, std::size_t bound, const Element& offset,
                         std::size_t state_cap = Fsa::kDefaultStateCap);

// Erase the right coordinate; (pad, b) becomes an epsilon move.
Fsa project_first(const Fsa& pairs, const Presentation& p);

// Largest synchronous distance between two reduced expressions of one
// element (same_element), and between a reduced expression of w and one of
// ws with l(ws) = l(w) + 1 (neighbour), over all w of length <= radius.
struct FellowTravelMeasure {
  std::size_t radius = 0;
  std::size_t same_element = 0;
  std::size_t neighbour = 0;
  std::size_t required() const { return std::max<std::size_t>({1, same_element, neighbour}); }
};
FellowTravelMeasure measure_fellow_travel(const CoxeterGroup& g, std::size_t radius);

// A fellow-traveller constant that passed validation for one group.
class ValidatedK {
 public:
  std::size_t k() const { return k_; }
  std::size_t radius() const { return radius_; }
  const std::string& group_hash() const { return hash_; }
  // Any larger constant is valid too.
  ValidatedK raised(std::size_t k) const;
  // Rehydrate a value previously produced by validate_k (workspace cache).
  static ValidatedK restore(const CoxeterGroup& g, std::size_t k, std::size_t radius);

 private:
  friend std::optional<ValidatedK> validate_k(const CoxeterGroup&, std::size_t, std::size_t);
  ValidatedK(std::size_t k, std::size_t radius, std::string hash) : k_(k), radius_(radius), hash_(std::move(hash)) {}
  std::size_t k_;
  std::size_t radius_;
  std::string hash_;
};

std::optional<ValidatedK> validate_k(const CoxeterGroup& g, std::size_t k, std::size_t radius);
// Throws KNotValidated unless k was validated for this group.
void require_validated(const CoxeterGroup& g, const ValidatedK& k);

// Red(X_pattern): reduced expressions of elements having some reduced
// expression with `pattern` as a factor. Minimal DFA.
Fsa red_x_mu(const CoxeterGroup& g, const Word& pattern, const ValidatedK& k);

// Red(w * X) for the element set X of `a` (a subset of Red(W)).
Fsa left_translate(const CoxeterGroup& g, const Fsa& a, const Element& w, const ValidatedK& k);

// Smallest k >= 1 that validates at `radius` and for which red_x_mu of every
// given pattern agrees between k and k + 1.
ValidatedK select_k(const CoxeterGroup& g, const std::vector<Word>& patterns, std::size_t radius = 10);

// ShortLex-least reduced expressions: one word per element.
Fsa shortlex_fsa(const CoxeterGroup& g, const ValidatedK& k);

// Descent classes with W^T nonempty: the empty set, singletons, and pairs
// with finite order.
bool valid_descent_class(const Presentation& p, GeneratorSet t);
std::vector<GeneratorSet> valid_descent_classes(const Presentation& p);

// Red(W^T): reduced expressions of elements whose left descent set is T.
// Built from a reading of the canonical automaton backwards, tagged with the
// right descents of the guessed end state; throws InvalidDescentClass.
Fsa descent_class_fsa(const CoxeterGroup& g, GeneratorSet t);

}  // namespace hypcells

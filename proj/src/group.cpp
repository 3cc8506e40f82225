#include "hypcells/group.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>

namespace hypcells {

bool shortlex_less(WordView a, WordView b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

CanonicalAutomaton CanonicalAutomaton::build(const SmallRootTable& roots) {
  CanonicalAutomaton a;
  const std::size_t n = roots.rank();
  a.rank_ = n;
  std::map<std::vector<std::uint32_t>, std::uint32_t> index;
  std::deque<std::uint32_t> queue;

  auto intern = [&](std::vector<std::uint32_t> set) {
    auto [it, inserted] = index.emplace(set, static_cast<std::uint32_t>(a.members_.size()));
    if (inserted) {
      GeneratorSet desc = 0;
      for (std::uint32_t r : set) {
        if (r < n) desc |= singleton(static_cast<Generator>(r));
      }
      a.members_.push_back(std::move(set));
      a.descents_.push_back(desc);
      a.delta_.resize(a.members_.size() * n, kDead);
      queue.push_back(it->second);
    }
    return it->second;
  };

  intern({});
  while (!queue.empty()) {
    const std::uint32_t q = queue.front();
    queue.pop_front();
    for (std::size_t s = 0; s < n; ++s) {
      if (contains(a.descents_[q], static_cast<Generator>(s))) continue;
      std::vector<std::uint32_t> next{static_cast<std::uint32_t>(s)};
      for (std::uint32_t r : a.members_[q]) {
        const RootAction act = roots.action(r, static_cast<Generator>(s));
        if (act.kind == RootActionKind::Root) next.push_back(act.index);
      }
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      const std::uint32_t target = intern(std::move(next));
      a.delta_[q * n + s] = target;
    }
  }
  return a;
}

std::uint32_t CanonicalAutomaton::run(WordView w, std::uint32_t from) const {
  std::uint32_t q = from;
  for (Generator g : w) {
    q = delta_[q * rank_ + g];
    if (q == kDead) return kDead;
  }
  return q;
}

CoxeterGroup::CoxeterGroup(Presentation p)
    : presentation_(std::move(p)),
      roots_(SmallRootTable::compute(presentation_)),
      canonical_(CanonicalAutomaton::build(roots_)) {}

GeneratorSet CoxeterGroup::right_descents(WordView reduced) const {
  return canonical_.right_descents(canonical_.run(reduced));
}

GeneratorSet CoxeterGroup::left_descents(WordView reduced) const {
  std::uint32_t q = canonical_.initial();
  for (auto it = reduced.rbegin(); it != reduced.rend(); ++it) q = canonical_.next(q, *it);
  return canonical_.right_descents(q);
}

// u reduced. If s is a right descent of u, the exchange condition deletes the
// letter that starts the shortest suffix having s as a right descent.
Word CoxeterGroup::right_multiply_reduced(Word u, Generator s) const {
  if (!contains(right_descents(u), s)) {
    u.push_back(s);
    return u;
  }
  const std::size_t k = u.size();
  for (std::size_t j = 1; j <= k; ++j) {
    const WordView suffix(u.data() + (k - j), j);
    if (contains(right_descents(suffix), s)) {
      u.erase(u.begin() + static_cast<std::ptrdiff_t>(k - j));
      return u;
    }
  }
  return u;  // unreachable for reduced u
}

Word CoxeterGroup::reduce(WordView w) const {
  Word u;
  u.reserve(w.size());
  for (Generator g : w) u = right_multiply_reduced(std::move(u), g);
  return u;
}

Word CoxeterGroup::shortlex_from_reduced(Word x) const {
  Word out;
  out.reserve(x.size());
  while (!x.empty()) {
    const auto a = static_cast<Generator>(std::countr_zero(left_descents(x)));
    out.push_back(a);
    std::reverse(x.begin(), x.end());
    x = right_multiply_reduced(std::move(x), a);
    std::reverse(x.begin(), x.end());
  }
  return out;
}

Element CoxeterGroup::normal_form(WordView w) const {
  Element e;
  e.word = shortlex_from_reduced(reduce(w));
  e.left = left_descents(e.word);
  e.right = right_descents(e.word);
  return e;
}

Element CoxeterGroup::multiply(const Element& a, const Element& b) const {
  Word u = a.word;
  for (Generator g : b.word) u = right_multiply_reduced(std::move(u), g);
  return normal_form(u);
}

Element CoxeterGroup::multiply(Generator s, const Element& a) const {
  Word u(a.word.rbegin(), a.word.rend());
  u = right_multiply_reduced(std::move(u), s);
  std::reverse(u.begin(), u.end());
  return normal_form(u);
}

Element CoxeterGroup::multiply(const Element& a, Generator s) const {
  return normal_form(right_multiply_reduced(a.word, s));
}

Element CoxeterGroup::inverse(const Element& a) const {
  const Word r(a.word.rbegin(), a.word.rend());
  return normal_form(r);
}

}  // namespace hypcells

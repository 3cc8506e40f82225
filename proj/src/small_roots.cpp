#include "hypcells/small_roots.hpp"

#include <deque>
#include <numeric>

namespace hypcells {

FieldScalar SmallRootTable::pairing(Generator s, const Root& r) const {
  FieldScalar acc = field_->zero();
  for (std::size_t t = 0; t < rank_; ++t) {
    if (!r.coords[t].is_zero()) acc += form(s, static_cast<Generator>(t)) * r.coords[t];
  }
  return acc;
}

SmallRootTable SmallRootTable::compute(const Presentation& p) {
  SmallRootTable table;
  const std::size_t n = p.rank();
  table.rank_ = n;

  unsigned conductor = 1;
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = s + 1; t < n; ++t) {
      const CoxeterOrder m = p.order(static_cast<Generator>(s), static_cast<Generator>(t));
      if (m.is_finite()) conductor = std::lcm(conductor, m.value());
    }
  }
  table.field_ = CyclotomicField::make(conductor);
  const CyclotomicField& f = *table.field_;

  table.form_.resize(n * n);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = 0; t < n; ++t) {
      const CoxeterOrder m = p.order(static_cast<Generator>(s), static_cast<Generator>(t));
      FieldScalar b;
      if (s == t) b = f.one();
      else if (m.is_finite()) b = f.two_cos_pi_over(m.value()) * mpq_class(-1, 2);
      else b = f.rational(-1);
      table.form_[s * n + t] = b;
    }
  }

  for (std::size_t s = 0; s < n; ++s) {
    Root r;
    r.coords.assign(n, f.zero());
    r.coords[s] = f.one();
    r.depth = 1;
    table.roots_.push_back(std::move(r));
  }

  auto find = [&](const Root& r) -> std::ptrdiff_t {
    for (std::size_t i = 0; i < table.roots_.size(); ++i) {
      if (table.roots_[i].coords == r.coords) return static_cast<std::ptrdiff_t>(i);
    }
    return -1;
  };
  auto reflect = [&](Generator s, const Root& r, const FieldScalar& b) {
    Root out = r;
    out.coords[s] -= b * mpq_class(2);
    return out;
  };

  // Closure: beta small and -1 < B(alpha_s, beta) < 0 implies s(beta) small.
  const FieldScalar minus_one = f.rational(-1);
  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < n; ++i) queue.push_back(i);
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    for (std::size_t s = 0; s < n; ++s) {
      const FieldScalar b = table.pairing(static_cast<Generator>(s), table.roots_[i]);
      if (b.sign() >= 0 || (b - minus_one).sign() <= 0) continue;
      Root next = reflect(static_cast<Generator>(s), table.roots_[i], b);
      if (find(next) >= 0) continue;
      next.depth = table.roots_[i].depth + 1;
      table.roots_.push_back(std::move(next));
      queue.push_back(table.roots_.size() - 1);
    }
  }

  table.actions_.resize(table.roots_.size() * n);
  for (std::size_t i = 0; i < table.roots_.size(); ++i) {
    for (std::size_t s = 0; s < n; ++s) {
      RootAction& a = table.actions_[i * n + s];
      if (i == s) {
        a.kind = RootActionKind::NegativeSimple;
        continue;
      }
      const FieldScalar b = table.pairing(static_cast<Generator>(s), table.roots_[i]);
      const std::ptrdiff_t j = find(reflect(static_cast<Generator>(s), table.roots_[i], b));
      if (j >= 0) {
        a.kind = RootActionKind::Root;
        a.index = static_cast<std::uint32_t>(j);
      } else {
        a.kind = RootActionKind::Escaped;
      }
    }
  }
  return table;
}

}  // namespace hypcells

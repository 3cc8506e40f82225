#include "hypcells/hecke.hpp"

#include <algorithm>

#include "hypcells/error.hpp"

namespace hypcells {

namespace {

void accumulate(HeckeElement& into, ElementBall::Index key, const HalfLaurent& value) {
  if (value.is_zero()) return;
  auto [it, fresh] = into.emplace(key, value);
  if (!fresh) {
    it->second += value;
    if (it->second.is_zero()) into.erase(it);
  }
}

}  // namespace

// T_x T_s = T_{xs} if s is not a right descent of x, else q T_{xs} + (q-1) T_x.
HeckeElement HeckeAlgebra::multiply_generator(const HeckeElement& a, Generator s) const {
  static const HalfLaurent q = HalfLaurent::monomial(1, 2);
  static const HalfLaurent q_minus_one(0, {-1, 0, 1});
  HeckeElement out;
  for (const auto& [x, c] : a) {
    const Index xs = ball_->right(x, s);
    if (xs == ElementBall::kOutside) {
      throw Error(ErrorCode::BallTooSmall, "Hecke product leaves the ball of radius " + std::to_string(ball_->radius()));
    }
    if (!contains((*ball_)[x].right, s)) {
      accumulate(out, xs, c);
    } else {
      accumulate(out, xs, q * c);
      accumulate(out, x, q_minus_one * c);
    }
  }
  return out;
}

HeckeElement HeckeAlgebra::multiply(const HeckeElement& a, const HeckeElement& b) const {
  HeckeElement out;
  for (const auto& [y, cy] : b) {
    HeckeElement part = a;
    for (Generator s : (*ball_)[y].word) part = multiply_generator(part, s);
    for (const auto& [z, cz] : part) accumulate(out, z, cz * cy);
  }
  return out;
}

// C_w = sum_{y <= w} (-1)^{l(w)-l(y)} v^{l(w)-2l(y)} P_{y,w}(v^{-2}) T_y.
const HeckeElement& HeckeAlgebra::c_basis(Index w) const {
  if (const auto it = c_cache_.find(w); it != c_cache_.end()) return it->second;
  HeckeElement c;
  const long lw = static_cast<long>((*ball_)[w].length());
  for (const Index y : table_->lower_interval(w)) {
    const long ly = static_cast<long>((*ball_)[y].length());
    HalfLaurent coeff = HalfLaurent::from_q_poly(table_->kl_poly(y, w), lw - 2 * ly, true);
    if ((lw - ly) % 2 != 0) coeff = -coeff;
    accumulate(c, y, coeff);
  }
  return c_cache_.emplace(w, std::move(c)).first->second;
}

// The T_z coordinate of C_z is v^{-l(z)} and every other T_y in C_z has
// l(y) < l(z), so peeling the longest support element is triangular.
std::map<ElementBall::Index, HalfLaurent> HeckeAlgebra::to_c_basis(HeckeElement a) const {
  std::map<Index, HalfLaurent> out;
  while (!a.empty()) {
    const auto top = std::prev(a.end());
    const Index z = top->first;
    const HalfLaurent h = top->second.shifted(static_cast<long>((*ball_)[z].length()));
    out.emplace(z, h);
    for (const auto& [y, cy] : c_basis(z)) accumulate(a, y, -(h * cy));
    if (a.count(z)) throw Error(ErrorCode::BallTooSmall, "C-basis reduction did not eliminate the leading term");
  }
  return out;
}

std::map<ElementBall::Index, HalfLaurent> HeckeAlgebra::h_constants(Index x, Index y) const {
  return to_c_basis(multiply(c_basis(x), c_basis(y)));
}

std::map<ElementBall::Index, long> HeckeAlgebra::a_lower_bounds(std::size_t sample_radius) const {
  std::map<Index, long> out;
  const std::size_t end = ball_->end_of_length(std::min(sample_radius, ball_->radius()));
  for (std::size_t x = 0; x < end; ++x) {
    for (std::size_t y = 0; y < end; ++y) {
      for (const auto& [z, h] : h_constants(static_cast<Index>(x), static_cast<Index>(y))) {
        auto [it, fresh] = out.emplace(z, 0);
        it->second = std::max(it->second, -h.low());
      }
    }
  }
  return out;
}

long HeckeAlgebra::a_lower_bound(Index z, std::size_t sample_radius) const {
  const auto all = a_lower_bounds(sample_radius);
  const auto it = all.find(z);
  return it == all.end() ? 0 : it->second;
}

}  // namespace hypcells

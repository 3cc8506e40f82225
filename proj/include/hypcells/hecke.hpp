#pragma once

#include <map>
#include <vector>

#include "hypcells/kl.hpp"

namespace hypcells {

// T-basis coordinates keyed by ball index; index order is (length, ShortLex).
using HeckeElement = std::map<ElementBall::Index, HalfLaurent>;

// Hecke algebra arithmetic over the elements of one ball. Any product whose
// T-support leaves the ball raises BallTooSmall.
class HeckeAlgebra {
 public:
  using Index = ElementBall::Index;

  explicit HeckeAlgebra(const KLTable& table) : table_(&table), ball_(&table.ball()) {}

  HeckeElement t(Index w) const { return {{w, HalfLaurent::monomial(1, 0)}}; }
  HeckeElement multiply_generator(const HeckeElement& a, Generator s) const;  // a * T_s
  HeckeElement multiply(const HeckeElement& a, const HeckeElement& b) const;

  const HeckeElement& c_basis(Index w) const;

  // C_x C_y = sum_z h_{x,y,z} C_z.
  std::map<Index, HalfLaurent> h_constants(Index x, Index y) const;
  // Express a T-basis element in the C-basis.
  std::map<Index, HalfLaurent> to_c_basis(HeckeElement a) const;

  // max over x, y with l(x), l(y) <= sample_radius of -(lowest v-exponent of
  // h_{x,y,z}); one pass over all samples, reported per z.
  std::map<Index, long> a_lower_bounds(std::size_t sample_radius) const;
  long a_lower_bound(Index z, std::size_t sample_radius) const;

 private:
  const KLTable* table_;
  const ElementBall* ball_;
  mutable std::map<Index, HeckeElement> c_cache_;
};

}  // namespace hypcells

#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "hypcells/field.hpp"
#include "hypcells/presentation.hpp"

namespace hypcells {

struct Root {
  std::vector<FieldScalar> coords;  // in the simple-root basis
  unsigned depth = 1;
};

enum class RootActionKind : std::uint8_t { Root, NegativeSimple, Escaped };

struct RootAction {
  RootActionKind kind = RootActionKind::Escaped;
  std::uint32_t index = 0;  // valid when kind == Root
};

// The finite set of small (elementary) roots of the standard geometric
// representation, together with how each generator reflection moves them.
// Simple roots occupy indices 0..rank-1.
class SmallRootTable {
 public:
  static SmallRootTable compute(const Presentation& p);

  std::size_t size() const { return roots_.size(); }
  std::size_t rank() const { return rank_; }
  const Root& root(std::size_t i) const { return roots_[i]; }
  RootAction action(std::size_t root, Generator s) const { return actions_[root * rank_ + s]; }
  const CyclotomicField& field() const { return *field_; }

  // B(alpha_s, alpha_t) = -cos(pi/m(s,t)), or -1 when m is infinite.
  const FieldScalar& form(Generator s, Generator t) const { return form_[s * rank_ + t]; }
  FieldScalar pairing(Generator s, const Root& r) const;

 private:
  std::shared_ptr<const CyclotomicField> field_;
  std::size_t rank_ = 0;
  std::vector<FieldScalar> form_;
  std::vector<Root> roots_;
  std::vector<RootAction> actions_;
};

}  // namespace hypcells

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <optional>
#include <unordered_map>
#include <vector>

#include "hypcells/group.hpp"

namespace hypcells {

// All elements of length <= radius, sorted by (length, ShortLex), with
// right (w -> ws) and left (w -> sw) Cayley edges. Read-only once built.
class ElementBall {
 public:
  using Index = std::uint32_t;
  static constexpr Index kOutside = std::numeric_limits<Index>::max();
  static constexpr std::size_t kDefaultCap = 5'000'000;

  ElementBall(const CoxeterGroup& group, std::size_t radius, std::size_t cap = kDefaultCap);

  const CoxeterGroup& group() const { return *group_; }
  std::size_t radius() const { return radius_; }
  std::size_t size() const { return elements_.size(); }
  const Element& operator[](Index i) const { return elements_[i]; }
  const std::vector<Element>& elements() const { return elements_; }

  std::optional<Index> find(const Word& normal_word) const;
  Index index_of(const Element& e) const;  // throws if outside

  // Index of ws / sw, or kOutside when the product is longer than radius.
  Index right(Index i, Generator s) const { return right_[i * rank_ + s]; }
  Index left(Index i, Generator s) const { return left_[i * rank_ + s]; }

  // [first, last) index range of each length.
  std::size_t begin_of_length(std::size_t len) const { return offsets_[len]; }
  std::size_t end_of_length(std::size_t len) const { return offsets_[len + 1]; }
  std::vector<std::size_t> counts_by_length() const;

  // length \t normal_word \t left_descents \t right_descents
  void write_tsv(std::ostream& out) const;
  static std::vector<Element> read_tsv(std::istream& in, const Presentation& p);

 private:
  const CoxeterGroup* group_;
  std::size_t radius_;
  std::size_t rank_;
  std::vector<Element> elements_;
  std::vector<std::size_t> offsets_;
  std::unordered_map<Word, Index, WordHash> index_;
  std::vector<Index> right_;
  std::vector<Index> left_;
};

}  // namespace hypcells

#include "hypcells/ball.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>

#include "hypcells/error.hpp"

namespace hypcells {

ElementBall::ElementBall(const CoxeterGroup& group, std::size_t radius, std::size_t cap)
    : group_(&group), radius_(radius), rank_(group.rank()) {
  elements_.push_back(group.identity());
  offsets_ = {0, 1};
  index_.emplace(Word{}, 0);

  struct Candidate {
    Index parent;
    Generator s;
    Element product;
  };
  struct Edge {
    Index from;
    Generator s;
    Index to;
  };
  std::vector<Edge> up_edges;

  for (std::size_t len = 0; len < radius; ++len) {
    std::vector<Candidate> candidates;
    for (std::size_t i = offsets_[len]; i < offsets_[len + 1]; ++i) {
      for (std::size_t s = 0; s < rank_; ++s) {
        if (!contains(elements_[i].right, static_cast<Generator>(s))) {
          candidates.push_back({static_cast<Index>(i), static_cast<Generator>(s), {}});
        }
      }
    }
    const auto count = static_cast<std::ptrdiff_t>(candidates.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t c = 0; c < count; ++c) {
      auto& cand = candidates[static_cast<std::size_t>(c)];
      cand.product = group.multiply(elements_[cand.parent], cand.s);
    }
    std::vector<Element> level;
    level.reserve(candidates.size());
    for (const auto& cand : candidates) level.push_back(cand.product);
    std::sort(level.begin(), level.end());
    level.erase(std::unique(level.begin(), level.end()), level.end());
    if (elements_.size() + level.size() > cap) {
      throw Error(ErrorCode::ResourceLimit, "ball of radius " + std::to_string(radius) + " exceeds element cap " +
                                                std::to_string(cap));
    }
    for (auto& e : level) {
      index_.emplace(e.word, static_cast<Index>(elements_.size()));
      elements_.push_back(std::move(e));
    }
    offsets_.push_back(elements_.size());
    for (const auto& cand : candidates) up_edges.push_back({cand.parent, cand.s, index_.at(cand.product.word)});
  }

  right_.assign(elements_.size() * rank_, kOutside);
  left_.assign(elements_.size() * rank_, kOutside);
  for (const Edge& e : up_edges) {
    right_[e.from * rank_ + e.s] = e.to;
    right_[e.to * rank_ + e.s] = e.from;
  }

  const std::size_t inner = offsets_[radius];
  std::vector<Index> up_left(inner * rank_, kOutside);
  const auto inner_count = static_cast<std::ptrdiff_t>(inner);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t i = 0; i < inner_count; ++i) {
    const Element& w = elements_[static_cast<std::size_t>(i)];
    for (std::size_t s = 0; s < rank_; ++s) {
      const auto g = static_cast<Generator>(s);
      if (contains(w.left, g)) continue;
      up_left[static_cast<std::size_t>(i) * rank_ + s] = index_.at(group.multiply(g, w).word);
    }
  }
  for (std::size_t i = 0; i < inner; ++i) {
    for (std::size_t s = 0; s < rank_; ++s) {
      const Index j = up_left[i * rank_ + s];
      if (j == kOutside) continue;
      left_[i * rank_ + s] = j;
      left_[j * rank_ + s] = static_cast<Index>(i);
    }
  }
}

std::optional<ElementBall::Index> ElementBall::find(const Word& normal_word) const {
  const auto it = index_.find(normal_word);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

ElementBall::Index ElementBall::index_of(const Element& e) const {
  const auto it = index_.find(e.word);
  if (it == index_.end()) {
    throw Error(ErrorCode::BallTooSmall,
                "element " + group_->format(e) + " is outside the ball of radius " + std::to_string(radius_));
  }
  return it->second;
}

std::vector<std::size_t> ElementBall::counts_by_length() const {
  std::vector<std::size_t> out;
  for (std::size_t len = 0; len + 1 < offsets_.size(); ++len) out.push_back(offsets_[len + 1] - offsets_[len]);
  return out;
}

void ElementBall::write_tsv(std::ostream& out) const {
  const Presentation& p = group_->presentation();
  for (const Element& e : elements_) {
    out << e.length() << '\t' << p.format_word(e.word) << '\t' << p.format_set(e.left) << '\t'
        << p.format_set(e.right) << '\n';
  }
}

std::vector<Element> ElementBall::read_tsv(std::istream& in, const Presentation& p) {
  std::vector<Element> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      const std::size_t tab = line.find('\t', start);
      fields.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (fields.size() != 4) {
      throw Error(ErrorCode::CorruptCache, "ball record line " + std::to_string(lineno) + " has " +
                                               std::to_string(fields.size()) + " fields");
    }
    Element e;
    try {
      e.word = p.parse_word(fields[1]);
      e.left = p.parse_set(fields[2]);
      e.right = p.parse_set(fields[3]);
      if (std::stoul(fields[0]) != e.word.size()) throw Error(ErrorCode::CorruptCache, "length mismatch");
    } catch (const std::exception& ex) {
      throw Error(ErrorCode::CorruptCache, "ball record line " + std::to_string(lineno) + ": " + ex.what());
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace hypcells

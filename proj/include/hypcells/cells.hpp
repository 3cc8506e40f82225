#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hypcells/kl.hpp"

namespace hypcells {

// Directed W-graph restricted to a ball. Edge v -> w iff mu(v, w) != 0 (in
// either order of lengths) and descents(v) is not a subset of descents(w).
struct WGraph {
  using Index = ElementBall::Index;
  Side side = Side::Left;
  std::size_t vertex_count = 0;
  std::vector<std::pair<Index, Index>> edges;  // sorted

  std::vector<std::vector<Index>> adjacency() const;
};

WGraph w_graph(const KLTable& table, Side side);

// Block id per vertex; ids numbered by first occurrence in index order.
struct Partition {
  std::vector<std::uint32_t> block;

  std::size_t block_count() const;
  std::vector<std::vector<std::uint32_t>> blocks() const;
  bool refines(const Partition& coarser) const;
  friend bool operator==(const Partition&, const Partition&) = default;
};

// Renumber arbitrary labels by first occurrence.
Partition normalize(const std::vector<std::uint32_t>& labels);

// Strongly connected components (iterative Tarjan).
Partition strongly_connected(std::size_t vertex_count, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges);
inline Partition cells(const WGraph& g) { return strongly_connected(g.vertex_count, g.edges); }

// Finest common coarsening (union-find).
Partition join(const Partition& a, const Partition& b);

struct EmpiricalCells {
  Partition left;
  Partition right;
  Partition two_sided;
};
EmpiricalCells empirical_cells(const KLTable& table);

}  // namespace hypcells

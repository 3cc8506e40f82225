#include "hypcells/cells.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace hypcells {

std::vector<std::vector<WGraph::Index>> WGraph::adjacency() const {
  std::vector<std::vector<Index>> adj(vertex_count);
  for (const auto& [a, b] : edges) adj[a].push_back(b);
  return adj;
}

WGraph w_graph(const KLTable& table, Side side) {
  const ElementBall& ball = table.ball();
  WGraph g;
  g.side = side;
  g.vertex_count = ball.size();
  for (std::size_t w = 0; w < ball.size(); ++w) {
    const auto wi = static_cast<WGraph::Index>(w);
    const GeneratorSet dw = ball[wi].descents(side);
    for (const auto v : table.lower_interval(wi)) {
      if (table.mu(v, wi) == 0) continue;
      const GeneratorSet dv = ball[v].descents(side);
      if ((dv & ~dw) != 0) g.edges.emplace_back(v, wi);
      if ((dw & ~dv) != 0) g.edges.emplace_back(wi, v);
    }
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

std::size_t Partition::block_count() const {
  std::uint32_t top = 0;
  for (auto b : block) top = std::max(top, b + 1);
  return top;
}

std::vector<std::vector<std::uint32_t>> Partition::blocks() const {
  std::vector<std::vector<std::uint32_t>> out(block_count());
  for (std::size_t i = 0; i < block.size(); ++i) out[block[i]].push_back(static_cast<std::uint32_t>(i));
  return out;
}

bool Partition::refines(const Partition& coarser) const {
  if (block.size() != coarser.block.size()) return false;
  std::vector<std::int64_t> image(block_count(), -1);
  for (std::size_t i = 0; i < block.size(); ++i) {
    auto& slot = image[block[i]];
    if (slot < 0) slot = coarser.block[i];
    else if (slot != coarser.block[i]) return false;
  }
  return true;
}

Partition normalize(const std::vector<std::uint32_t>& labels) {
  std::unordered_map<std::uint32_t, std::uint32_t> rename;
  Partition p;
  p.block.reserve(labels.size());
  for (auto l : labels) {
    const auto [it, fresh] = rename.emplace(l, static_cast<std::uint32_t>(rename.size()));
    p.block.push_back(it->second);
  }
  return p;
}

Partition strongly_connected(std::size_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (const auto& [a, b] : edges) adj[a].push_back(b);
  constexpr std::uint32_t kUnset = ~std::uint32_t{0};
  std::vector<std::uint32_t> index(n, kUnset), low(n, 0), comp(n, kUnset);
  std::vector<char> on_stack(n, 0);
  std::vector<std::uint32_t> stack;
  std::vector<std::pair<std::uint32_t, std::size_t>> call;  // (vertex, next edge)
  std::uint32_t counter = 0, comps = 0;
  for (std::uint32_t root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    call.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      auto& [v, next] = call.back();
      if (next < adj[v].size()) {
        const std::uint32_t u = adj[v][next++];
        if (index[u] == kUnset) {
          index[u] = low[u] = counter++;
          stack.push_back(u);
          on_stack[u] = 1;
          call.emplace_back(u, 0);
        } else if (on_stack[u]) {
          low[v] = std::min(low[v], index[u]);
        }
        continue;
      }
      const std::uint32_t done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      if (low[done] == index[done]) {
        std::uint32_t u;
        do {
          u = stack.back();
          stack.pop_back();
          on_stack[u] = 0;
          comp[u] = comps;
        } while (u != done);
        ++comps;
      }
    }
  }
  return normalize(comp);
}

Partition join(const Partition& a, const Partition& b) {
  const std::size_t n = a.block.size();
  std::vector<std::uint32_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  auto unite_blocks = [&](const Partition& p) {
    std::vector<std::int64_t> first(p.block_count(), -1);
    for (std::uint32_t i = 0; i < n; ++i) {
      auto& f = first[p.block[i]];
      if (f < 0) {
        f = i;
        continue;
      }
      const std::uint32_t x = find(i), y = find(static_cast<std::uint32_t>(f));
      if (x != y) parent[std::max(x, y)] = std::min(x, y);
    }
  };
  unite_blocks(a);
  unite_blocks(b);
  std::vector<std::uint32_t> roots(n);
  for (std::uint32_t i = 0; i < n; ++i) roots[i] = find(i);
  return normalize(roots);
}

EmpiricalCells empirical_cells(const KLTable& table) {
  EmpiricalCells out;
  out.left = cells(w_graph(table, Side::Left));
  out.right = cells(w_graph(table, Side::Right));
  out.two_sided = join(out.left, out.right);
  return out;
}

}  // namespace hypcells

#include "crnkit/graph.hpp"

#include <algorithm>
#include <numeric>

namespace crnkit {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

std::vector<std::vector<std::size_t>> connected_components(std::size_t n,
                                                           std::span<const Reaction> edges) {
  DisjointSets sets(n);
  for (const auto& e : edges) sets.unite(e.source, e.target);

  std::vector<std::vector<std::size_t>> components;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t v = 0; v < n; ++v) {
    const auto root = sets.find(v);
    if (slot[root] == n) {
      slot[root] = components.size();
      components.emplace_back();
    }
    components[slot[root]].push_back(v);
  }
  return components;
}

std::vector<std::size_t> strongly_connected_components(std::size_t n,
                                                       std::span<const Reaction> edges) {
  std::vector<std::vector<std::size_t>> out(n);
  for (const auto& e : edges) out[e.source].push_back(e.target);

  constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, unvisited), low(n, 0), comp(n, unvisited);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t next_index = 0;
  std::size_t next_comp = 0;

  // Iterative Tarjan: frames hold (vertex, position in adjacency list).
  std::vector<std::pair<std::size_t, std::size_t>> frames;
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != unvisited) continue;
    frames.emplace_back(root, 0);
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      if (pos < out[v].size()) {
        const auto w = out[v][pos++];
        if (index[w] == unvisited) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const auto done = v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().first] = std::min(low[frames.back().first], low[done]);
      if (low[done] == index[done]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = next_comp;
        } while (w != done);
        ++next_comp;
      }
    }
  }
  return comp;
}

bool every_component_strongly_connected(std::size_t n, std::span<const Reaction> edges) {
  const auto comp = strongly_connected_components(n, edges);
  return std::all_of(edges.begin(), edges.end(),
                     [&](const Reaction& e) { return comp[e.source] == comp[e.target]; });
}

bool is_strongly_connected(std::size_t n, std::span<const Reaction> edges) {
  if (n == 0) return false;
  const auto comp = strongly_connected_components(n, edges);
  return std::all_of(comp.begin(), comp.end(), [&](std::size_t c) { return c == comp[0]; });
}

}  // namespace crnkit

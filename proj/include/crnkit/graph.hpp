#pragma once

// Directed-graph utilities over vertex indices 0..n-1.

#include <cstddef>
#include <span>
#include <vector>

namespace crnkit {

struct Reaction {
  std::size_t source = 0;
  std::size_t target = 0;

  friend bool operator==(const Reaction&, const Reaction&) = default;
  friend auto operator<=>(const Reaction&, const Reaction&) = default;
};

/// Components of the underlying undirected graph. Each component is sorted
/// and components are ordered by their smallest member.
std::vector<std::vector<std::size_t>> connected_components(std::size_t n,
                                                           std::span<const Reaction> edges);

/// Component id per vertex (Tarjan). Ids are dense but otherwise arbitrary.
std::vector<std::size_t> strongly_connected_components(std::size_t n,
                                                       std::span<const Reaction> edges);

/// True iff every weakly connected component is strongly connected, i.e.
/// every edge lies on a directed cycle.
bool every_component_strongly_connected(std::size_t n, std::span<const Reaction> edges);

/// True iff the whole vertex set 0..n-1 forms a single strongly connected
/// component. A single vertex counts as strongly connected.
bool is_strongly_connected(std::size_t n, std::span<const Reaction> edges);

}  // namespace crnkit

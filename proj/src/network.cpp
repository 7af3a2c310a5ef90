#include "crnkit/network.hpp"

#include "crnkit/errors.hpp"
#include "crnkit/linalg.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace crnkit {

Complex make_complex(std::initializer_list<Rational> exponents) {
  return Complex(make_vector(exponents));
}

std::string format_complex(const Complex& c, std::span<const std::string> species) {
  std::string out;
  for (Eigen::Index i = 0; i < c.dim(); ++i) {
    const Rational& coef = c.exponents[i];
    if (coef == 0) continue;
    if (!out.empty()) out += " + ";
    if (coef != 1) out += to_string(coef) + " ";
    out += static_cast<std::size_t>(i) < species.size() ? species[static_cast<std::size_t>(i)]
                                                        : "S" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

ReactionNetwork::ReactionNetwork(std::vector<std::string> species, std::vector<Complex> vertices,
                                 std::vector<Reaction> edges)
    : species_(std::move(species)) {
  const auto n = static_cast<Eigen::Index>(species_.size());
  for (const auto& v : vertices) {
    if (v.dim() != n)
      throw DimensionMismatch("complex has " + std::to_string(v.dim()) + " entries but the network has " +
                              std::to_string(n) + " species");
    for (Eigen::Index i = 0; i < n; ++i)
      if (v.exponents[i] < 0)
        throw ValidationError("complex " + format_complex(v, species_) + " has a negative coefficient");
  }

  // Sort vertices and remember where each input index went.
  std::vector<std::size_t> order(vertices.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return vertices[a] < vertices[b]; });
  std::vector<std::size_t> new_index(vertices.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k > 0 && vertices[order[k]] == vertices[order[k - 1]])
      throw ValidationError("duplicate vertex " + format_complex(vertices[order[k]], species_));
    new_index[order[k]] = k;
    vertices_.push_back(vertices[order[k]]);
  }

  for (const auto& e : edges) {
    if (e.source >= vertices.size() || e.target >= vertices.size())
      throw ValidationError("edge refers to a vertex index out of range");
    if (e.source == e.target)
      throw ValidationError("self-loop at " + format_complex(vertices[e.source], species_));
    edges_.push_back({new_index[e.source], new_index[e.target]});
  }
  std::sort(edges_.begin(), edges_.end());
  for (std::size_t k = 1; k < edges_.size(); ++k)
    if (edges_[k] == edges_[k - 1])
      throw ValidationError("duplicate reaction " + format_complex(vertices_[edges_[k].source], species_) +
                            " -> " + format_complex(vertices_[edges_[k].target], species_));

  std::vector<bool> touched(vertices_.size(), false);
  for (const auto& e : edges_) touched[e.source] = touched[e.target] = true;
  for (std::size_t v = 0; v < vertices_.size(); ++v)
    if (!touched[v])
      throw ValidationError("isolated vertex " + format_complex(vertices_[v], species_) +
                            " takes part in no reaction");
}

ReactionNetwork ReactionNetwork::from_edges(std::vector<std::string> species,
                                            const std::vector<std::pair<Complex, Complex>>& edges) {
  std::vector<Complex> vertices;
  auto index_of = [&](const Complex& c) {
    auto it = std::find(vertices.begin(), vertices.end(), c);
    if (it != vertices.end()) return static_cast<std::size_t>(it - vertices.begin());
    vertices.push_back(c);
    return vertices.size() - 1;
  };
  std::vector<Reaction> indexed;
  indexed.reserve(edges.size());
  for (const auto& [s, t] : edges) {
    const auto si = index_of(s);
    const auto ti = index_of(t);
    indexed.push_back({si, ti});
  }
  return ReactionNetwork(std::move(species), std::move(vertices), std::move(indexed));
}

std::optional<std::size_t> ReactionNetwork::vertex_index(const Complex& c) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), c);
  if (it == vertices_.end() || !(*it == c)) return std::nullopt;
  return static_cast<std::size_t>(it - vertices_.begin());
}

std::optional<std::size_t> ReactionNetwork::edge_index(std::size_t source, std::size_t target) const {
  const Reaction key{source, target};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it == edges_.end() || !(*it == key)) return std::nullopt;
  return static_cast<std::size_t>(it - edges_.begin());
}

MassActionSystem::MassActionSystem(ReactionNetwork network, std::vector<Rational> rates)
    : network_(std::move(network)), rates_(std::move(rates)) {
  if (rates_.size() != network_.edges().size())
    throw ValidationError("expected " + std::to_string(network_.edges().size()) + " rate constants, got " +
                          std::to_string(rates_.size()));
  for (std::size_t k = 0; k < rates_.size(); ++k) {
    if (rates_[k] <= 0) {
      const auto& e = network_.edges()[k];
      throw ValidationError("non-positive rate " + to_string(rates_[k]) + " on reaction " +
                            format_complex(network_.vertices()[e.source], network_.species()) + " -> " +
                            format_complex(network_.vertices()[e.target], network_.species()));
    }
  }
}

MassActionSystem MassActionSystem::from_reactions(std::vector<std::string> species,
                                                  const std::vector<RatedReaction>& reactions) {
  std::vector<std::pair<Complex, Complex>> edges;
  edges.reserve(reactions.size());
  for (const auto& r : reactions) edges.emplace_back(r.source, r.target);
  ReactionNetwork network = ReactionNetwork::from_edges(std::move(species), edges);

  std::vector<Rational> rates(network.edges().size());
  for (const auto& r : reactions) {
    const auto s = network.vertex_index(r.source);
    const auto t = network.vertex_index(r.target);
    rates[*network.edge_index(*s, *t)] = r.rate;
  }
  return MassActionSystem(std::move(network), std::move(rates));
}

std::vector<RatedReaction> MassActionSystem::reactions() const {
  std::vector<RatedReaction> out;
  out.reserve(rates_.size());
  for (std::size_t k = 0; k < rates_.size(); ++k) {
    const auto& e = edges()[k];
    out.push_back({vertices()[e.source], vertices()[e.target], rates_[k]});
  }
  return out;
}

MassActionSystem MassActionSystem::with_rate(std::size_t edge, const Rational& rate) const {
  auto rates = rates_;
  rates.at(edge) = rate;
  return MassActionSystem(network_, std::move(rates));
}

std::vector<std::vector<std::size_t>> linkage_classes(const ReactionNetwork& g) {
  return connected_components(g.vertices().size(), g.edges());
}

bool is_weakly_reversible(const ReactionNetwork& g) {
  return every_component_strongly_connected(g.vertices().size(), g.edges());
}

std::vector<RatVector> stoichiometric_subspace_basis(const ReactionNetwork& g) {
  std::vector<RatVector> vectors;
  vectors.reserve(g.edges().size());
  for (const auto& e : g.edges()) vectors.push_back(g.reaction_vector(e));
  return column_space_basis<Rational>(vectors, g.dim());
}

std::vector<RatVector> class_subspace_basis(const ReactionNetwork& g,
                                            std::span<const std::size_t> vertex_class) {
  if (vertex_class.empty()) throw DomainError("class_subspace_basis: empty vertex class");
  for (auto v : vertex_class)
    if (v >= g.vertices().size()) throw DomainError("class_subspace_basis: vertex index out of range");
  const auto& base = g.vertices()[vertex_class.front()].exponents;
  std::vector<RatVector> diffs;
  for (std::size_t j = 1; j < vertex_class.size(); ++j)
    diffs.push_back(g.vertices()[vertex_class[j]].exponents - base);
  return column_space_basis<Rational>(diffs, g.dim());
}

long deficiency(const ReactionNetwork& g) {
  const auto dim_s = static_cast<long>(stoichiometric_subspace_basis(g).size());
  return static_cast<long>(g.vertices().size()) - static_cast<long>(linkage_classes(g).size()) - dim_s;
}

long class_deficiency(const ReactionNetwork& g, std::span<const std::size_t> vertex_class) {
  std::vector<std::size_t> sorted(vertex_class.begin(), vertex_class.end());
  std::sort(sorted.begin(), sorted.end());
  const auto classes = linkage_classes(g);
  if (std::find(classes.begin(), classes.end(), sorted) == classes.end())
    throw DomainError("class_deficiency: vertex set is not a linkage class");
  const auto dim = static_cast<long>(class_subspace_basis(g, sorted).size());
  return static_cast<long>(sorted.size()) - 1 - dim;
}

NetworkReport deficiency_zero_diagnosis(const ReactionNetwork& g) {
  NetworkReport report;
  report.linkage_classes = linkage_classes(g);
  report.weakly_reversible = is_weakly_reversible(g);
  report.dim_S = static_cast<long>(stoichiometric_subspace_basis(g).size());
  report.deficiency = static_cast<long>(g.vertices().size()) -
                      static_cast<long>(report.linkage_classes.size()) - report.dim_S;

  std::vector<std::vector<RatVector>> class_bases;
  for (const auto& cls : report.linkage_classes) {
    auto basis = class_subspace_basis(g, cls);
    const auto dim = static_cast<long>(basis.size());
    report.class_deficiencies.push_back(static_cast<long>(cls.size()) - 1 - dim);
    report.affinely_independent_classes.push_back(dim == static_cast<long>(cls.size()) - 1);
    class_bases.push_back(std::move(basis));
  }
  report.class_subspaces_independent = are_subspaces_independent<Rational>(class_bases);
  return report;
}

}  // namespace crnkit

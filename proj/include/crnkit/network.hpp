#pragma once

// Reaction-network structure: complexes, reactions, linkage classes, weak
// reversibility, stoichiometric subspaces and deficiency.

#include "crnkit/graph.hpp"
#include "crnkit/rational.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace crnkit {

/// A vertex of the reaction graph: a non-negative exponent vector, one entry
/// per species.
struct Complex {
  RatVector exponents;

  Complex() = default;
  explicit Complex(RatVector e) : exponents(std::move(e)) {}

  Eigen::Index dim() const { return exponents.size(); }
  bool is_zero() const { return (exponents.array() == Rational(0)).all(); }

  friend bool operator==(const Complex& a, const Complex& b) {
    return same_vector(a.exponents, b.exponents);
  }
  friend bool operator<(const Complex& a, const Complex& b) {
    return lex_less(a.exponents, b.exponents);
  }
};

Complex make_complex(std::initializer_list<Rational> exponents);

/// Renders "0" or terms such as "2 X + Y" in species order.
std::string format_complex(const Complex& c, std::span<const std::string> species);

/// Directed graph over distinct complexes. Vertices are kept in
/// lexicographic order and edges sorted by (source, target); construction
/// canonicalizes whatever order the caller used.
class ReactionNetwork {
 public:
  /// Edges index into `vertices` as given. Throws ValidationError on
  /// negative exponents, duplicate vertices, self-loops, duplicate edges
  /// and isolated vertices; DimensionMismatch when a complex does not have
  /// one entry per species.
  ReactionNetwork(std::vector<std::string> species, std::vector<Complex> vertices,
                  std::vector<Reaction> edges);

  /// Vertex set is exactly the set of complexes appearing in `edges`.
  static ReactionNetwork from_edges(std::vector<std::string> species,
                                    const std::vector<std::pair<Complex, Complex>>& edges);

  const std::vector<std::string>& species() const { return species_; }
  const std::vector<Complex>& vertices() const { return vertices_; }
  const std::vector<Reaction>& edges() const { return edges_; }
  Eigen::Index dim() const { return static_cast<Eigen::Index>(species_.size()); }

  std::optional<std::size_t> vertex_index(const Complex& c) const;
  std::optional<std::size_t> edge_index(std::size_t source, std::size_t target) const;

  RatVector reaction_vector(const Reaction& e) const {
    return vertices_[e.target].exponents - vertices_[e.source].exponents;
  }

  friend bool operator==(const ReactionNetwork&, const ReactionNetwork&) = default;

 private:
  std::vector<std::string> species_;
  std::vector<Complex> vertices_;
  std::vector<Reaction> edges_;
};

struct RatedReaction {
  Complex source;
  Complex target;
  Rational rate;
};

/// A reaction network with one strictly positive rate constant per edge,
/// aligned with `network().edges()`.
class MassActionSystem {
 public:
  MassActionSystem(ReactionNetwork network, std::vector<Rational> rates);

  static MassActionSystem from_reactions(std::vector<std::string> species,
                                         const std::vector<RatedReaction>& reactions);

  const ReactionNetwork& network() const { return network_; }
  const std::vector<Rational>& rates() const { return rates_; }
  const std::vector<Complex>& vertices() const { return network_.vertices(); }
  const std::vector<Reaction>& edges() const { return network_.edges(); }
  const std::vector<std::string>& species() const { return network_.species(); }
  Eigen::Index dim() const { return network_.dim(); }

  std::vector<RatedReaction> reactions() const;

  /// Same system with one rate replaced.
  MassActionSystem with_rate(std::size_t edge, const Rational& rate) const;

  friend bool operator==(const MassActionSystem&, const MassActionSystem&) = default;

 private:
  ReactionNetwork network_;
  std::vector<Rational> rates_;
};

struct NetworkReport {
  std::vector<std::vector<std::size_t>> linkage_classes;
  bool weakly_reversible = false;
  long dim_S = 0;
  long deficiency = 0;
  std::vector<long> class_deficiencies;
  std::vector<bool> affinely_independent_classes;
  bool class_subspaces_independent = false;
};

std::vector<std::vector<std::size_t>> linkage_classes(const ReactionNetwork& g);
bool is_weakly_reversible(const ReactionNetwork& g);

/// Maximal independent subset of the reaction vectors, in edge order.
std::vector<RatVector> stoichiometric_subspace_basis(const ReactionNetwork& g);

/// Basis of span{y_j - y_0 : y_j in the class}. Throws DomainError for an
/// empty class or an out-of-range index.
std::vector<RatVector> class_subspace_basis(const ReactionNetwork& g,
                                            std::span<const std::size_t> vertex_class);

long deficiency(const ReactionNetwork& g);

/// |V_i| - 1 - dim S(V_i). Throws DomainError when `vertex_class` is not one
/// of the linkage classes of g (order of members is irrelevant).
long class_deficiency(const ReactionNetwork& g, std::span<const std::size_t> vertex_class);

NetworkReport deficiency_zero_diagnosis(const ReactionNetwork& g);

}  // namespace crnkit

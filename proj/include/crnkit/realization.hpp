#pragma once

// Weakly reversible deficiency-zero (WR0) realizations of polynomial
// systems: vertex extraction, the exhaustive partition search with
// structural pruning, and the uniqueness certificate.

#include "crnkit/dynamics.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace crnkit {

struct OdeSystem {
  std::vector<std::string> variable_names;
  PolynomialMap poly;
};

/// The polynomial system generated by a mass-action system.
OdeSystem ode_of(const MassActionSystem& sys);

/// Vertex indices grouped into candidate linkage classes.
struct PartitionCandidate {
  std::vector<std::vector<std::size_t>> classes;

  friend bool operator==(const PartitionCandidate&, const PartitionCandidate&) = default;
};

enum class FailureReason { NoVertices, InfeasibleLinkageCount, NoValidPartition };

std::string to_string(FailureReason reason);

struct RealizationResult {
  std::optional<MassActionSystem> system;
  std::optional<FailureReason> failure_reason;
  /// Linkage classes of the returned system, as indices into the extracted
  /// vertex list.
  std::optional<PartitionCandidate> partition;
};

/// Why candidate partitions were rejected. A partition is charged to the
/// first rule it fails, checked in declaration order.
struct PruneCounts {
  std::uint64_t singleton_class = 0;
  std::uint64_t affine_dependence = 0;
  std::uint64_t net_vector_rank = 0;
  std::uint64_t kernel_sign = 0;
  std::uint64_t subspace_dependence = 0;
  std::uint64_t rate_solve = 0;

  PruneCounts& operator+=(const PruneCounts& o);
  friend bool operator==(const PruneCounts&, const PruneCounts&) = default;
};

struct UniquenessCertificate {
  /// Partitions whose classes all have at least two vertices.
  std::uint64_t partitions_examined = 0;
  /// Number of partitions yielding a WR0 realization. Never above one
  /// unless the uniqueness theorem fails.
  std::uint64_t valid_count = 0;
  PruneCounts pruned_by;
  std::optional<MassActionSystem> witness;
  std::vector<PartitionCandidate> valid_partitions;
};

struct SearchOptions {
  /// Worker threads; 0 means CRNKIT_THREADS if set, else all cores.
  std::size_t threads = 0;
};

/// `requested` if nonzero, else CRNKIT_THREADS if set, else the hardware
/// thread count.
std::size_t resolve_thread_count(std::size_t requested);

/// Monomials of f with nonzero coefficient vectors, in lexicographic order.
std::vector<Complex> extract_vertices(const OdeSystem& f);

/// |V| - rank(W), where W holds the coefficient vectors as columns, when it
/// lies in [1, |V|/2]; nullopt otherwise.
std::optional<std::size_t> required_linkage_count(const OdeSystem& f);

/// The unique non-negative rates reproducing `net_vectors` on an affinely
/// independent class, or nullopt when some rate would be negative, a
/// source's system is inconsistent, or the positive-rate digraph is not
/// strongly connected. Throws DomainError for an affinely dependent class
/// or mismatched lengths.
std::optional<std::vector<RatedReaction>> solve_class_rates(std::span<const Complex> class_vertices,
                                                            std::span<const RatVector> net_vectors);

RealizationResult find_wr0_realization(const OdeSystem& f, const SearchOptions& options = {});

inline constexpr std::size_t default_certify_cap = 10;

/// Exhaustive check over every partition into classes of size >= 2,
/// without the linkage-count shortcut and without stopping at the first
/// success. Throws DomainError above `max_vertices`.
UniquenessCertificate certify_uniqueness(const OdeSystem& f,
                                         std::size_t max_vertices = default_certify_cap,
                                         const SearchOptions& options = {});

/// Deterministic random WR0 system: affinely independent classes with
/// independent stoichiometric subspaces, each carrying a random strongly
/// connected digraph with positive rational rates. Throws DomainError when
/// the sizes cannot be met (a class smaller than 2, or sum of sizes above
/// n_species + n_classes).
MassActionSystem random_wr0_system(std::size_t n_species, std::size_t n_classes,
                                   const std::vector<std::size_t>& class_sizes, std::uint64_t seed);

}  // namespace crnkit

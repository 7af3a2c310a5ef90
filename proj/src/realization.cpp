#include "crnkit/realization.hpp"

#include "crnkit/errors.hpp"
#include "crnkit/linalg.hpp"
#include "crnkit/partition.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <limits>
#include <random>
#include <thread>
#include <unordered_map>

namespace crnkit {

OdeSystem ode_of(const MassActionSystem& sys) {
  return OdeSystem{sys.species(), rhs_polynomial(sys)};
}

std::string to_string(FailureReason reason) {
  switch (reason) {
    case FailureReason::NoVertices:
      return "NoVertices";
    case FailureReason::InfeasibleLinkageCount:
      return "InfeasibleLinkageCount";
    case FailureReason::NoValidPartition:
      return "NoValidPartition";
  }
  return "Unknown";
}

PruneCounts& PruneCounts::operator+=(const PruneCounts& o) {
  singleton_class += o.singleton_class;
  affine_dependence += o.affine_dependence;
  net_vector_rank += o.net_vector_rank;
  kernel_sign += o.kernel_sign;
  subspace_dependence += o.subspace_dependence;
  rate_solve += o.rate_solve;
  return *this;
}

std::size_t resolve_thread_count(std::size_t requested) {
  std::size_t threads = requested;
  if (threads == 0) {
    if (const char* env = std::getenv("CRNKIT_THREADS")) {
      char* end = nullptr;
      const long parsed = std::strtol(env, &end, 10);
      if (end != env && parsed > 0) threads = static_cast<std::size_t>(parsed);
    }
  }
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  return threads;
}

std::vector<Complex> extract_vertices(const OdeSystem& f) {
  std::vector<Complex> out;
  out.reserve(f.poly.terms().size());
  for (const auto& [mono, coef] : f.poly.terms()) out.push_back(mono);
  return out;
}

std::optional<std::size_t> required_linkage_count(const OdeSystem& f) {
  std::vector<RatVector> coefficients;
  for (const auto& [mono, coef] : f.poly.terms()) coefficients.push_back(coef);
  const auto vertices = static_cast<long>(coefficients.size());
  const long linkage = vertices - static_cast<long>(rank_of<Rational>(coefficients, f.poly.dim()));
  if (linkage < 1 || 2 * linkage > vertices) return std::nullopt;
  return static_cast<std::size_t>(linkage);
}

std::optional<std::vector<RatedReaction>> solve_class_rates(std::span<const Complex> class_vertices,
                                                            std::span<const RatVector> net_vectors) {
  if (class_vertices.size() != net_vectors.size())
    throw DomainError("solve_class_rates: " + std::to_string(class_vertices.size()) + " vertices but " +
                      std::to_string(net_vectors.size()) + " net vectors");
  if (class_vertices.empty()) throw DomainError("solve_class_rates: empty class");
  std::vector<RatVector> points;
  for (const auto& c : class_vertices) points.push_back(c.exponents);
  if (!is_affinely_independent<Rational>(points))
    throw DomainError("solve_class_rates: class is affinely dependent");

  const std::size_t m = class_vertices.size();
  const Eigen::Index n = class_vertices.front().dim();
  std::vector<RatedReaction> reactions;
  std::vector<Reaction> support;
  for (std::size_t i = 0; i < m; ++i) {
    // Columns y_j - y_i for j != i; independent by affine independence, so
    // any solution is the only one.
    RatMatrix a(n, static_cast<Eigen::Index>(m - 1));
    std::vector<std::size_t> targets;
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      a.col(static_cast<Eigen::Index>(targets.size())) = points[j] - points[i];
      targets.push_back(j);
    }
    const auto kappa = solve_linear(a, net_vectors[i]);
    if (!kappa) return std::nullopt;
    for (std::size_t k = 0; k < targets.size(); ++k) {
      const Rational& rate = (*kappa)[static_cast<Eigen::Index>(k)];
      if (rate < 0) return std::nullopt;
      if (rate == 0) continue;
      reactions.push_back({class_vertices[i], class_vertices[targets[k]], rate});
      support.push_back({i, targets[k]});
    }
  }
  if (!is_strongly_connected(m, support)) return std::nullopt;
  return reactions;
}

namespace {

enum class Verdict { Valid, SingletonClass, AffineDependence, NetVectorRank, KernelSign, SubspaceDependence, RateSolve };

struct ClassEntry {
  Verdict structure = Verdict::Valid;
  std::vector<RatVector> subspace_basis;
  bool rates_attempted = false;
  std::optional<std::vector<RatedReaction>> rates;
};

// Per-worker memo of class-level checks keyed by vertex bitmask.
class ClassCache {
 public:
  ClassCache(const std::vector<Complex>& vertices, const std::vector<RatVector>& net, Eigen::Index dim)
      : vertices_(vertices), net_(net), dim_(dim) {}

  ClassEntry& structure(const std::vector<std::size_t>& members) {
    const auto key = mask_of(members);
    auto [it, inserted] = cache_.try_emplace(key);
    if (inserted) it->second = check_structure(members);
    return it->second;
  }

  const std::optional<std::vector<RatedReaction>>& rates(const std::vector<std::size_t>& members) {
    ClassEntry& entry = structure(members);
    if (!entry.rates_attempted) {
      std::vector<Complex> verts;
      std::vector<RatVector> nets;
      for (auto v : members) {
        verts.push_back(vertices_[v]);
        nets.push_back(net_[v]);
      }
      entry.rates = solve_class_rates(verts, nets);
      entry.rates_attempted = true;
    }
    return entry.rates;
  }

 private:
  static std::uint64_t mask_of(const std::vector<std::size_t>& members) {
    std::uint64_t mask = 0;
    for (auto v : members) mask |= std::uint64_t{1} << v;
    return mask;
  }

  ClassEntry check_structure(const std::vector<std::size_t>& members) const {
    ClassEntry entry;
    const std::size_t m = members.size();
    const RatVector& base = vertices_[members.front()].exponents;
    for (std::size_t j = 1; j < m; ++j) entry.subspace_basis.push_back(vertices_[members[j]].exponents - base);
    if (rank_of<Rational>(entry.subspace_basis, dim_) != static_cast<Eigen::Index>(m - 1)) {
      entry.structure = Verdict::AffineDependence;
      return entry;
    }

    std::vector<RatVector> columns;
    for (auto v : members) columns.push_back(net_[v]);
    const RatMatrix w = columns_matrix<Rational>(columns, dim_);
    if (rank(w) != static_cast<Eigen::Index>(m - 1)) {
      entry.structure = Verdict::NetVectorRank;
      return entry;
    }

    // With rank m-1 the kernel is a line; a WR0 class needs it to pass
    // through the open positive orthant.
    const auto kernel = kernel_basis(w);
    if (kernel.size() != 1) {
      entry.structure = Verdict::KernelSign;
      return entry;
    }
    const RatVector& k = kernel.front();
    const bool positive = (k.array() > Rational(0)).all();
    const bool negative = (k.array() < Rational(0)).all();
    if (!(positive || negative)) entry.structure = Verdict::KernelSign;
    return entry;
  }

  const std::vector<Complex>& vertices_;
  const std::vector<RatVector>& net_;
  Eigen::Index dim_;
  std::unordered_map<std::uint64_t, ClassEntry> cache_;
};

Verdict evaluate_partition(const std::vector<std::vector<std::size_t>>& blocks, ClassCache& cache,
                           std::vector<RatedReaction>* reactions) {
  for (const auto& b : blocks)
    if (b.size() < 2) return Verdict::SingletonClass;
  for (const auto& b : blocks) {
    const Verdict v = cache.structure(b).structure;
    if (v != Verdict::Valid) return v;
  }
  if (blocks.size() > 1) {
    std::vector<std::vector<RatVector>> bases;
    for (const auto& b : blocks) bases.push_back(cache.structure(b).subspace_basis);
    if (!are_subspaces_independent<Rational>(bases)) return Verdict::SubspaceDependence;
  }
  for (const auto& b : blocks)
    if (!cache.rates(b)) return Verdict::RateSolve;
  if (reactions) {
    reactions->clear();
    for (const auto& b : blocks) {
      const auto& r = *cache.rates(b);
      reactions->insert(reactions->end(), r.begin(), r.end());
    }
  }
  return Verdict::Valid;
}

void charge(PruneCounts& counts, Verdict v) {
  switch (v) {
    case Verdict::SingletonClass: ++counts.singleton_class; break;
    case Verdict::AffineDependence: ++counts.affine_dependence; break;
    case Verdict::NetVectorRank: ++counts.net_vector_rank; break;
    case Verdict::KernelSign: ++counts.kernel_sign; break;
    case Verdict::SubspaceDependence: ++counts.subspace_dependence; break;
    case Verdict::RateSolve: ++counts.rate_solve; break;
    case Verdict::Valid: break;
  }
}

struct Success {
  std::uint64_t index;
  PartitionCandidate partition;
  std::vector<RatedReaction> reactions;
};

struct SearchOutcome {
  std::uint64_t examined = 0;
  PruneCounts pruned;
  std::vector<Success> successes;  // sorted by enumeration index
};

// Enumerates set partitions of the vertex list in restricted-growth order.
// `wanted_blocks` == 0 accepts any block count. Work is striped across
// threads by enumeration index; results merge deterministically.
SearchOutcome search_partitions(const std::vector<Complex>& vertices, const std::vector<RatVector>& net,
                                Eigen::Index dim, std::size_t wanted_blocks, bool stop_at_first,
                                std::size_t threads) {
  constexpr auto none = std::numeric_limits<std::uint64_t>::max();
  std::atomic<std::uint64_t> best{none};
  std::vector<SearchOutcome> partial(threads);

  auto worker = [&](std::size_t t) {
    ClassCache cache(vertices, net, dim);
    SearchOutcome& out = partial[t];
    RestrictedGrowthString rgs(vertices.size());
    std::uint64_t index = 0;
    std::vector<RatedReaction> reactions;
    do {
      const std::uint64_t current = index++;
      if (current % threads != t) continue;
      if (stop_at_first && current > best.load(std::memory_order_relaxed)) break;
      if (wanted_blocks != 0 && rgs.block_count() != wanted_blocks) continue;
      const auto blocks = rgs.blocks();
      const Verdict v = evaluate_partition(blocks, cache, &reactions);
      if (v != Verdict::SingletonClass) ++out.examined;
      charge(out.pruned, v);
      if (v == Verdict::Valid) {
        out.successes.push_back({current, PartitionCandidate{blocks}, reactions});
        if (stop_at_first) {
          auto seen = best.load();
          while (current < seen && !best.compare_exchange_weak(seen, current)) {
          }
          break;
        }
      }
    } while (rgs.next());
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker, t);
  }

  SearchOutcome merged;
  for (auto& p : partial) {
    merged.examined += p.examined;
    merged.pruned += p.pruned;
    for (auto& s : p.successes) merged.successes.push_back(std::move(s));
  }
  std::sort(merged.successes.begin(), merged.successes.end(),
            [](const Success& a, const Success& b) { return a.index < b.index; });
  return merged;
}

std::vector<RatVector> coefficient_vectors(const OdeSystem& f) {
  std::vector<RatVector> out;
  for (const auto& [mono, coef] : f.poly.terms()) out.push_back(coef);
  return out;
}

void require_vertex_budget(std::size_t count) {
  if (count > 64) throw DomainError("partition search supports at most 64 vertices, got " + std::to_string(count));
}

MassActionSystem assemble(const OdeSystem& f, const std::vector<RatedReaction>& reactions) {
  auto sys = MassActionSystem::from_reactions(f.variable_names, reactions);
  if (!(rhs_polynomial(sys) == f.poly) || deficiency(sys.network()) != 0 ||
      !is_weakly_reversible(sys.network()))
    throw InvariantViolation("assembled realization is not a WR0 realization of the input");
  return sys;
}

void require_names(const OdeSystem& f) {
  if (static_cast<Eigen::Index>(f.variable_names.size()) != f.poly.dim())
    throw DimensionMismatch("OdeSystem has " + std::to_string(f.variable_names.size()) +
                            " variable names for a " + std::to_string(f.poly.dim()) + "-dimensional field");
}

}  // namespace

RealizationResult find_wr0_realization(const OdeSystem& f, const SearchOptions& options) {
  require_names(f);
  RealizationResult result;
  const auto vertices = extract_vertices(f);
  if (vertices.empty()) {
    result.failure_reason = FailureReason::NoVertices;
    return result;
  }
  const auto linkage = required_linkage_count(f);
  if (!linkage) {
    result.failure_reason = FailureReason::InfeasibleLinkageCount;
    return result;
  }
  require_vertex_budget(vertices.size());
  const auto outcome = search_partitions(vertices, coefficient_vectors(f), f.poly.dim(), *linkage, true,
                                         resolve_thread_count(options.threads));
  if (outcome.successes.empty()) {
    result.failure_reason = FailureReason::NoValidPartition;
    return result;
  }
  const auto& first = outcome.successes.front();
  result.system = assemble(f, first.reactions);
  result.partition = first.partition;
  return result;
}

UniquenessCertificate certify_uniqueness(const OdeSystem& f, std::size_t max_vertices,
                                         const SearchOptions& options) {
  require_names(f);
  const auto vertices = extract_vertices(f);
  if (vertices.size() > max_vertices)
    throw DomainError("certify: " + std::to_string(vertices.size()) + " vertices exceed the cap of " +
                      std::to_string(max_vertices) + " (raise it with --max-vertices)");
  require_vertex_budget(vertices.size());

  UniquenessCertificate cert;
  if (vertices.empty()) return cert;
  const auto outcome = search_partitions(vertices, coefficient_vectors(f), f.poly.dim(), 0, false,
                                         resolve_thread_count(options.threads));
  cert.partitions_examined = outcome.examined;
  cert.pruned_by = outcome.pruned;
  cert.valid_count = outcome.successes.size();
  for (const auto& s : outcome.successes) cert.valid_partitions.push_back(s.partition);
  if (!outcome.successes.empty()) cert.witness = assemble(f, outcome.successes.front().reactions);
  return cert;
}

namespace {

std::vector<std::string> generated_species_names(std::size_t n) {
  static const char* letters[] = {"X", "Y", "Z", "W"};
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(n <= 4 ? letters[i] : "X" + std::to_string(i + 1));
  return names;
}

}  // namespace

MassActionSystem random_wr0_system(std::size_t n_species, std::size_t n_classes,
                                   const std::vector<std::size_t>& class_sizes, std::uint64_t seed) {
  if (n_species == 0) throw DomainError("random_wr0_system: need at least one species");
  if (n_classes == 0 || class_sizes.size() != n_classes)
    throw DomainError("random_wr0_system: expected " + std::to_string(n_classes) + " class sizes, got " +
                      std::to_string(class_sizes.size()));
  std::size_t total = 0;
  for (auto s : class_sizes) {
    if (s < 2) throw DomainError("random_wr0_system: every class needs at least two vertices");
    total += s;
  }
  if (total > n_species + n_classes)
    throw DomainError("random_wr0_system: " + std::to_string(total) + " vertices in " + std::to_string(n_classes) +
                      " classes need at least " + std::to_string(total - n_classes) + " species, got " +
                      std::to_string(n_species));

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coordinate(0, 3);
  const auto n = static_cast<Eigen::Index>(n_species);

  std::vector<std::vector<Complex>> classes;
  for (int attempt = 0;; ++attempt) {
    if (attempt == 10000) throw InvariantViolation("random_wr0_system: could not place vertices");
    classes.assign(n_classes, {});
    std::vector<Complex> all;
    for (std::size_t c = 0; c < n_classes; ++c) {
      for (std::size_t i = 0; i < class_sizes[c]; ++i) {
        RatVector v(n);
        for (Eigen::Index k = 0; k < n; ++k) v[k] = coordinate(rng);
        classes[c].emplace_back(v);
        all.emplace_back(std::move(v));
      }
    }
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end()) continue;

    std::vector<std::vector<RatVector>> bases;
    for (const auto& cls : classes) {
      std::vector<RatVector> diffs;
      for (std::size_t j = 1; j < cls.size(); ++j) diffs.push_back(cls[j].exponents - cls[0].exponents);
      bases.push_back(std::move(diffs));
    }
    std::size_t want = 0;
    std::vector<RatVector> flat;
    for (const auto& b : bases) {
      want += b.size();
      flat.insert(flat.end(), b.begin(), b.end());
    }
    if (rank_of<Rational>(flat, n) == static_cast<Eigen::Index>(want)) break;
  }

  std::uniform_int_distribution<int> numerator_dist(1, 9);
  std::uniform_int_distribution<int> denominator_dist(1, 4);
  std::bernoulli_distribution extra_edge(0.5);
  std::vector<RatedReaction> reactions;
  for (const auto& cls : classes) {
    const std::size_t m = cls.size();
    std::vector<std::size_t> cycle(m);
    for (std::size_t i = 0; i < m; ++i) cycle[i] = i;
    std::shuffle(cycle.begin(), cycle.end(), rng);
    std::vector<std::vector<bool>> used(m, std::vector<bool>(m, false));
    for (std::size_t i = 0; i < m; ++i) used[cycle[i]][cycle[(i + 1) % m]] = true;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (i != j && !used[i][j] && extra_edge(rng)) used[i][j] = true;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (used[i][j])
          reactions.push_back({cls[i], cls[j], Rational(numerator_dist(rng), denominator_dist(rng))});
  }

  auto sys = MassActionSystem::from_reactions(generated_species_names(n_species), reactions);
  if (deficiency(sys.network()) != 0 || !is_weakly_reversible(sys.network()))
    throw InvariantViolation("random_wr0_system produced a network that is not WR0");
  return sys;
}

}  // namespace crnkit

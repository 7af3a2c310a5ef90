#pragma once

// Fixture loading, random generators and independent oracles shared by the
// test binaries. The oracles deliberately avoid the library's elimination,
// expansion and search code paths.

#include "crnkit/dynamics.hpp"
#include "crnkit/io.hpp"
#include "crnkit/linalg.hpp"
#include "crnkit/network.hpp"
#include "crnkit/partition.hpp"
#include "crnkit/realization.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace crnkit::test {

inline std::string data_path(const std::string& name) {
  return std::string(CRNKIT_DATA_DIR) + "/" + name;
}

inline MassActionSystem load_network(const std::string& name) {
  return parse_network(read_file(data_path(name)));
}

inline OdeSystem load_ode(const std::string& name) {
  return parse_ode(read_file(data_path(name)));
}

inline RatMatrix rat_matrix(std::initializer_list<std::initializer_list<long>> rows) {
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = static_cast<Eigen::Index>(rows.begin()->size());
  RatMatrix m(r, c);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (long v : row) m(i, j++) = Rational(v);
    ++i;
  }
  return m;
}

inline RatVector ivec(std::initializer_list<long> values) {
  RatVector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (long x : values) v[i++] = Rational(x);
  return v;
}

// ---- determinant / rank oracle ------------------------------------------

/// Leibniz expansion over all permutations of the k selected columns.
inline Rational leibniz_det(const RatMatrix& m, const std::vector<Eigen::Index>& rows,
                            const std::vector<Eigen::Index>& cols) {
  std::vector<std::size_t> perm(rows.size());
  std::iota(perm.begin(), perm.end(), 0);
  Rational total(0);
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
      for (std::size_t j = i + 1; j < perm.size(); ++j)
        if (perm[i] > perm[j]) ++inversions;
    Rational term(inversions % 2 == 0 ? 1 : -1);
    for (std::size_t i = 0; i < perm.size(); ++i) term *= m(rows[i], cols[perm[i]]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline void subsets(Eigen::Index n, Eigen::Index k, std::vector<std::vector<Eigen::Index>>& out) {
  std::vector<bool> pick(static_cast<std::size_t>(n), false);
  std::fill(pick.begin(), pick.begin() + k, true);
  do {
    std::vector<Eigen::Index> s;
    for (Eigen::Index i = 0; i < n; ++i)
      if (pick[static_cast<std::size_t>(i)]) s.push_back(i);
    out.push_back(s);
  } while (std::prev_permutation(pick.begin(), pick.end()));
}

/// Largest k with a nonzero k x k minor.
inline Eigen::Index minor_rank(const RatMatrix& m) {
  for (Eigen::Index k = std::min(m.rows(), m.cols()); k > 0; --k) {
    std::vector<std::vector<Eigen::Index>> rs, cs;
    subsets(m.rows(), k, rs);
    subsets(m.cols(), k, cs);
    for (const auto& r : rs)
      for (const auto& c : cs)
        if (leibniz_det(m, r, c) != 0) return k;
  }
  return 0;
}

inline Eigen::Index minor_rank(const std::vector<RatVector>& columns, Eigen::Index dim) {
  if (columns.empty()) return 0;
  RatMatrix m(dim, static_cast<Eigen::Index>(columns.size()));
  for (std::size_t j = 0; j < columns.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = columns[j];
  return minor_rank(m);
}

// ---- RHS oracle -----------------------------------------------------------

inline Rational int_pow(const Rational& base, const Rational& exponent) {
  Rational out(1);
  const long e = numerator(exponent).convert_to<long>();
  for (long i = 0; i < e; ++i) out *= base;
  return out;
}

/// Direct per-edge evaluation of sum kappa x^y (y' - y); integral exponents.
inline RatVector direct_rhs(const MassActionSystem& sys, const RatVector& x) {
  RatVector out = RatVector::Zero(sys.dim());
  for (const auto& r : sys.reactions()) {
    Rational flux = r.rate;
    for (Eigen::Index s = 0; s < sys.dim(); ++s) flux *= int_pow(x[s], r.source.exponents[s]);
    for (Eigen::Index s = 0; s < sys.dim(); ++s)
      out[s] += flux * (r.target.exponents[s] - r.source.exponents[s]);
  }
  return out;
}

/// Polynomial equality decided by evaluating both vector fields at a grid of
/// distinct integer points, dense enough to separate monomials of degree
/// below `max_degree` in each variable.
inline bool same_vector_field(const MassActionSystem& a, const MassActionSystem& b, long max_degree) {
  const Eigen::Index n = a.dim();
  std::vector<long> idx(static_cast<std::size_t>(n), 0);
  const long side = max_degree + 1;
  while (true) {
    RatVector x(n);
    for (Eigen::Index s = 0; s < n; ++s) x[s] = Rational(idx[static_cast<std::size_t>(s)] + 1);
    if (direct_rhs(a, x) != direct_rhs(b, x)) return false;
    Eigen::Index s = 0;
    while (s < n && ++idx[static_cast<std::size_t>(s)] == side) idx[static_cast<std::size_t>(s++)] = 0;
    if (s == n) return true;
  }
}

inline long max_exponent(const MassActionSystem& sys) {
  long out = 0;
  for (const auto& v : sys.vertices())
    for (Eigen::Index s = 0; s < v.dim(); ++s)
      out = std::max(out, numerator(v.exponents[s]).convert_to<long>());
  return out;
}

// ---- random generators ----------------------------------------------------

inline std::vector<std::string> species_names(std::size_t n) {
  static const char* short_names[] = {"X", "Y", "Z", "W"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(n <= 4 ? std::string(short_names[i]) : "X" + std::to_string(i + 1));
  return out;
}

/// Random valid network over integer complexes in [0, max_coord]^n: random
/// distinct vertices (fewer if the grid is smaller), each joined by at least
/// one random edge.
inline MassActionSystem random_system(std::mt19937_64& rng, std::size_t n_species, std::size_t n_vertices,
                                      long max_coord = 2) {
  std::uniform_int_distribution<long> coord(0, max_coord);
  std::uniform_int_distribution<long> num(1, 6), den(1, 3);
  std::size_t grid = 1;
  for (std::size_t s = 0; s < n_species && grid < n_vertices; ++s) grid *= static_cast<std::size_t>(max_coord + 1);
  n_vertices = std::min(n_vertices, grid);
  std::set<Complex> seen;
  std::vector<Complex> vertices;
  while (vertices.size() < n_vertices) {
    RatVector v(static_cast<Eigen::Index>(n_species));
    for (auto& e : v) e = Rational(coord(rng));
    Complex c(v);
    if (seen.insert(c).second) vertices.push_back(c);
  }
  std::uniform_int_distribution<std::size_t> pick(0, n_vertices - 1);
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < n_vertices; ++i) {
    std::size_t j = pick(rng);
    while (j == i) j = pick(rng);
    if (rng() % 2) edges.insert({i, j});
    else edges.insert({j, i});
  }
  const std::size_t extra = rng() % (n_vertices + 1);
  for (std::size_t k = 0; k < extra; ++k) {
    const std::size_t i = pick(rng), j = pick(rng);
    if (i != j) edges.insert({i, j});
  }
  std::vector<RatedReaction> reactions;
  for (const auto& [i, j] : edges)
    reactions.push_back({vertices[i], vertices[j], Rational(num(rng)) / den(rng)});
  return MassActionSystem::from_reactions(species_names(n_species), reactions);
}

/// Random network with exactly `n_classes` linkage classes of two or three
/// vertices each, joined by a random path inside every class.
inline MassActionSystem random_classed_system(std::mt19937_64& rng, std::size_t n_species, std::size_t n_classes,
                                              long max_coord = 3) {
  long grid = 1;
  for (std::size_t s = 0; s < n_species; ++s) grid *= max_coord + 1;
  if (grid < static_cast<long>(3 * n_classes)) max_coord = static_cast<long>(3 * n_classes);
  std::uniform_int_distribution<long> coord(0, max_coord);
  std::set<Complex> seen;
  std::vector<RatedReaction> reactions;
  for (std::size_t c = 0; c < n_classes; ++c) {
    const std::size_t size = 2 + rng() % 2;
    std::vector<Complex> members;
    while (members.size() < size) {
      RatVector v(static_cast<Eigen::Index>(n_species));
      for (auto& e : v) e = Rational(coord(rng));
      Complex cx(v);
      if (seen.insert(cx).second) members.push_back(cx);
    }
    for (std::size_t i = 0; i + 1 < size; ++i) {
      const Rational rate(1 + static_cast<long>(rng() % 5));
      if (rng() % 2) reactions.push_back({members[i], members[i + 1], rate});
      else reactions.push_back({members[i + 1], members[i], rate});
      if (rng() % 2) reactions.push_back({reactions.back().target, reactions.back().source, rate + 1});
    }
  }
  return MassActionSystem::from_reactions(species_names(n_species), reactions);
}

/// An equivalent system obtained by splitting one reaction y -> y' of rate
/// k either into y -> y' + d and y -> y' - d at rate k/2 each, or into
/// y -> midpoint at rate 2k. Returns nullopt when the split would create a
/// negative exponent, a self-loop or a duplicate edge.
inline std::optional<MassActionSystem> split_equivalent(const MassActionSystem& sys, std::mt19937_64& rng) {
  auto reactions = sys.reactions();
  const std::size_t e = rng() % reactions.size();
  const auto r = reactions[e];
  reactions.erase(reactions.begin() + static_cast<std::ptrdiff_t>(e));
  std::vector<RatedReaction> added;
  if (rng() % 2) {
    RatVector d = RatVector::Zero(sys.dim());
    d[static_cast<Eigen::Index>(rng() % static_cast<std::size_t>(sys.dim()))] = Rational(1);
    added.push_back({r.source, Complex(r.target.exponents + d), r.rate / 2});
    added.push_back({r.source, Complex(r.target.exponents - d), r.rate / 2});
  } else {
    added.push_back({r.source, Complex((r.source.exponents + r.target.exponents) / Rational(2)), r.rate * 2});
  }
  for (const auto& a : added) {
    if ((a.target.exponents.array() < Rational(0)).any() || a.target == a.source) return std::nullopt;
    for (const auto& existing : reactions)
      if (existing.source == a.source && existing.target == a.target) return std::nullopt;
    reactions.push_back(a);
  }
  return MassActionSystem::from_reactions(sys.species(), reactions);
}

// ---- unpruned realization oracle -----------------------------------------

/// Every partition of the extracted vertices (classes of size >= 2) whose
/// per-class rates solve to a system that is weakly reversible, deficiency
/// zero, has exactly those classes as linkage classes, and reproduces f.
/// No lemma-based pruning; affinely dependent classes are skipped only
/// because no rate solve is defined for them, and such a class could never
/// belong to a deficiency-zero network anyway.
inline std::vector<PartitionCandidate> brute_force_realizations(const OdeSystem& f) {
  const auto vertices = extract_vertices(f);
  std::vector<PartitionCandidate> out;
  if (vertices.size() < 2) return out;
  RestrictedGrowthString rgs(vertices.size());
  do {
    const auto blocks = rgs.blocks();
    bool ok = true;
    std::vector<RatedReaction> reactions;
    for (const auto& block : blocks) {
      if (block.size() < 2) { ok = false; break; }
      std::vector<Complex> cls;
      std::vector<RatVector> pts, w;
      for (auto i : block) {
        cls.push_back(vertices[i]);
        pts.push_back(vertices[i].exponents);
        w.push_back(f.poly.terms().at(vertices[i]));
      }
      if (!is_affinely_independent<Rational>(pts)) { ok = false; break; }
      const auto rates = solve_class_rates(cls, w);
      if (!rates) { ok = false; break; }
      reactions.insert(reactions.end(), rates->begin(), rates->end());
    }
    if (!ok || reactions.empty()) continue;
    const auto sys = MassActionSystem::from_reactions(f.variable_names, reactions);
    if (sys.vertices().size() != vertices.size()) continue;
    if (!(rhs_polynomial(sys) == f.poly)) continue;
    if (deficiency(sys.network()) != 0 || !is_weakly_reversible(sys.network())) continue;
    if (linkage_classes(sys.network()).size() != blocks.size()) continue;
    out.push_back({blocks});
  } while (rgs.next());
  return out;
}

}  // namespace crnkit::test

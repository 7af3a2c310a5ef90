#pragma once

// Mass-action semantics: net reaction vectors, the polynomial right-hand
// side, dynamical equivalence, complex balancing and a fixed-step RK4
// integrator.

#include "crnkit/network.hpp"

#include <map>
#include <optional>
#include <span>
#include <vector>

namespace crnkit {

template <typename T>
using ComplexMap = std::map<Complex, T>;

/// Nonzero net reaction vectors keyed by source complex. Vertices whose net
/// vector vanishes are listed separately in `zero_vertices`.
struct NetReactionMap {
  ComplexMap<RatVector> entries;
  std::vector<Complex> zero_vertices;
};

/// Polynomial vector field in canonical form: each monomial (an exponent
/// vector) maps to a nonzero coefficient vector.
class PolynomialMap {
 public:
  explicit PolynomialMap(Eigen::Index n = 0) : n_(n) {}

  Eigen::Index dim() const { return n_; }
  const ComplexMap<RatVector>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  /// Adds coefficient * x^monomial, combining like terms and dropping any
  /// term that cancels to zero.
  void add_term(const Complex& monomial, const RatVector& coefficient);

  friend bool operator==(const PolynomialMap& a, const PolynomialMap& b);

 private:
  Eigen::Index n_;
  ComplexMap<RatVector> terms_;
};

RatVector net_reaction_vector(const MassActionSystem& sys, const Complex& y);
NetReactionMap net_reaction_map(const MassActionSystem& sys);

/// Expands sum over edges of kappa * x^source * (target - source).
PolynomialMap rhs_polynomial(const MassActionSystem& sys);

/// Exact evaluation. Throws DomainError when a fractional exponent meets a
/// value with no rational root, or when x has the wrong length.
RatVector evaluate_rhs(const PolynomialMap& p, const RatVector& x);

/// Floating evaluation; x must be strictly positive if any exponent is
/// fractional.
Eigen::VectorXd evaluate_rhs(const PolynomialMap& p, const Eigen::VectorXd& x);

/// Net reaction vectors agree at every vertex of either system.
bool is_dynamically_equivalent(const MassActionSystem& a, const MassActionSystem& b);

/// Net reaction vectors agree at every complex of `subset`.
bool is_dynamically_equivalent_on(const MassActionSystem& a, const MassActionSystem& b,
                                  std::span<const Complex> subset);

/// Outflow minus inflow at each vertex, aligned with sys.vertices().
std::vector<double> complex_balance_residual(const MassActionSystem& sys, const Eigen::VectorXd& x);

/// Basis of the orthogonal complement of the stoichiometric subspace.
std::vector<RatVector> conservation_laws(const ReactionNetwork& g);

/// Sum_i x_i (ln x_i - ln ref_i) - x_i + ref_i.
double lyapunov_value(const Eigen::VectorXd& x, const Eigen::VectorXd& reference);

struct SimulationOptions {
  double dt = 1e-3;
  std::size_t steps = 1000;
  /// Positive steady state used for Lyapunov sampling; skipped when absent.
  std::optional<Eigen::VectorXd> reference;
  /// States (and Lyapunov values) are stored every `record_every` steps,
  /// plus the initial and final state.
  std::size_t record_every = 1;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
  /// max over time and conservation laws c of |c.x(t) - c.x(0)|.
  double conserved_drift = 0.0;
  std::vector<double> lyapunov_samples;
  /// Set when a step left the positive orthant; the trajectory stops at the
  /// last positive state.
  bool aborted = false;
  std::size_t steps_taken = 0;
};

Trajectory simulate(const MassActionSystem& sys, const Eigen::VectorXd& x0,
                    const SimulationOptions& options);

}  // namespace crnkit

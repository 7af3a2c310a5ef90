#include "crnkit/dynamics.hpp"

#include "crnkit/errors.hpp"
#include "crnkit/linalg.hpp"

#include <cmath>
#include <set>

namespace crnkit {

namespace {

bool is_zero_vector(const RatVector& v) {
  return (v.array() == Rational(0)).all();
}

void require_same_dim(const MassActionSystem& a, const MassActionSystem& b) {
  if (a.dim() != b.dim())
    throw DimensionMismatch("systems have " + std::to_string(a.dim()) + " and " +
                            std::to_string(b.dim()) + " species");
}

// Floating-point monomial; integral exponents use repeated multiplication so
// that negative states are still evaluated exactly where defined.
double monomial(const Eigen::VectorXd& x, const RatVector& exponents) {
  double value = 1.0;
  for (Eigen::Index k = 0; k < exponents.size(); ++k) {
    const Rational& e = exponents[k];
    if (e == 0) continue;
    if (is_integer(e)) {
      const auto p = numerator(e).convert_to<long>();
      for (long i = 0; i < p; ++i) value *= x[k];
    } else {
      if (!(x[k] > 0.0))
        throw DomainError("fractional exponent applied to non-positive state component " +
                          std::to_string(k));
      value *= std::pow(x[k], to_double(e));
    }
  }
  return value;
}

}  // namespace

void PolynomialMap::add_term(const Complex& monomial, const RatVector& coefficient) {
  if (monomial.dim() != n_ || coefficient.size() != n_)
    throw DimensionMismatch("term dimension does not match polynomial map of dimension " +
                            std::to_string(n_));
  auto [it, inserted] = terms_.try_emplace(monomial, coefficient);
  if (!inserted) it->second += coefficient;
  if (is_zero_vector(it->second)) terms_.erase(it);
}

bool operator==(const PolynomialMap& a, const PolynomialMap& b) {
  if (a.n_ != b.n_ || a.terms_.size() != b.terms_.size()) return false;
  for (auto ia = a.terms_.begin(), ib = b.terms_.begin(); ia != a.terms_.end(); ++ia, ++ib)
    if (!(ia->first == ib->first) || !same_vector(ia->second, ib->second)) return false;
  return true;
}

RatVector net_reaction_vector(const MassActionSystem& sys, const Complex& y) {
  if (y.dim() != sys.dim())
    throw DimensionMismatch("complex dimension " + std::to_string(y.dim()) + " does not match " +
                            std::to_string(sys.dim()) + " species");
  RatVector w = RatVector::Zero(sys.dim());
  const auto source = sys.network().vertex_index(y);
  if (!source) return w;
  const auto& edges = sys.edges();
  for (std::size_t k = 0; k < edges.size(); ++k)
    if (edges[k].source == *source) w += sys.rates()[k] * sys.network().reaction_vector(edges[k]);
  return w;
}

NetReactionMap net_reaction_map(const MassActionSystem& sys) {
  NetReactionMap out;
  for (const auto& v : sys.vertices()) {
    RatVector w = net_reaction_vector(sys, v);
    if (is_zero_vector(w))
      out.zero_vertices.push_back(v);
    else
      out.entries.emplace(v, std::move(w));
  }
  return out;
}

PolynomialMap rhs_polynomial(const MassActionSystem& sys) {
  PolynomialMap p(sys.dim());
  const auto& edges = sys.edges();
  for (std::size_t k = 0; k < edges.size(); ++k)
    p.add_term(sys.vertices()[edges[k].source],
               RatVector(sys.rates()[k] * sys.network().reaction_vector(edges[k])));
  return p;
}

RatVector evaluate_rhs(const PolynomialMap& p, const RatVector& x) {
  if (x.size() != p.dim())
    throw DimensionMismatch("state has " + std::to_string(x.size()) + " entries, expected " +
                            std::to_string(p.dim()));
  RatVector out = RatVector::Zero(p.dim());
  for (const auto& [mono, coef] : p.terms()) {
    Rational value(1);
    for (Eigen::Index k = 0; k < mono.dim(); ++k) {
      auto factor = exact_pow(x[k], mono.exponents[k]);
      if (!factor)
        throw DomainError("x" + std::to_string(k) + "^" + to_string(mono.exponents[k]) + " at x" +
                          std::to_string(k) + " = " + to_string(x[k]) + " is not rational");
      value *= *factor;
    }
    out += value * coef;
  }
  return out;
}

Eigen::VectorXd evaluate_rhs(const PolynomialMap& p, const Eigen::VectorXd& x) {
  if (x.size() != p.dim())
    throw DimensionMismatch("state has " + std::to_string(x.size()) + " entries, expected " +
                            std::to_string(p.dim()));
  Eigen::VectorXd out = Eigen::VectorXd::Zero(p.dim());
  for (const auto& [mono, coef] : p.terms()) out += monomial(x, mono.exponents) * to_double(coef);
  return out;
}

bool is_dynamically_equivalent(const MassActionSystem& a, const MassActionSystem& b) {
  require_same_dim(a, b);
  std::set<Complex> all(a.vertices().begin(), a.vertices().end());
  all.insert(b.vertices().begin(), b.vertices().end());
  for (const auto& y : all)
    if (!same_vector(net_reaction_vector(a, y), net_reaction_vector(b, y))) return false;
  return true;
}

bool is_dynamically_equivalent_on(const MassActionSystem& a, const MassActionSystem& b,
                                  std::span<const Complex> subset) {
  require_same_dim(a, b);
  for (const auto& y : subset)
    if (!same_vector(net_reaction_vector(a, y), net_reaction_vector(b, y))) return false;
  return true;
}

std::vector<double> complex_balance_residual(const MassActionSystem& sys, const Eigen::VectorXd& x) {
  if (x.size() != sys.dim())
    throw DimensionMismatch("state has " + std::to_string(x.size()) + " entries, expected " +
                            std::to_string(sys.dim()));
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (!(x[i] > 0.0)) throw DomainError("complex_balance_residual requires a strictly positive state");

  std::vector<double> residual(sys.vertices().size(), 0.0);
  const auto& edges = sys.edges();
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const double flux = to_double(sys.rates()[k]) * monomial(x, sys.vertices()[edges[k].source].exponents);
    residual[edges[k].source] += flux;
    residual[edges[k].target] -= flux;
  }
  return residual;
}

std::vector<RatVector> conservation_laws(const ReactionNetwork& g) {
  const auto basis = stoichiometric_subspace_basis(g);
  RatMatrix rows(static_cast<Eigen::Index>(basis.size()), g.dim());
  for (std::size_t r = 0; r < basis.size(); ++r) rows.row(static_cast<Eigen::Index>(r)) = basis[r].transpose();
  return kernel_basis(rows);
}

double lyapunov_value(const Eigen::VectorXd& x, const Eigen::VectorXd& reference) {
  double v = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    v += x[i] * (std::log(x[i]) - std::log(reference[i])) - x[i] + reference[i];
  return v;
}

Trajectory simulate(const MassActionSystem& sys, const Eigen::VectorXd& x0,
                    const SimulationOptions& options) {
  const auto n = sys.dim();
  if (x0.size() != n)
    throw DimensionMismatch("initial state has " + std::to_string(x0.size()) + " entries, expected " +
                            std::to_string(n));
  if (!(options.dt > 0.0)) throw DomainError("simulate: dt must be positive");
  if (!(x0.array() > 0.0).all()) throw DomainError("simulate: initial state must be strictly positive");
  if (options.reference) {
    if (options.reference->size() != n) throw DimensionMismatch("reference state has the wrong dimension");
    if (!(options.reference->array() > 0.0).all())
      throw DomainError("simulate: reference state must be strictly positive");
  }

  // Compile the field to (exponents, net vector) pairs in double precision.
  std::vector<std::pair<RatVector, Eigen::VectorXd>> field;
  for (const auto& [y, w] : net_reaction_map(sys).entries) field.emplace_back(y.exponents, to_double(w));
  auto rhs = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd dx = Eigen::VectorXd::Zero(n);
    for (const auto& [exponents, w] : field) dx += monomial(x, exponents) * w;
    return dx;
  };

  std::vector<Eigen::VectorXd> laws;
  for (const auto& c : conservation_laws(sys.network())) laws.push_back(to_double(c));
  std::vector<double> initial_totals;
  for (const auto& c : laws) initial_totals.push_back(c.dot(x0));

  Trajectory traj;
  const std::size_t every = std::max<std::size_t>(options.record_every, 1);
  auto record = [&](double t, const Eigen::VectorXd& x) {
    traj.times.push_back(t);
    traj.states.push_back(x);
    if (options.reference) traj.lyapunov_samples.push_back(lyapunov_value(x, *options.reference));
  };

  const double dt = options.dt;
  Eigen::VectorXd x = x0;
  record(0.0, x);
  for (std::size_t step = 1; step <= options.steps; ++step) {
    Eigen::VectorXd next;
    bool left_domain = false;
    try {
      const Eigen::VectorXd k1 = rhs(x);
      const Eigen::VectorXd k2 = rhs(x + 0.5 * dt * k1);
      const Eigen::VectorXd k3 = rhs(x + 0.5 * dt * k2);
      const Eigen::VectorXd k4 = rhs(x + dt * k3);
      next = x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    } catch (const DomainError&) {
      // an intermediate stage hit a fractional power of a non-positive value
      left_domain = true;
    }
    if (left_domain || !(next.array() > 0.0).all() || !next.allFinite()) {
      traj.aborted = true;
      if (traj.times.back() != static_cast<double>(step - 1) * dt) record(static_cast<double>(step - 1) * dt, x);
      return traj;
    }
    x = std::move(next);
    traj.steps_taken = step;
    for (std::size_t i = 0; i < laws.size(); ++i)
      traj.conserved_drift = std::max(traj.conserved_drift, std::abs(laws[i].dot(x) - initial_totals[i]));
    if (step % every == 0 || step == options.steps) record(static_cast<double>(step) * dt, x);
  }
  return traj;
}

}  // namespace crnkit

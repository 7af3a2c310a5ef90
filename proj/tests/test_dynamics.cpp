#include "doctest.h"
#include "support.hpp"

#include "crnkit/errors.hpp"
#include "crnkit/linalg.hpp"

#include <cmath>

using namespace crnkit;
using crnkit::test::ivec;
using crnkit::test::load_network;

namespace {

PolynomialMap poly1(std::initializer_list<std::pair<long, long>> terms) {
  PolynomialMap p(1);
  for (auto [exp, coef] : terms) p.add_term(make_complex({exp}), ivec({coef}));
  return p;
}

}  // namespace

TEST_CASE("PolynomialMap combines and cancels terms") {
  PolynomialMap p(1);
  p.add_term(make_complex({1}), ivec({2}));
  p.add_term(make_complex({1}), ivec({-2}));
  CHECK(p.empty());
  p.add_term(make_complex({0}), ivec({0}));
  CHECK(p.empty());
  p.add_term(make_complex({2}), ivec({1}));
  p.add_term(make_complex({2}), ivec({3}));
  REQUIRE(p.terms().size() == 1);
  CHECK(p.terms().begin()->second == ivec({4}));
  CHECK_THROWS_AS(p.add_term(make_complex({1, 1}), ivec({1})), DimensionMismatch);
}

TEST_CASE("net_reaction_vector examples") {
  CHECK(net_reaction_vector(load_network("cubic_reversible_def1.crn"), make_complex({2})) == ivec({0}));
  CHECK(net_reaction_vector(load_network("cubic_wr0.crn"), make_complex({0})) == ivec({3}));
  CHECK(net_reaction_vector(load_network("nonwr_pair_a.crn"), make_complex({0, 2})) == ivec({2, -2}));
  CHECK(net_reaction_vector(load_network("cubic_wr0.crn"), make_complex({5})) == ivec({0}));
  CHECK_THROWS_AS(net_reaction_vector(load_network("cubic_wr0.crn"), make_complex({0, 0})), DimensionMismatch);
}

TEST_CASE("net_reaction_map examples") {
  auto m = net_reaction_map(load_network("cubic_wr0.crn"));
  CHECK(m.entries.size() == 2);
  CHECK(m.entries.at(make_complex({0})) == ivec({3}));
  CHECK(m.entries.at(make_complex({3})) == ivec({-3}));
  CHECK(m.zero_vertices.empty());

  m = net_reaction_map(load_network("cubic_reversible_def1.crn"));
  CHECK(m.entries.size() == 2);
  CHECK(m.entries.at(make_complex({0})) == ivec({3}));
  CHECK(m.entries.at(make_complex({3})) == ivec({-3}));
  CHECK(m.zero_vertices == std::vector<Complex>{make_complex({2})});

  m = net_reaction_map(load_network("exchange_b.crn"));
  CHECK(m.entries.size() == 4);
  CHECK(m.entries.at(make_complex({0})) == ivec({6}));
  CHECK(m.entries.at(make_complex({1})) == ivec({2}));
  CHECK(m.entries.at(make_complex({2})) == ivec({-2}));
  CHECK(m.entries.at(make_complex({3})) == ivec({-6}));
}

TEST_CASE("rhs_polynomial examples") {
  CHECK(rhs_polynomial(load_network("cubic_wr0.crn")) == poly1({{0, 3}, {3, -3}}));
  CHECK(rhs_polynomial(load_network("quartic_cycle.crn")) == poly1({{0, 2}, {1, -1}, {2, 1}, {3, -2}}));

  PolynomialMap diag(2);
  diag.add_term(make_complex({0, 0}), ivec({2, 2}));
  diag.add_term(make_complex({2, 2}), ivec({-2, -2}));
  CHECK(rhs_polynomial(load_network("diagonal_wr0.crn")) == diag);
  CHECK(rhs_polynomial(load_network("diagonal_collinear.crn")) == diag);
}

TEST_CASE("evaluate_rhs examples") {
  const auto p = rhs_polynomial(load_network("cubic_wr0.crn"));
  CHECK(evaluate_rhs(p, ivec({1})) == ivec({0}));
  CHECK(evaluate_rhs(p, ivec({2})) == ivec({-21}));
  CHECK(evaluate_rhs(rhs_polynomial(load_network("diagonal_wr0.crn")), ivec({1, 1})) == ivec({0, 0}));

  Eigen::VectorXd x(1);
  x << 2.0;
  CHECK(evaluate_rhs(p, x)[0] == doctest::Approx(-21.0));
  CHECK_THROWS_AS(evaluate_rhs(p, ivec({1, 1})), DimensionMismatch);
}

TEST_CASE("evaluate_rhs with fractional exponents") {
  PolynomialMap p(1);
  p.add_term(make_complex({Rational(1, 2)}), ivec({1}));
  RatVector x(1);
  x[0] = Rational(9, 4);
  CHECK(evaluate_rhs(p, x) == make_vector({Rational(3, 2)}));
  CHECK_THROWS_AS(evaluate_rhs(p, ivec({2})), DomainError);
  CHECK_THROWS_AS(evaluate_rhs(p, ivec({-4})), DomainError);
}

TEST_CASE("is_dynamically_equivalent examples") {
  const auto a = load_network("cubic_wr0.crn");
  CHECK(is_dynamically_equivalent(a, load_network("cubic_reversible_def1.crn")));
  CHECK(is_dynamically_equivalent(load_network("square_two_classes.crn"), load_network("square_one_class.crn")));
  CHECK_FALSE(is_dynamically_equivalent(a, a.with_rate(0, Rational(2))));
  CHECK_THROWS_AS(is_dynamically_equivalent(a, load_network("diagonal_wr0.crn")), DimensionMismatch);
}

TEST_CASE("is_dynamically_equivalent_on examples") {
  const auto a = load_network("square_two_classes.crn");
  const auto b = load_network("square_one_class.crn");
  CHECK(is_dynamically_equivalent_on(a, load_network("nonwr_pair_a.crn"), std::vector<Complex>{}));

  const std::vector<Complex> v0{make_complex({0, 0}), make_complex({2, 2})};
  CHECK(is_dynamically_equivalent_on(a, b, v0));

  const std::vector<Complex> two_x{make_complex({2})};
  CHECK(is_dynamically_equivalent_on(load_network("cubic_wr0.crn"), load_network("cubic_irreversible.crn"), two_x));

  const std::vector<Complex> origin{make_complex({0})};
  CHECK_FALSE(is_dynamically_equivalent_on(load_network("cubic_wr0.crn"), load_network("quartic_cycle.crn"), origin));
  CHECK_THROWS_AS(is_dynamically_equivalent_on(a, load_network("cubic_wr0.crn"), origin), DimensionMismatch);
}

TEST_CASE("complex_balance_residual examples") {
  const auto a = load_network("cubic_wr0.crn");
  Eigen::VectorXd x(1);
  x << 1.0;
  CHECK(complex_balance_residual(a, x) == std::vector<double>{0.0, 0.0});
  x << 2.0;
  const auto r = complex_balance_residual(a, x);
  CHECK(r[0] == doctest::Approx(-7.0));
  CHECK(r[1] == doctest::Approx(7.0));

  Eigen::VectorXd ones = Eigen::VectorXd::Ones(2);
  for (double v : complex_balance_residual(load_network("diagonal_wr0.crn"), ones)) CHECK(v == 0.0);

  x << 0.0;
  CHECK_THROWS_AS(complex_balance_residual(a, x), DomainError);
  x << -1.0;
  CHECK_THROWS_AS(complex_balance_residual(a, x), DomainError);
}

TEST_CASE("conservation laws and the Lyapunov function") {
  const auto tcell = load_network("tcell_n1.crn");
  const auto laws = conservation_laws(tcell.network());
  REQUIRE(laws.size() == 2);
  for (const auto& e : tcell.edges())
    for (const auto& c : laws) CHECK(c.dot(tcell.network().reaction_vector(e)) == Rational(0));
  std::vector<RatVector> expected{ivec({1, 0, 1, 1}), ivec({0, 1, 1, 1})};
  std::vector<RatVector> all = laws;
  all.insert(all.end(), expected.begin(), expected.end());
  CHECK(rank_of<Rational>(all, 4) == 2);

  Eigen::VectorXd ref(2), x(2);
  ref << 1.0, 2.0;
  CHECK(lyapunov_value(ref, ref) == doctest::Approx(0.0));
  x << 2.0, 1.0;
  CHECK(lyapunov_value(x, ref) > 0.0);
}

TEST_CASE("simulate converges to the positive root of 3 - 3x^3") {
  Eigen::VectorXd x0(1);
  x0 << 2.0;
  SimulationOptions opt;
  opt.dt = 1e-2;
  opt.steps = 2000;
  opt.record_every = 100;
  const auto t = simulate(load_network("cubic_wr0.crn"), x0, opt);
  CHECK_FALSE(t.aborted);
  CHECK(t.steps_taken == 2000);
  CHECK(t.times.size() == t.states.size());
  CHECK(t.times.back() == doctest::Approx(20.0));
  CHECK(std::abs(t.states.back()[0] - 1.0) < 1e-6);
}

TEST_CASE("simulate preserves x - y on the diagonal network") {
  Eigen::VectorXd x0(2);
  x0 << 2.0, 0.5;
  SimulationOptions opt;
  opt.dt = 1e-3;
  opt.steps = 5000;
  opt.record_every = 500;
  const auto t = simulate(load_network("diagonal_wr0.crn"), x0, opt);
  CHECK_FALSE(t.aborted);
  CHECK(t.conserved_drift < 1e-9);
  for (const auto& s : t.states) CHECK(std::abs((s[0] - s[1]) - 1.5) < 1e-9);
}

TEST_CASE("simulate samples a non-increasing Lyapunov function") {
  Eigen::VectorXd x0(4), ref(4);
  x0 << 3.0, 1.0, 0.5, 0.5;
  ref << 1.0, 2.0, 1.0, 1.0;
  SimulationOptions opt;
  opt.dt = 1e-2;
  opt.steps = 2000;
  opt.record_every = 10;
  opt.reference = ref;
  const auto t = simulate(load_network("tcell_n1.crn"), x0, opt);
  REQUIRE(t.lyapunov_samples.size() == t.states.size());
  for (std::size_t i = 1; i < t.lyapunov_samples.size(); ++i)
    CHECK(t.lyapunov_samples[i] <= t.lyapunov_samples[i - 1] + 1e-9);
  CHECK(t.conserved_drift < 1e-9);
}

TEST_CASE("simulate aborts when a step leaves the positive orthant") {
  const auto sys = parse_network("2 X -> 0 ; k = 1");
  Eigen::VectorXd x0(1);
  x0 << 10.0;
  SimulationOptions opt;
  opt.dt = 1.0;
  opt.steps = 10;
  const auto t = simulate(sys, x0, opt);
  CHECK(t.aborted);
  CHECK(t.steps_taken < 10);
  CHECK(t.times.size() == t.states.size());
  for (const auto& s : t.states) CHECK((s.array() > 0.0).all());
}

TEST_CASE("simulate rejects bad arguments") {
  const auto sys = load_network("cubic_wr0.crn");
  Eigen::VectorXd x0(1);
  x0 << 1.0;
  SimulationOptions opt;
  opt.dt = 0.0;
  CHECK_THROWS_AS(simulate(sys, x0, opt), DomainError);
  opt.dt = 1e-3;
  x0 << -1.0;
  CHECK_THROWS_AS(simulate(sys, x0, opt), DomainError);
  CHECK_THROWS_AS(simulate(sys, Eigen::VectorXd::Ones(2), opt), DimensionMismatch);
}

#include "doctest.h"
#include "support.hpp"

#include "crnkit/errors.hpp"
#include "crnkit/linalg.hpp"

using namespace crnkit;
using crnkit::test::ivec;
using crnkit::test::rat_matrix;

TEST_CASE("rational normalization and formatting") {
  const Rational a = Rational(6) / Rational(-4);
  CHECK(numerator(a) == -3);
  CHECK(denominator(a) == 2);
  CHECK(to_string(a) == "-3/2");
  CHECK(to_string(Rational(7)) == "7");
  CHECK(Rational(2, 4) == Rational(1, 2));

  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-4") == Rational(-4));
  CHECK(parse_rational("0.125") == Rational(1, 8));
  CHECK(parse_rational("010") == Rational(10));
  CHECK(parse_rational("07/010") == Rational(7, 10));
  CHECK(parse_rational(".5") == Rational(1, 2));
  CHECK(parse_rational("+2.50") == Rational(5, 2));
  CHECK_FALSE(parse_rational("1/0"));
  CHECK_FALSE(parse_rational("abc"));
  CHECK_FALSE(parse_rational(""));
}

TEST_CASE("exact_pow") {
  CHECK(exact_pow(Rational(2), Rational(3)) == Rational(8));
  CHECK(exact_pow(Rational(4, 9), Rational(1, 2)) == Rational(2, 3));
  CHECK(exact_pow(Rational(8), Rational(2, 3)) == Rational(4));
  CHECK_FALSE(exact_pow(Rational(2), Rational(1, 2)));
  CHECK_FALSE(exact_pow(Rational(-4), Rational(1, 2)));
}

TEST_CASE("rank examples") {
  CHECK(rank(RatMatrix::Identity(2, 2)) == 2);
  CHECK(rank(rat_matrix({{1, 1}, {2, -2}})) == 2);
  CHECK(rank(rat_matrix({{2, -1, 1, -2}})) == 1);
  CHECK(rank(RatMatrix::Zero(3, 2)) == 0);
  CHECK(rank(RatMatrix(0, 0)) == 0);
}

TEST_CASE("reduced row echelon form is canonical") {
  const auto ech = reduced_row_echelon(rat_matrix({{2, 4, 2}, {1, 2, 3}}));
  CHECK(ech.pivot_columns == std::vector<Eigen::Index>{0, 2});
  CHECK(ech.reduced == rat_matrix({{1, 2, 0}, {0, 0, 1}}));
}

TEST_CASE("kernel_basis examples") {
  CHECK(kernel_basis(RatMatrix::Identity(2, 2)).empty());

  auto k = kernel_basis(rat_matrix({{1, -1}}));
  REQUIRE(k.size() == 1);
  CHECK(k[0] == ivec({1, 1}));

  k = kernel_basis(rat_matrix({{3, -3}}));
  REQUIRE(k.size() == 1);
  CHECK(k[0] == ivec({1, 1}));
  CHECK((k[0].array() > Rational(0)).all());

  k = kernel_basis(RatMatrix::Zero(1, 2));
  REQUIRE(k.size() == 2);
  CHECK(k[0] == ivec({1, 0}));
  CHECK(k[1] == ivec({0, 1}));
}

TEST_CASE("solve_linear examples") {
  auto x = solve_linear(RatMatrix::Identity(2, 2), ivec({5, 7}));
  REQUIRE(x);
  CHECK(*x == ivec({5, 7}));

  x = solve_linear(rat_matrix({{2}, {2}}), ivec({2, 2}));
  REQUIRE(x);
  CHECK(*x == ivec({1}));

  CHECK_FALSE(solve_linear(rat_matrix({{0}, {2}}), ivec({1, 1})));

  CHECK_THROWS_AS(solve_linear(RatMatrix::Identity(2, 2), ivec({1, 2, 3})), DimensionMismatch);
}

TEST_CASE("solve_linear with free variables sets them to zero") {
  const auto x = solve_linear(rat_matrix({{1, 1}}), ivec({4}));
  REQUIRE(x);
  CHECK(*x == ivec({4, 0}));
}

TEST_CASE("is_affinely_independent examples") {
  std::vector<RatVector> pts{ivec({0}), ivec({3})};
  CHECK(is_affinely_independent<Rational>(pts));

  pts = {ivec({0}), ivec({2}), ivec({3})};
  CHECK_FALSE(is_affinely_independent<Rational>(pts));

  pts = {ivec({0, 0}), ivec({1, 1}), ivec({0, 2})};
  CHECK(is_affinely_independent<Rational>(pts));

  pts = {ivec({4, 4})};
  CHECK(is_affinely_independent<Rational>(pts));

  pts.clear();
  CHECK_THROWS_AS(is_affinely_independent<Rational>(pts), DomainError);

  pts = {ivec({0}), ivec({1, 1})};
  CHECK_THROWS_AS(is_affinely_independent<Rational>(pts), DimensionMismatch);
}

TEST_CASE("are_subspaces_independent examples") {
  using Bases = std::vector<std::vector<RatVector>>;
  Bases b{{ivec({1, 0})}, {ivec({0, 1})}};
  CHECK(are_subspaces_independent<Rational>(b));

  b = {{ivec({1})}, {ivec({1})}};
  CHECK_FALSE(are_subspaces_independent<Rational>(b));

  b = {{ivec({2, 2})}, {ivec({2, -2})}};
  CHECK(are_subspaces_independent<Rational>(b));

  b = {{}, {ivec({1, 1})}};
  CHECK(are_subspaces_independent<Rational>(b));

  b = {};
  CHECK(are_subspaces_independent<Rational>(b));
}

TEST_CASE("column_space_basis keeps the first independent vectors in order") {
  std::vector<RatVector> v{ivec({0, 0}), ivec({2, 2}), ivec({1, 1}), ivec({0, 1})};
  const auto basis = column_space_basis<Rational>(v, 2);
  REQUIRE(basis.size() == 2);
  CHECK(basis[0] == ivec({2, 2}));
  CHECK(basis[1] == ivec({0, 1}));
}

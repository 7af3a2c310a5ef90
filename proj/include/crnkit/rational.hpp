#pragma once

// Exact scalar and dense containers shared by every structural computation.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <optional>
#include <string>
#include <string_view>

namespace crnkit {

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator (GMP canonicalizes after every operation).
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using RatVector = Vector<Rational>;
using RatMatrix = Matrix<Rational>;

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& value);

/// Accepts "p", "-p", "p/q" and finite decimals such as "0.125"; returns
/// nullopt on anything else (including a zero denominator).
std::optional<Rational> parse_rational(std::string_view text);

/// Exact value of base^exponent when it is rational; nullopt otherwise.
/// Fractional exponents require a non-negative base whose numerator and
/// denominator are perfect powers of the exponent's denominator.
std::optional<Rational> exact_pow(const Rational& base, const Rational& exponent);

inline bool is_integer(const Rational& value) {
  return denominator(value) == 1;
}

inline double to_double(const Rational& value) {
  return value.convert_to<double>();
}

inline Eigen::VectorXd to_double(const RatVector& v) {
  Eigen::VectorXd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = to_double(v[i]);
  return out;
}

/// Lexicographic order on equal-length vectors; shorter vectors sort first.
bool lex_less(const RatVector& a, const RatVector& b);

/// Exact equality that tolerates differing sizes (returns false).
bool same_vector(const RatVector& a, const RatVector& b);

struct RatVectorLess {
  bool operator()(const RatVector& a, const RatVector& b) const { return lex_less(a, b); }
};

RatVector make_vector(std::initializer_list<Rational> values);

}  // namespace crnkit

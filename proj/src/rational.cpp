#include "crnkit/rational.hpp"

#include <cctype>

namespace crnkit {

std::string to_string(const Rational& value) {
  if (is_integer(value)) return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// Decimal digits only; a leading zero would otherwise select octal.
Integer decimal_integer(std::string_view digits) {
  const auto first = digits.find_first_not_of('0');
  if (first == std::string_view::npos) return Integer(0);
  return Integer(std::string(digits.substr(first)));
}

// Exact integer q-th root, if one exists.
std::optional<Integer> exact_root(const Integer& value, unsigned long q) {
  if (value < 0) return std::nullopt;
  Integer root;
  if (mpz_root(root.backend().data(), value.backend().data(), q) == 0) return std::nullopt;
  return root;
}

Rational integer_pow(const Rational& base, const Integer& exponent) {
  // Exponents in this code base are small; a plain loop on the GMP value
  // avoids an unsigned long truncation surprise.
  Integer e = exponent < 0 ? Integer(-exponent) : exponent;
  Rational result(1);
  Rational b = base;
  while (e > 0) {
    if ((e & 1) != 0) result *= b;
    b *= b;
    e >>= 1;
  }
  return exponent < 0 ? Rational(1) / result : result;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  Rational value;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return std::nullopt;
    const Integer d = decimal_integer(den);
    if (d == 0) return std::nullopt;
    value = Rational(decimal_integer(num), d);
  } else if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto whole = text.substr(0, dot);
    const auto frac = text.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac)) return std::nullopt;
    Integer scale(1);
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    value = Rational(decimal_integer(std::string(whole) + std::string(frac)), scale);
  } else {
    if (!all_digits(text)) return std::nullopt;
    value = Rational(decimal_integer(text));
  }
  return negative ? Rational(-value) : value;
}

std::optional<Rational> exact_pow(const Rational& base, const Rational& exponent) {
  if (exponent == 0) return Rational(1);
  if (is_integer(exponent)) {
    if (base == 0 && exponent < 0) return std::nullopt;
    return integer_pow(base, numerator(exponent));
  }
  if (base < 0) return std::nullopt;
  if (base == 0) return exponent > 0 ? std::optional<Rational>(Rational(0)) : std::nullopt;
  const Integer q = denominator(exponent);
  if (q > 1u << 20) return std::nullopt;
  const auto q_ul = q.convert_to<unsigned long>();
  auto num_root = exact_root(numerator(base), q_ul);
  auto den_root = exact_root(denominator(base), q_ul);
  if (!num_root || !den_root) return std::nullopt;
  return integer_pow(Rational(*num_root, *den_root), numerator(exponent));
}

bool lex_less(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return false;
}

bool same_vector(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

RatVector make_vector(std::initializer_list<Rational> values) {
  RatVector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (const auto& x : values) v[i++] = x;
  return v;
}

}  // namespace crnkit

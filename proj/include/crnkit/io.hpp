#pragma once

// Text formats.
//
// .crn, one reaction per line:
//   species: A B C                 (optional; fixes species order)
//   2 A + B -> C ; k = 3/2
//   C <-> 0 ; k = 1, 1/4           (forward, backward)
//   # comment
// A complex is `0` or terms `[coef] Species` joined by `+`; coefficients
// and rates are `p`, `p/q` or finite decimals. A line holding a lone
// complex declares a vertex, which must take part in some reaction.
//
// .ode, one equation per variable:
//   vars: x y                      (optional; else equation order)
//   dx/dt = 3 - 3*x^3 + 1/2*x*y^(1/2)
// `*` is required between factors; fractional exponents are parenthesized.

#include "crnkit/realization.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace crnkit {

struct NetworkDocument {
  std::string source_text;
  MassActionSystem parsed;
  /// Source line of each edge of `parsed`, aligned with parsed.edges().
  std::vector<int> edge_lines;
};

struct OdeDocument {
  std::string source_text;
  OdeSystem parsed;
};

NetworkDocument parse_network_document(std::string_view text);
MassActionSystem parse_network(std::string_view text);

/// Canonical form: species header, then one line per edge in edge order.
std::string format_network(const MassActionSystem& sys);

OdeDocument parse_ode_document(std::string_view text);
OdeSystem parse_ode(std::string_view text);

/// Canonical form: vars header, then one equation per variable with terms
/// in increasing monomial order.
std::string format_ode(const OdeSystem& ode);

/// Parses a single complex over the given species, e.g. "2 X + 2 Y".
Complex parse_complex(std::string_view text, const std::vector<std::string>& species);

/// Renames-free reordering of species to `names`. Throws ValidationError
/// when the species sets differ.
MassActionSystem align_species(const MassActionSystem& sys, const std::vector<std::string>& names);

std::string read_file(const std::string& path);

}  // namespace crnkit

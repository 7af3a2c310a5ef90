#include "crnkit/io.hpp"

#include "crnkit/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace crnkit {

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

// Scanner over one source line. `offset` is the column of text[0] minus one,
// so error columns refer to the full line.
class Cursor {
 public:
  Cursor(std::string_view text, int line, std::size_t offset = 0) : text_(text), line_(line), offset_(offset) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  // Next character without skipping whitespace.
  char peek_raw() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  bool consume(std::string_view token) {
    skip_ws();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view token) {
    if (!consume(token)) fail("expected '" + std::string(token) + "'");
  }

  std::optional<std::string> identifier() {
    skip_ws();
    if (pos_ >= text_.size() || !is_ident_start(text_[pos_])) return std::nullopt;
    const auto start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  // Unsigned literal: digits, optionally followed by "/digits" or ".digits".
  std::optional<Rational> number() {
    skip_ws();
    const auto start = pos_;
    while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
    if (pos_ == start) return std::nullopt;
    if (pos_ + 1 < text_.size() && (text_[pos_] == '/' || text_[pos_] == '.') && is_digit(text_[pos_ + 1])) {
      ++pos_;
      while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
    }
    auto value = parse_rational(text_.substr(start, pos_ - start));
    if (!value) {
      pos_ = start;
      fail("invalid number");
    }
    return value;
  }

  int column() const { return static_cast<int>(offset_ + pos_ + 1); }
  int line() const { return line_; }

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, line_, column()); }

 private:
  std::string_view text_;
  int line_;
  std::size_t offset_;
  std::size_t pos_ = 0;
};

struct Line {
  int number;
  std::string_view text;  // comment stripped
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++number;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back({number, line});
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

struct Term {
  std::string species;
  Rational coefficient;
  int column;
};

struct RawComplex {
  std::vector<Term> terms;
  int column;
};

RawComplex parse_raw_complex(Cursor& cur) {
  RawComplex out{{}, 0};
  cur.skip_ws();
  out.column = cur.column();
  if (cur.at_end()) cur.fail("expected a complex");
  // A lone "0" is the zero complex.
  {
    Cursor probe = cur;
    if (auto n = probe.number(); n && *n == 0 && probe.at_end()) {
      cur = probe;
      return out;
    }
  }
  while (true) {
    cur.skip_ws();
    const int column = cur.column();
    Rational coefficient(1);
    if (auto n = cur.number()) coefficient = *n;
    auto name = cur.identifier();
    if (!name) cur.fail("expected a species name");
    out.terms.push_back({*name, coefficient, column});
    if (cur.at_end()) break;
    if (!cur.consume("+")) cur.fail("expected '+' or end of complex");
  }
  return out;
}

std::vector<std::string> parse_name_list(Cursor& cur) {
  std::vector<std::string> names;
  while (!cur.at_end()) {
    const int column = cur.column();
    auto name = cur.identifier();
    if (!name) cur.fail("expected a name");
    if (std::find(names.begin(), names.end(), *name) != names.end())
      throw ParseError("'" + *name + "' declared twice", cur.line(), column);
    names.push_back(*name);
    cur.consume(",");
  }
  return names;
}

// Fixed or inferred species order shared by both formats.
class NameTable {
 public:
  void declare(std::vector<std::string> names, int line) {
    if (declared_) throw ParseError("duplicate header", line, 0);
    declared_ = true;
    names_ = std::move(names);
  }
  bool declared() const { return declared_; }

  void note(const std::string& name) {
    if (!declared_ && std::find(names_.begin(), names_.end(), name) == names_.end()) names_.push_back(name);
  }

  std::optional<std::size_t> index(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
  }

  const std::vector<std::string>& names() const { return names_; }

 private:
  bool declared_ = false;
  std::vector<std::string> names_;
};

Complex resolve(const RawComplex& raw, const NameTable& table, int line) {
  RatVector v = RatVector::Zero(static_cast<Eigen::Index>(table.names().size()));
  for (const auto& t : raw.terms) {
    auto idx = table.index(t.species);
    if (!idx) throw ParseError("undeclared species '" + t.species + "'", line, t.column);
    v[static_cast<Eigen::Index>(*idx)] += t.coefficient;
  }
  return Complex(std::move(v));
}

std::optional<std::string_view> header_body(std::string_view line, std::string_view keyword, std::size_t& offset) {
  std::size_t i = 0;
  while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
  if (line.substr(i, keyword.size()) != keyword) return std::nullopt;
  std::size_t j = i + keyword.size();
  while (j < line.size() && std::isspace(static_cast<unsigned char>(line[j]))) ++j;
  if (j >= line.size() || line[j] != ':') return std::nullopt;
  offset = j + 1;
  return line.substr(j + 1);
}

struct RawReaction {
  RawComplex source;
  RawComplex target;
  Rational rate;
  int line;
};

}  // namespace

NetworkDocument parse_network_document(std::string_view text) {
  NameTable table;
  std::vector<RawReaction> reactions;
  std::vector<std::pair<RawComplex, int>> declared_vertices;

  for (const auto& [number, line] : split_lines(text)) {
    if (blank(line)) continue;
    std::size_t offset = 0;
    if (auto body = header_body(line, "species", offset)) {
      Cursor cur(*body, number, offset);
      table.declare(parse_name_list(cur), number);
      continue;
    }

    const auto semicolon = line.find(';');
    const std::string_view graph_part = line.substr(0, semicolon);
    std::size_t arrow = graph_part.find("<->");
    const bool reversible = arrow != std::string_view::npos;
    if (!reversible) arrow = graph_part.find("->");

    if (arrow == std::string_view::npos) {
      if (semicolon != std::string_view::npos)
        throw ParseError("expected '->' or '<->'", number, static_cast<int>(semicolon) + 1);
      Cursor cur(graph_part, number);
      auto vertex = parse_raw_complex(cur);
      declared_vertices.emplace_back(std::move(vertex), number);
      continue;
    }
    if (semicolon == std::string_view::npos)
      throw ParseError("missing rate clause '; k = ...'", number, static_cast<int>(line.size()) + 1);

    const std::size_t arrow_len = reversible ? 3 : 2;
    Cursor left(graph_part.substr(0, arrow), number);
    Cursor right(graph_part.substr(arrow + arrow_len), number, arrow + arrow_len);
    RawComplex source = parse_raw_complex(left);
    RawComplex target = parse_raw_complex(right);

    Cursor rate_cur(line.substr(semicolon + 1), number, semicolon + 1);
    rate_cur.expect("k");
    rate_cur.expect("=");
    std::vector<Rational> rates;
    do {
      const bool negative = rate_cur.consume("-");
      const int column = rate_cur.column();
      auto r = rate_cur.number();
      if (!r) rate_cur.fail("expected a rate constant");
      if (negative || *r <= 0)
        throw ValidationError("line " + std::to_string(number) + ", column " + std::to_string(column) +
                              ": non-positive rate " + (negative ? "-" : "") + to_string(*r));
      rates.push_back(*r);
    } while (rate_cur.consume(","));
    if (!rate_cur.at_end()) rate_cur.fail("unexpected text after rate clause");
    if (rates.size() != (reversible ? 2u : 1u))
      throw ParseError(reversible ? "'<->' needs two rates: forward, backward" : "'->' needs exactly one rate",
                       number, static_cast<int>(semicolon) + 1);

    for (const auto* c : {&source, &target})
      for (const auto& t : c->terms) table.note(t.species);
    reactions.push_back({source, target, rates[0], number});
    if (reversible) reactions.push_back({target, source, rates[1], number});
  }
  for (const auto& [vertex, number] : declared_vertices)
    for (const auto& t : vertex.terms) table.note(t.species);

  const auto& species = table.names();
  std::vector<RatedReaction> rated;
  std::map<std::pair<Complex, Complex>, int> seen;
  for (const auto& r : reactions) {
    Complex s = resolve(r.source, table, r.line);
    Complex t = resolve(r.target, table, r.line);
    if (s == t)
      throw ValidationError("line " + std::to_string(r.line) + ": self-loop at " + format_complex(s, species));
    auto [it, inserted] = seen.emplace(std::make_pair(s, t), r.line);
    if (!inserted)
      throw ValidationError("line " + std::to_string(r.line) + ": duplicate reaction " + format_complex(s, species) +
                            " -> " + format_complex(t, species) + " (first given on line " +
                            std::to_string(it->second) + ")");
    rated.push_back({std::move(s), std::move(t), r.rate});
  }
  for (const auto& [vertex, number] : declared_vertices) {
    Complex c = resolve(vertex, table, number);
    const bool used = std::any_of(rated.begin(), rated.end(),
                                  [&](const RatedReaction& r) { return r.source == c || r.target == c; });
    if (!used)
      throw ValidationError("line " + std::to_string(number) + ": isolated vertex " + format_complex(c, species) +
                            " takes part in no reaction");
  }

  auto sys = MassActionSystem::from_reactions(species, rated);
  std::vector<int> edge_lines;
  for (const auto& e : sys.edges())
    edge_lines.push_back(seen.at({sys.vertices()[e.source], sys.vertices()[e.target]}));
  return NetworkDocument{std::string(text), std::move(sys), std::move(edge_lines)};
}

MassActionSystem parse_network(std::string_view text) { return parse_network_document(text).parsed; }

std::string format_network(const MassActionSystem& sys) {
  std::string out = "species:";
  for (const auto& s : sys.species()) out += " " + s;
  out += "\n";
  const auto& species = sys.species();
  for (std::size_t k = 0; k < sys.edges().size(); ++k) {
    const auto& e = sys.edges()[k];
    out += format_complex(sys.vertices()[e.source], species) + " -> " +
           format_complex(sys.vertices()[e.target], species) + " ; k = " + to_string(sys.rates()[k]) + "\n";
  }
  return out;
}

Complex parse_complex(std::string_view text, const std::vector<std::string>& species) {
  Cursor cur(text, 1);
  auto raw = parse_raw_complex(cur);
  NameTable table;
  table.declare(species, 1);
  return resolve(raw, table, 1);
}

namespace {

struct RawMonomialTerm {
  Rational coefficient;
  std::vector<std::tuple<std::string, Rational, int>> powers;  // name, exponent, column
};

struct RawEquation {
  std::string variable;
  int line;
  int column;
  std::vector<RawMonomialTerm> terms;
};

Rational parse_exponent(Cursor& cur) {
  if (cur.peek() == '-') cur.fail("negative exponent");
  if (cur.consume("(")) {
    if (cur.peek() == '-') cur.fail("negative exponent");
    auto e = cur.number();
    if (!e) cur.fail("expected an exponent");
    cur.expect(")");
    return *e;
  }
  Cursor probe = cur;
  auto e = cur.number();
  if (!e) cur.fail("expected an exponent");
  if (!is_integer(*e)) probe.fail("fractional exponents must be parenthesized, e.g. x^(1/2)");
  return *e;
}

RawMonomialTerm parse_product(Cursor& cur) {
  RawMonomialTerm term{Rational(1), {}};
  while (true) {
    cur.skip_ws();
    if (auto n = cur.number()) {
      term.coefficient *= *n;
      if (is_ident_start(cur.peek_raw()) || is_ident_start(cur.peek()))
        cur.fail("expected '*' between coefficient and variable");
    } else {
      const int column = cur.column();
      auto name = cur.identifier();
      if (!name) cur.fail("expected a number or variable");
      Rational exponent(1);
      if (cur.consume("^")) exponent = parse_exponent(cur);
      term.powers.emplace_back(*name, exponent, column);
    }
    if (!cur.consume("*")) break;
  }
  return term;
}

std::vector<RawMonomialTerm> parse_polynomial(Cursor& cur) {
  std::vector<RawMonomialTerm> terms;
  bool first = true;
  while (true) {
    bool negative = false;
    if (cur.consume("-")) {
      negative = true;
    } else if (cur.consume("+")) {
    } else if (!first) {
      cur.fail("expected '+' or '-'");
    }
    auto term = parse_product(cur);
    if (negative) term.coefficient = -term.coefficient;
    terms.push_back(std::move(term));
    first = false;
    if (cur.at_end()) break;
  }
  return terms;
}

}  // namespace

OdeDocument parse_ode_document(std::string_view text) {
  NameTable table;
  int header_line = 0;
  std::vector<RawEquation> equations;

  for (const auto& [number, line] : split_lines(text)) {
    if (blank(line)) continue;
    std::size_t offset = 0;
    if (auto body = header_body(line, "vars", offset)) {
      Cursor cur(*body, number, offset);
      table.declare(parse_name_list(cur), number);
      header_line = number;
      continue;
    }
    Cursor cur(line, number);
    cur.skip_ws();
    const int column = cur.column();
    auto lhs = cur.identifier();
    if (!lhs || lhs->size() < 2 || lhs->front() != 'd') cur.fail("expected 'd<var>/dt ='");
    cur.expect("/");
    auto dt = cur.identifier();
    if (!dt || *dt != "dt") cur.fail("expected 'dt'");
    cur.expect("=");
    RawEquation eq{lhs->substr(1), number, column, parse_polynomial(cur)};
    for (const auto& other : equations)
      if (other.variable == eq.variable)
        throw ParseError("second equation for '" + eq.variable + "' (first on line " + std::to_string(other.line) +
                             ")",
                         number, column);
    table.note(eq.variable);
    equations.push_back(std::move(eq));
  }

  const auto& vars = table.names();
  const auto n = static_cast<Eigen::Index>(vars.size());
  PolynomialMap poly(n);
  std::vector<bool> has_equation(vars.size(), false);
  for (const auto& eq : equations) {
    auto target = table.index(eq.variable);
    if (!target) throw ParseError("undeclared variable '" + eq.variable + "'", eq.line, eq.column);
    has_equation[*target] = true;
    for (const auto& term : eq.terms) {
      RatVector exponents = RatVector::Zero(n);
      for (const auto& [name, exponent, column] : term.powers) {
        auto idx = table.index(name);
        if (!idx) throw ParseError("undeclared variable '" + name + "'", eq.line, column);
        exponents[static_cast<Eigen::Index>(*idx)] += exponent;
      }
      RatVector coefficient = RatVector::Zero(n);
      coefficient[static_cast<Eigen::Index>(*target)] = term.coefficient;
      poly.add_term(Complex(std::move(exponents)), coefficient);
    }
  }
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (!has_equation[i]) throw ParseError("no equation for variable '" + vars[i] + "'", header_line, 0);

  return OdeDocument{std::string(text), OdeSystem{vars, std::move(poly)}};
}

OdeSystem parse_ode(std::string_view text) { return parse_ode_document(text).parsed; }

namespace {

std::string format_monomial(const Complex& mono, const std::vector<std::string>& vars) {
  std::string out;
  for (Eigen::Index k = 0; k < mono.dim(); ++k) {
    const Rational& e = mono.exponents[k];
    if (e == 0) continue;
    if (!out.empty()) out += "*";
    out += vars[static_cast<std::size_t>(k)];
    if (e != 1) out += is_integer(e) ? "^" + to_string(e) : "^(" + to_string(e) + ")";
  }
  return out;
}

}  // namespace

std::string format_ode(const OdeSystem& ode) {
  std::string out = "vars:";
  for (const auto& v : ode.variable_names) out += " " + v;
  out += "\n";
  for (std::size_t i = 0; i < ode.variable_names.size(); ++i) {
    std::string rhs;
    for (const auto& [mono, coef] : ode.poly.terms()) {
      const Rational& c = coef[static_cast<Eigen::Index>(i)];
      if (c == 0) continue;
      const Rational magnitude = c < 0 ? Rational(-c) : c;
      if (rhs.empty())
        rhs += c < 0 ? "-" : "";
      else
        rhs += c < 0 ? " - " : " + ";
      const std::string m = format_monomial(mono, ode.variable_names);
      if (m.empty())
        rhs += to_string(magnitude);
      else if (magnitude == 1)
        rhs += m;
      else
        rhs += to_string(magnitude) + "*" + m;
    }
    out += "d" + ode.variable_names[i] + "/dt = " + (rhs.empty() ? "0" : rhs) + "\n";
  }
  return out;
}

MassActionSystem align_species(const MassActionSystem& sys, const std::vector<std::string>& names) {
  if (sys.species() == names) return sys;
  auto sorted_a = sys.species();
  auto sorted_b = names;
  std::sort(sorted_a.begin(), sorted_a.end());
  std::sort(sorted_b.begin(), sorted_b.end());
  if (sorted_a != sorted_b) {
    std::string a, b;
    for (const auto& s : sys.species()) a += " " + s;
    for (const auto& s : names) b += " " + s;
    throw ValidationError("species differ between inputs: {" + a + " } vs {" + b + " }");
  }
  std::vector<Eigen::Index> from(names.size());
  for (std::size_t i = 0; i < names.size(); ++i)
    from[i] = std::find(sys.species().begin(), sys.species().end(), names[i]) - sys.species().begin();
  auto permute = [&](const Complex& c) {
    RatVector v(static_cast<Eigen::Index>(names.size()));
    for (std::size_t i = 0; i < names.size(); ++i) v[static_cast<Eigen::Index>(i)] = c.exponents[from[i]];
    return Complex(std::move(v));
  };
  std::vector<RatedReaction> reactions;
  for (const auto& r : sys.reactions()) reactions.push_back({permute(r.source), permute(r.target), r.rate});
  return MassActionSystem::from_reactions(names, reactions);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace crnkit

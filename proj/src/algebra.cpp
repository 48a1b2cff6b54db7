#include "mss/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>

namespace mss {

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::vector<int> exponents) : exponents_(std::move(exponents)) {
  for (int e : exponents_) {
    if (e < 0) throw PresentationError("negative exponent");
  }
}

Monomial Monomial::variable(std::size_t variables, std::size_t index, int power) {
  std::vector<int> e(variables, 0);
  e.at(index) = power;
  return Monomial(std::move(e));
}

int Monomial::degree(std::span<const Generator> gens) const {
  int d = 0;
  for (std::size_t i = 0; i < exponents_.size(); ++i) d += exponents_[i] * gens[i].degree;
  return d;
}

bool Monomial::is_one() const {
  return std::all_of(exponents_.begin(), exponents_.end(), [](int e) { return e == 0; });
}

Monomial operator*(const Monomial& lhs, const Monomial& rhs) {
  if (lhs.variables() != rhs.variables()) throw PresentationError("monomial arity mismatch");
  std::vector<int> e(lhs.exponents_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += rhs.exponents_[i];
  return Monomial(std::move(e));
}

// -------------------------------------------------------------- Polynomial

Polynomial::Polynomial(Monomial m) { terms_.push_back(std::move(m)); }

Polynomial Polynomial::from_terms(std::vector<Monomial> terms) {
  std::sort(terms.begin(), terms.end(), std::greater<>());
  Polynomial p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back() == t) {
      p.terms_.pop_back();
    } else {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  std::vector<Monomial> merged;
  merged.reserve(terms_.size() + other.terms_.size());
  std::set_symmetric_difference(terms_.begin(), terms_.end(), other.terms_.begin(), other.terms_.end(),
                                std::back_inserter(merged), std::greater<>());
  terms_ = std::move(merged);
  return *this;
}

Polynomial operator*(const Polynomial& lhs, const Monomial& rhs) {
  Polynomial out;
  out.terms_.reserve(lhs.terms_.size());
  // Multiplying by a monomial preserves the lexicographic order of exponent vectors.
  for (const auto& t : lhs.terms_) out.terms_.push_back(t * rhs);
  return out;
}

Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs) {
  std::vector<Monomial> all;
  all.reserve(lhs.terms_.size() * rhs.terms_.size());
  for (const auto& a : lhs.terms_) {
    for (const auto& b : rhs.terms_) all.push_back(a * b);
  }
  return Polynomial::from_terms(std::move(all));
}

std::optional<int> Polynomial::homogeneous_degree(std::span<const Generator> gens) const {
  if (terms_.empty()) return std::nullopt;
  const int d = terms_.front().degree(gens);
  for (const auto& t : terms_) {
    if (t.degree(gens) != d) return std::nullopt;
  }
  return d;
}

// ------------------------------------------------------ GradedPresentation

GradedPresentation::GradedPresentation(std::vector<Generator> generators, std::vector<Polynomial> relations,
                                       std::optional<int> top_hint)
    : generators_(std::move(generators)), relations_(std::move(relations)), top_hint_(top_hint) {
  std::set<std::string> names;
  for (const auto& g : generators_) {
    if (g.degree < 1) throw PresentationError("generator '" + g.name + "' must have degree >= 1");
    if (!names.insert(g.name).second) throw PresentationError("duplicate generator '" + g.name + "'");
  }
  for (const auto& rel : relations_) {
    if (rel.is_zero()) throw PresentationError("zero relation");
    for (const auto& t : rel.terms()) {
      if (t.variables() != generators_.size()) throw PresentationError("relation uses undeclared variables");
    }
    if (!rel.homogeneous_degree(generators_)) throw PresentationError("relation is not homogeneous");
  }
  if (top_hint_ && *top_hint_ < 0) throw PresentationError("top degree must be non-negative");
}

int GradedPresentation::max_generator_degree() const {
  int m = 1;
  for (const auto& g : generators_) m = std::max(m, g.degree);
  return m;
}

std::optional<std::size_t> GradedPresentation::generator_index(std::string_view name) const {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (generators_[i].name == name) return i;
  }
  return std::nullopt;
}

int GradedPresentation::relation_degree(std::size_t i) const { return *relations_.at(i).homogeneous_degree(generators_); }

GradedPresentation GradedPresentation::permuted(std::span<const std::size_t> order) const {
  if (order.size() != generators_.size()) throw PresentationError("permutation has wrong length");
  std::vector<Generator> gens;
  for (auto i : order) gens.push_back(generators_.at(i));
  std::vector<Polynomial> rels;
  for (const auto& rel : relations_) {
    std::vector<Monomial> terms;
    for (const auto& t : rel.terms()) {
      std::vector<int> e(order.size());
      for (std::size_t j = 0; j < order.size(); ++j) e[j] = t.exponent(order[j]);
      terms.emplace_back(std::move(e));
    }
    rels.push_back(Polynomial::from_terms(std::move(terms)));
  }
  return GradedPresentation(std::move(gens), std::move(rels), top_hint_);
}

// ------------------------------------------------------------ enumeration

std::vector<Monomial> monomials_of_degree(std::span<const Generator> gens, int d) {
  std::vector<Monomial> out;
  if (d < 0) return out;
  std::vector<int> e(gens.size(), 0);
  // Highest exponent of the earliest generator first: descending lexicographic order.
  std::function<void(std::size_t, int)> fill = [&](std::size_t i, int remaining) {
    if (i == gens.size()) {
      if (remaining == 0) out.emplace_back(e);
      return;
    }
    for (int k = remaining / gens[i].degree; k >= 0; --k) {
      e[i] = k;
      fill(i + 1, remaining - k * gens[i].degree);
    }
    e[i] = 0;
  };
  fill(0, d);
  return out;
}

// ------------------------------------------------------------ QuotientRing

QuotientRing::DegreeData QuotientRing::compute_degree(const GradedPresentation& p, int d, Exec exec) {
  DegreeData out;
  out.basis.degree = d;
  const auto& gens = p.generators();
  const auto monomials = monomials_of_degree(gens, d);
  const std::size_t n = monomials.size();
  for (std::size_t i = 0; i < n; ++i) out.column.emplace(monomials[i], n - 1 - i);

  BitMatrix ideal(0, n);
  for (std::size_t j = 0; j < p.relations().size(); ++j) {
    const int rd = p.relation_degree(j);
    if (rd > d) continue;
    for (const auto& m : monomials_of_degree(gens, d - rd)) {
      BitVector row(n);
      const Polynomial multiple = p.relations()[j] * m;
      for (const auto& t : multiple.terms()) row.flip(out.column.at(t));
      if (row.any()) ideal.append_row(std::move(row));
    }
  }
  out.reduction = row_reduce(ideal, exec);

  std::vector<char> pivot(n, 0);
  for (auto c : out.reduction.pivot_columns) pivot[c] = 1;
  out.coordinate.assign(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t c = n - 1 - i;
    if (pivot[c]) continue;
    out.coordinate[c] = static_cast<std::ptrdiff_t>(out.basis.representatives.size());
    out.basis.representatives.push_back(monomials[i]);
  }
  out.basis.dimension = static_cast<int>(out.basis.representatives.size());
  return out;
}

QuotientRing::QuotientRing(GradedPresentation presentation, int max_degree, Exec exec)
    : presentation_(std::move(presentation)), max_degree_(max_degree) {
  if (max_degree < 0) throw std::invalid_argument("max_degree must be non-negative");
  degrees_.resize(static_cast<std::size_t>(max_degree) + 1);
  const bool parallel = exec == Exec::parallel || (exec == Exec::automatic && max_degree >= 8);
  if (parallel) {
    // Degrees are independent; reductions inside each degree stay serial.
#pragma omp parallel for schedule(dynamic)
    for (int d = 0; d <= max_degree; ++d) degrees_[d] = compute_degree(presentation_, d, Exec::serial);
  } else {
    for (int d = 0; d <= max_degree; ++d) degrees_[d] = compute_degree(presentation_, d, Exec::serial);
  }

  const int width = presentation_.max_generator_degree();
  int run = 0;
  for (int d = 0; d <= max_degree; ++d) {
    run = degrees_[d].basis.dimension == 0 ? run + 1 : 0;
    if (run == width) {
      vanishes_from_ = d - width + 1;
      break;
    }
  }
}

const QuotientRing::DegreeData* QuotientRing::data(int d) const {
  if (d >= 0 && d <= max_degree_) return &degrees_[d];
  if (known_zero(d)) return nullptr;
  throw WindowError("degree " + std::to_string(d) + " lies outside the computed window [0, " +
                    std::to_string(max_degree_) + "]");
}

const DegreeBasis& QuotientRing::basis(int d) const {
  if (const auto* dd = data(d)) return dd->basis;
  static const DegreeBasis kEmpty{};
  return kEmpty;
}

int QuotientRing::dimension(int d) const {
  const auto* dd = data(d);
  return dd ? dd->basis.dimension : 0;
}

std::vector<int> QuotientRing::poincare_table() const {
  std::vector<int> t;
  for (const auto& dd : degrees_) t.push_back(dd.basis.dimension);
  return t;
}

Element QuotientRing::zero(int d) const { return Element{d, BitVector(static_cast<std::size_t>(dimension(d)))}; }

Element QuotientRing::unit() const { return reduce(Polynomial(Monomial::one(presentation_.variables())), 0); }

Element QuotientRing::generator(std::size_t i) const {
  const auto& g = presentation_.generators().at(i);
  return reduce(Polynomial(Monomial::variable(presentation_.variables(), i)), g.degree);
}

Element QuotientRing::reduce(const Polynomial& f) const {
  if (f.is_zero()) throw PresentationError("the zero polynomial has no degree; pass it explicitly");
  const auto d = f.homogeneous_degree(presentation_.generators());
  if (!d) throw PresentationError("cannot reduce a non-homogeneous polynomial");
  return reduce(f, *d);
}

Element QuotientRing::reduce(const Polynomial& f, int d) const {
  const auto* dd = data(d);
  if (!dd) return zero(d);
  BitVector v(dd->column.size());
  for (const auto& t : f.terms()) {
    const auto it = dd->column.find(t);
    if (it == dd->column.end()) throw PresentationError("term of the wrong degree in reduce");
    v.flip(it->second);
  }
  v = dd->reduction.reduce(std::move(v));
  Element e{d, BitVector(static_cast<std::size_t>(dd->basis.dimension))};
  for (std::size_t c = 0; c < v.size(); ++c) {
    if (v.get(c)) e.coords.set(static_cast<std::size_t>(dd->coordinate[c]));
  }
  return e;
}

Polynomial QuotientRing::lift(const Element& e) const {
  const auto& reps = basis(e.degree).representatives;
  if (e.coords.size() != reps.size()) throw PresentationError("element does not match its degree basis");
  std::vector<Monomial> terms;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    if (e.coords.get(i)) terms.push_back(reps[i]);
  }
  return Polynomial::from_terms(std::move(terms));
}

Element QuotientRing::add(const Element& u, const Element& v) const {
  if (u.degree != v.degree) throw PresentationError("adding elements of different degrees");
  return Element{u.degree, u.coords ^ v.coords};
}

Element QuotientRing::multiply(const Element& u, const Element& v) const {
  const int d = u.degree + v.degree;
  if (u.is_zero() || v.is_zero()) return zero(d);
  return reduce(lift(u) * lift(v), d);
}

Element QuotientRing::power(const Element& u, int n) const {
  if (n < 0) throw std::invalid_argument("negative power");
  Element acc = unit();
  for (int i = 0; i < n; ++i) acc = multiply(acc, u);
  return acc;
}

// ------------------------------------------------------- free functions

DegreeBasis degree_basis(const GradedPresentation& p, int d) {
  if (d < 0) throw std::invalid_argument("degree must be non-negative");
  return QuotientRing(p, d, Exec::serial).basis(d);
}

std::vector<int> poincare_table(const GradedPresentation& p, int d_max, Exec exec) {
  return QuotientRing(p, d_max, exec).poincare_table();
}

BitVector reduce(const GradedPresentation& p, const Polynomial& f) {
  const auto d = f.homogeneous_degree(p.generators());
  if (!d) throw PresentationError("cannot reduce a non-homogeneous polynomial");
  return QuotientRing(p, *d, Exec::serial).reduce(f, *d).coords;
}

NilpotencyResult nilpotency_order(const QuotientRing& ring, const Element& u, int bound) {
  if (u.degree <= 0) throw std::invalid_argument("nilpotency_order needs an element of positive degree");
  if (bound < 1) throw std::invalid_argument("nilpotency bound must be >= 1");
  Element acc = u;
  for (int n = 1; n <= bound; ++n) {
    if (acc.is_zero()) return {NilpotencyResult::Kind::exact, n - 1};
    if (n == bound) break;
    acc = ring.multiply(acc, u);
  }
  return {NilpotencyResult::Kind::bound_reached, bound};
}

// ------------------------------------------------------------- text format

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool valid_name(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  return std::all_of(name.begin() + 1, name.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)) || c == '_'; });
}

int parse_int(std::string_view s, const char* what) {
  s = trim(s);
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    throw PresentationError(std::string("expected a non-negative integer for ") + what + ", got '" + std::string(s) + "'");
  }
  return std::stoi(std::string(s));
}

Monomial parse_monomial(std::string_view text, std::span<const Generator> gens) {
  std::vector<int> e(gens.size(), 0);
  text = trim(text);
  if (text == "1") return Monomial(std::move(e));
  std::size_t i = 0;
  bool any = false;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == '*') {
      ++i;
      continue;
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) {
      throw PresentationError("unexpected character '" + std::string(1, c) + "' in monomial '" + std::string(text) + "'");
    }
    std::size_t j = i + 1;
    while (j < text.size() && (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
    const std::string_view name = text.substr(i, j - i);
    std::size_t index = gens.size();
    for (std::size_t g = 0; g < gens.size(); ++g) {
      if (gens[g].name == name) index = g;
    }
    if (index == gens.size()) throw PresentationError("unknown generator '" + std::string(name) + "'");
    int power = 1;
    if (j < text.size() && text[j] == '^') {
      std::size_t k = j + 1;
      while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
      power = parse_int(text.substr(j + 1, k - j - 1), "an exponent");
      j = k;
    }
    e[index] += power;
    any = true;
    i = j;
  }
  if (!any) throw PresentationError("empty monomial");
  return Monomial(std::move(e));
}

}  // namespace

Polynomial parse_polynomial(std::string_view text, std::span<const Generator> gens) {
  text = trim(text);
  if (text == "0") return {};
  std::vector<Monomial> terms;
  std::size_t start = 0;
  while (true) {
    const std::size_t plus = text.find('+', start);
    terms.push_back(parse_monomial(text.substr(start, plus - start), gens));
    if (plus == std::string_view::npos) break;
    start = plus + 1;
  }
  return Polynomial::from_terms(std::move(terms));
}

std::string format_monomial(const Monomial& m, std::span<const Generator> gens) {
  if (m.is_one()) return "1";
  std::string s;
  for (std::size_t i = 0; i < m.variables(); ++i) {
    if (m.exponent(i) == 0) continue;
    s += gens[i].name;
    if (m.exponent(i) > 1) s += "^" + std::to_string(m.exponent(i));
  }
  return s;
}

std::string format_polynomial(const Polynomial& f, std::span<const Generator> gens) {
  if (f.is_zero()) return "0";
  std::string s;
  for (const auto& t : f.terms()) {
    if (!s.empty()) s += " + ";
    s += format_monomial(t, gens);
  }
  return s;
}

GradedPresentation parse_presentation(std::string_view text) {
  std::vector<Generator> gens;
  std::vector<std::string> rel_lines;
  std::optional<int> top;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string_view body = trim(line);
    if (body.empty()) continue;
    const auto space = body.find_first_of(" \t");
    const std::string_view keyword = body.substr(0, space);
    const std::string_view rest = space == std::string_view::npos ? std::string_view{} : trim(body.substr(space));
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (keyword == "gen") {
      const auto sp = rest.find_first_of(" \t");
      if (sp == std::string_view::npos) throw PresentationError(where + "expected 'gen <name> <degree>'");
      const std::string name(trim(rest.substr(0, sp)));
      if (!valid_name(name)) throw PresentationError(where + "invalid generator name '" + name + "'");
      gens.push_back({name, parse_int(rest.substr(sp), "a generator degree")});
    } else if (keyword == "rel") {
      rel_lines.emplace_back(rest);
    } else if (keyword == "top") {
      top = parse_int(rest, "the top degree");
    } else {
      throw PresentationError(where + "unknown keyword '" + std::string(keyword) + "'");
    }
  }
  std::vector<Polynomial> rels;
  for (const auto& r : rel_lines) rels.push_back(parse_polynomial(r, gens));
  return GradedPresentation(std::move(gens), std::move(rels), top);
}

std::string format_presentation(const GradedPresentation& p) {
  std::string s;
  for (const auto& g : p.generators()) s += "gen " + g.name + " " + std::to_string(g.degree) + "\n";
  for (const auto& r : p.relations()) s += "rel " + format_polynomial(r, p.generators()) + "\n";
  if (p.top_hint()) s += "top " + std::to_string(*p.top_hint()) + "\n";
  return s;
}

}  // namespace mss

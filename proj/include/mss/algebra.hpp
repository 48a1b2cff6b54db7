#pragma once

// Finitely presented graded-commutative algebras over F2.
//
// Every ring here is commutative in characteristic 2, so a presentation is a
// polynomial ring on graded generators modulo homogeneous relations. Each graded
// piece of the quotient is computed independently: the monomials of degree d
// span the polynomial ring in that degree, and the products (monomial x
// relation) landing in degree d span the ideal there. Row reduction of the
// latter gives the quotient dimension and a set of monomial coset
// representatives. No Groebner engine is involved.
//
// Normal forms use the columns in reverse listing order, so the pivot of an
// ideal element is its last monomial in listing order. For the Milnor rings this
// makes the representatives the familiar a^i b^j with i <= s, j <= r - 1.

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mss/exec.hpp"
#include "mss/f2.hpp"

namespace mss {

struct Generator {
  std::string name;
  int degree = 1;

  friend bool operator==(const Generator&, const Generator&) = default;
};

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<int> exponents);
  static Monomial one(std::size_t variables) { return Monomial(std::vector<int>(variables, 0)); }
  static Monomial variable(std::size_t variables, std::size_t index, int power = 1);

  std::size_t variables() const { return exponents_.size(); }
  int exponent(std::size_t i) const { return exponents_[i]; }
  const std::vector<int>& exponents() const { return exponents_; }
  int degree(std::span<const Generator> gens) const;
  bool is_one() const;

  friend Monomial operator*(const Monomial& lhs, const Monomial& rhs);
  friend auto operator<=>(const Monomial&, const Monomial&) = default;

 private:
  std::vector<int> exponents_;
};

// A sum of distinct monomials with coefficient 1; addition is symmetric difference.
// Terms are kept in descending lexicographic order of exponent vectors, which is
// the listing order within a single degree.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(Monomial m);
  static Polynomial from_terms(std::vector<Monomial> terms);

  const std::vector<Monomial>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Polynomial& operator+=(const Polynomial& other);
  friend Polynomial operator+(Polynomial lhs, const Polynomial& rhs) { return lhs += rhs; }
  friend Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs);
  friend Polynomial operator*(const Polynomial& lhs, const Monomial& rhs);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  // Degree of every term, or nullopt when the terms disagree. Zero has no degree.
  std::optional<int> homogeneous_degree(std::span<const Generator> gens) const;

 private:
  std::vector<Monomial> terms_;
};

class PresentationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Requested degree lies outside the computed window and is not known to vanish.
class WindowError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class GradedPresentation {
 public:
  GradedPresentation() = default;
  GradedPresentation(std::vector<Generator> generators, std::vector<Polynomial> relations,
                     std::optional<int> top_hint = std::nullopt);

  const std::vector<Generator>& generators() const { return generators_; }
  const std::vector<Polynomial>& relations() const { return relations_; }
  std::optional<int> top_hint() const { return top_hint_; }
  std::size_t variables() const { return generators_.size(); }
  int max_generator_degree() const;
  std::optional<std::size_t> generator_index(std::string_view name) const;
  int relation_degree(std::size_t i) const;

  // Same ring with the generators listed in a different order.
  GradedPresentation permuted(std::span<const std::size_t> order) const;

  friend bool operator==(const GradedPresentation&, const GradedPresentation&) = default;

 private:
  std::vector<Generator> generators_;
  std::vector<Polynomial> relations_;
  std::optional<int> top_hint_;
};

// All monomials of total degree d, in graded-lexicographic listing order.
std::vector<Monomial> monomials_of_degree(std::span<const Generator> gens, int d);

struct DegreeBasis {
  int degree = 0;
  int dimension = 0;
  std::vector<Monomial> representatives;
};

// A homogeneous coset, written in the DegreeBasis of its degree.
struct Element {
  int degree = 0;
  BitVector coords;

  bool is_zero() const { return coords.none(); }
  friend bool operator==(const Element&, const Element&) = default;
};

// The quotient computed degree by degree on [0, max_degree]; immutable afterwards.
class QuotientRing {
 public:
  QuotientRing(GradedPresentation presentation, int max_degree, Exec exec = Exec::automatic);

  const GradedPresentation& presentation() const { return presentation_; }
  int max_degree() const { return max_degree_; }

  // First degree of a run of max_generator_degree consecutive zero degrees inside
  // the window. Every degree from there on vanishes: each monomial of higher
  // degree has a divisor whose degree falls inside the run.
  std::optional<int> vanishes_from() const { return vanishes_from_; }
  bool known_zero(int d) const { return d < 0 || (vanishes_from_ && d >= *vanishes_from_); }

  const DegreeBasis& basis(int d) const;
  int dimension(int d) const;
  std::vector<int> poincare_table() const;

  Element zero(int d) const;
  Element unit() const;
  Element generator(std::size_t i) const;
  Element reduce(const Polynomial& f) const;
  // Reduces f, which must be homogeneous of degree d or zero.
  Element reduce(const Polynomial& f, int d) const;
  Polynomial lift(const Element& e) const;
  Element add(const Element& u, const Element& v) const;
  Element multiply(const Element& u, const Element& v) const;
  Element power(const Element& u, int n) const;

 private:
  struct DegreeData {
    DegreeBasis basis;
    std::map<Monomial, std::size_t> column;  // monomial -> reduction column
    RowReduction reduction;
    std::vector<std::ptrdiff_t> coordinate;  // reduction column -> representative index or -1
  };

  const DegreeData* data(int d) const;
  static DegreeData compute_degree(const GradedPresentation& p, int d, Exec exec);

  GradedPresentation presentation_;
  int max_degree_ = 0;
  std::vector<DegreeData> degrees_;
  std::optional<int> vanishes_from_;
};

DegreeBasis degree_basis(const GradedPresentation& p, int d);
std::vector<int> poincare_table(const GradedPresentation& p, int d_max, Exec exec = Exec::automatic);
// Coordinates of f modulo the ideal, in degree_basis(p, deg f).
BitVector reduce(const GradedPresentation& p, const Polynomial& f);

struct NilpotencyResult {
  enum class Kind { exact, bound_reached };
  Kind kind = Kind::exact;
  // exact: largest n with u^n != 0 (0 for u = 0). bound_reached: the bound.
  int order = 0;

  bool exact() const { return kind == Kind::exact; }
};

NilpotencyResult nilpotency_order(const QuotientRing& ring, const Element& u, int bound);

// Presentation text format:
//   gen <name> <degree>
//   rel <monomial> + <monomial> + ...
//   top <degree>            (optional)
// Names are a letter followed by digits or underscores, so juxtaposed factors
// like a^2b parse unambiguously. "1" is the unit monomial; '#' starts a comment.
GradedPresentation parse_presentation(std::string_view text);
std::string format_presentation(const GradedPresentation& p);
Polynomial parse_polynomial(std::string_view text, std::span<const Generator> gens);
std::string format_polynomial(const Polynomial& f, std::span<const Generator> gens);
std::string format_monomial(const Monomial& m, std::span<const Generator> gens);

}  // namespace mss

#pragma once

// Degree-preserving ring endomorphisms of a presented algebra, determined by
// their values on generators.

#include <optional>
#include <string>
#include <vector>

#include "mss/algebra.hpp"
#include "mss/exec.hpp"

namespace mss {

struct GeneratorAssignment {
  std::vector<Element> images;  // one per generator, in generator order

  friend bool operator==(const GeneratorAssignment&, const GeneratorAssignment&) = default;
};

struct AssignmentVerdict {
  bool pass = true;
  std::optional<std::size_t> relation;  // first relation with a nonzero image
  Element image;
  Polynomial residue;
};

// Ring covering every relation degree; assignments are checked inside it.
QuotientRing assignment_ring(const GradedPresentation& p, int extra_degrees = 0);

GeneratorAssignment identity_assignment(const QuotientRing& ring);

// phi(f) for a polynomial in the generators, computed by substituting images.
Element substitute(const QuotientRing& ring, const GeneratorAssignment& phi, const Polynomial& f);
// phi applied to a coset element via its representative expansion.
Element apply(const QuotientRing& ring, const GeneratorAssignment& phi, const Element& e);
// (lhs o rhs)(g) = lhs(rhs(g)).
GeneratorAssignment compose(const QuotientRing& ring, const GeneratorAssignment& lhs, const GeneratorAssignment& rhs);

AssignmentVerdict check_generator_assignment(const QuotientRing& ring, const GeneratorAssignment& phi);
AssignmentVerdict check_generator_assignment(const GradedPresentation& p, const GeneratorAssignment& phi);

// Bijective on the span of the generator-degree component.
bool is_invertible(const QuotientRing& ring, const GeneratorAssignment& phi);

// Well-defined, invertible assignments with phi o phi = id. The presentation
// must have exactly two generators of equal degree.
std::vector<GeneratorAssignment> involutive_automorphisms(const QuotientRing& ring, Exec exec = Exec::automatic);
std::vector<GeneratorAssignment> involutive_automorphisms(const GradedPresentation& p, Exec exec = Exec::automatic);

// "a -> a, b -> a + b"
std::string format_assignment(const QuotientRing& ring, const GeneratorAssignment& phi);

}  // namespace mss

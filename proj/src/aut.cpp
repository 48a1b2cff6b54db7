#include "mss/aut.hpp"

#include <algorithm>

#include "mss/errors.hpp"

namespace mss {

QuotientRing assignment_ring(const GradedPresentation& p, int extra_degrees) {
  int top = p.max_generator_degree();
  for (std::size_t j = 0; j < p.relations().size(); ++j) top = std::max(top, p.relation_degree(j));
  return QuotientRing(p, top + extra_degrees, Exec::serial);
}

GeneratorAssignment identity_assignment(const QuotientRing& ring) {
  GeneratorAssignment id;
  for (std::size_t i = 0; i < ring.presentation().variables(); ++i) id.images.push_back(ring.generator(i));
  return id;
}

Element substitute(const QuotientRing& ring, const GeneratorAssignment& phi, const Polynomial& f) {
  const auto& gens = ring.presentation().generators();
  if (phi.images.size() != gens.size()) {
    throw DomainError("assignment_size", "assignment must give one image per generator");
  }
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (phi.images[i].degree != gens[i].degree) {
      throw DomainError("degree_mismatch", "image of '" + gens[i].name + "' has the wrong degree");
    }
  }
  if (f.is_zero()) return ring.zero(0);
  const int d = *f.homogeneous_degree(gens);
  Element sum = ring.zero(d);
  for (const auto& m : f.terms()) {
    Element term = ring.unit();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (m.exponent(i) > 0) term = ring.multiply(term, ring.power(phi.images[i], m.exponent(i)));
    }
    sum = ring.add(sum, term);
  }
  return sum;
}

Element apply(const QuotientRing& ring, const GeneratorAssignment& phi, const Element& e) {
  if (e.is_zero()) return e;
  return substitute(ring, phi, ring.lift(e));
}

GeneratorAssignment compose(const QuotientRing& ring, const GeneratorAssignment& lhs, const GeneratorAssignment& rhs) {
  GeneratorAssignment out;
  for (const auto& img : rhs.images) out.images.push_back(apply(ring, lhs, img));
  return out;
}

AssignmentVerdict check_generator_assignment(const QuotientRing& ring, const GeneratorAssignment& phi) {
  AssignmentVerdict v;
  const auto& rels = ring.presentation().relations();
  for (std::size_t j = 0; j < rels.size(); ++j) {
    const Element img = substitute(ring, phi, rels[j]);
    if (!img.is_zero()) {
      v.pass = false;
      v.relation = j;
      v.image = img;
      v.residue = ring.lift(img);
      return v;
    }
  }
  return v;
}

AssignmentVerdict check_generator_assignment(const GradedPresentation& p, const GeneratorAssignment& phi) {
  return check_generator_assignment(assignment_ring(p), phi);
}

bool is_invertible(const QuotientRing& ring, const GeneratorAssignment& phi) {
  // Images of generators of each degree must span what the generators span.
  const auto& gens = ring.presentation().generators();
  std::vector<int> degrees;
  for (const auto& g : gens) degrees.push_back(g.degree);
  std::sort(degrees.begin(), degrees.end());
  degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
  for (int d : degrees) {
    const auto n = static_cast<std::size_t>(ring.dimension(d));
    BitMatrix source(0, n), image(0, n);
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (gens[i].degree != d) continue;
      source.append_row(ring.generator(i).coords);
      image.append_row(phi.images[i].coords);
    }
    if (rank(image) != rank(source)) return false;
  }
  return true;
}

std::vector<GeneratorAssignment> involutive_automorphisms(const QuotientRing& ring, Exec exec) {
  const auto& gens = ring.presentation().generators();
  if (gens.size() != 2 || gens[0].degree != gens[1].degree) {
    throw DomainError("not_two_generators", "automorphism enumeration needs two generators of equal degree");
  }
  const int d = gens[0].degree;
  const auto dim = static_cast<std::size_t>(ring.dimension(d));
  if (dim >= 20) throw DomainError("component_too_large", "generator-degree component is too large to enumerate");
  std::vector<Element> candidates;
  for (unsigned long code = 1; code < (1ul << dim); ++code) {
    Element e = ring.zero(d);
    for (std::size_t i = 0; i < dim; ++i) {
      if ((code >> i) & 1ul) e.coords.set(i);
    }
    candidates.push_back(std::move(e));
  }

  const GeneratorAssignment id = identity_assignment(ring);
  const auto n = static_cast<long>(candidates.size());
  std::vector<char> keep(static_cast<std::size_t>(n * n), 0);
  auto test = [&](long idx) {
    GeneratorAssignment phi{{candidates[static_cast<std::size_t>(idx / n)], candidates[static_cast<std::size_t>(idx % n)]}};
    keep[static_cast<std::size_t>(idx)] = check_generator_assignment(ring, phi).pass && is_invertible(ring, phi) &&
                                          compose(ring, phi, phi) == id;
  };
  const bool parallel = exec == Exec::parallel || (exec == Exec::automatic && n * n >= 64);
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long idx = 0; idx < n * n; ++idx) test(idx);
  } else {
    for (long idx = 0; idx < n * n; ++idx) test(idx);
  }

  std::vector<GeneratorAssignment> out;
  for (long idx = 0; idx < n * n; ++idx) {
    if (keep[static_cast<std::size_t>(idx)]) {
      out.push_back({{candidates[static_cast<std::size_t>(idx / n)], candidates[static_cast<std::size_t>(idx % n)]}});
    }
  }
  return out;
}

std::vector<GeneratorAssignment> involutive_automorphisms(const GradedPresentation& p, Exec exec) {
  return involutive_automorphisms(assignment_ring(p), exec);
}

std::string format_assignment(const QuotientRing& ring, const GeneratorAssignment& phi) {
  const auto& gens = ring.presentation().generators();
  std::string out;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i > 0) out += ", ";
    out += gens[i].name + " -> " + format_polynomial(ring.lift(phi.images[i]), gens);
  }
  return out;
}

}  // namespace mss

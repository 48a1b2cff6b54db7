#pragma once

// Cohomology rings of the real and complex Milnor manifolds RH_{r,s}, CH_{r,s}.

#include <map>
#include <optional>
#include <string>

#include "mss/algebra.hpp"
#include "mss/errors.hpp"

namespace mss {

enum class Flavor { real, complex };

std::string to_string(Flavor f);
Flavor parse_flavor(const std::string& s);

struct MilnorParams {
  Flavor flavor = Flavor::real;
  int r = 1;
  int s = 1;

  // Throws DomainError unless 1 <= s <= r.
  void validate() const;
  // Degree of the fiber generators: 1 (a, b) or 2 (g, h).
  int generator_degree() const { return flavor == Flavor::real ? 1 : 2; }
  // Manifold dimension r + s - 1, doubled in the complex case.
  int dimension() const { return generator_degree() * (r + s - 1); }
};

// Z2[a,b]/(a^{s+1}, sum_{i=0}^{s} a^i b^{r-i}), or the same shape on g, h in degree 2.
GradedPresentation milnor_presentation(const MilnorParams& p);

// The complex presentation names its generators g, h; the spectral and
// automorphism code refers to them as a, b.
std::map<std::string, std::string> generator_aliases(Flavor flavor);

// #{(i, j) : i + j = q, 0 <= i <= s, 0 <= j <= r - 1}, on halved degrees when complex.
int dimension_formula(const MilnorParams& p, int q);

int euler_char_complex(int r, int s);

struct ObstructionVerdict {
  bool obstructed = false;
  long euler_characteristic = 0;
  // Smallest prime p not dividing chi: chi = p * chi(X/Z_p) fails for it.
  std::optional<int> witness_prime;
};

// Floyd's formula applied to a free S^1 action restricted to every Z_p.
ObstructionVerdict floyd_obstruction_from_euler(long chi);
ObstructionVerdict floyd_s1_obstruction(int r, int s);

}  // namespace mss

#include "mss/milnor.hpp"

#include <cstdlib>

namespace mss {

std::string to_string(Flavor f) { return f == Flavor::real ? "real" : "complex"; }

Flavor parse_flavor(const std::string& s) {
  if (s == "real") return Flavor::real;
  if (s == "complex") return Flavor::complex;
  throw DomainError("unknown_flavor", "flavor must be real or complex, got '" + s + "'");
}

void MilnorParams::validate() const {
  if (s < 1) throw DomainError("s_below_one", "s must be at least 1 (s=" + std::to_string(s) + ")");
  if (s > r) {
    throw DomainError("s_exceeds_r", "s exceeds r (r=" + std::to_string(r) + ", s=" + std::to_string(s) + ")");
  }
}

GradedPresentation milnor_presentation(const MilnorParams& p) {
  p.validate();
  const int d = p.generator_degree();
  const bool real = p.flavor == Flavor::real;
  std::vector<Generator> gens{{real ? "a" : "g", d}, {real ? "b" : "h", d}};
  std::vector<Polynomial> rels;
  rels.emplace_back(Monomial({p.s + 1, 0}));
  std::vector<Monomial> terms;
  for (int i = 0; i <= p.s; ++i) terms.emplace_back(std::vector<int>{i, p.r - i});
  rels.push_back(Polynomial::from_terms(std::move(terms)));
  return GradedPresentation(std::move(gens), std::move(rels), p.dimension());
}

std::map<std::string, std::string> generator_aliases(Flavor flavor) {
  if (flavor == Flavor::real) return {{"a", "a"}, {"b", "b"}};
  return {{"g", "a"}, {"h", "b"}};
}

int dimension_formula(const MilnorParams& p, int q) {
  p.validate();
  if (q < 0) return 0;
  if (p.flavor == Flavor::complex) {
    if (q % 2 != 0) return 0;
    q /= 2;
  }
  int count = 0;
  for (int i = 0; i <= p.s; ++i) {
    const int j = q - i;
    if (j >= 0 && j <= p.r - 1) ++count;
  }
  return count;
}

int euler_char_complex(int r, int s) {
  MilnorParams{Flavor::complex, r, s}.validate();
  return r * (s + 1);
}

ObstructionVerdict floyd_obstruction_from_euler(long chi) {
  ObstructionVerdict v;
  v.euler_characteristic = chi;
  if (chi == 0) return v;
  for (int p = 2;; ++p) {
    bool prime = true;
    for (int q = 2; q * q <= p; ++q) {
      if (p % q == 0) {
        prime = false;
        break;
      }
    }
    if (prime && std::labs(chi) % p != 0) {
      v.obstructed = true;
      v.witness_prime = p;
      return v;
    }
  }
}

ObstructionVerdict floyd_s1_obstruction(int r, int s) { return floyd_obstruction_from_euler(euler_char_complex(r, s)); }

}  // namespace mss

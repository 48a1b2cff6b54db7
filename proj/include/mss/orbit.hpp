#pragma once

// Orbit-space rings for free actions on Milnor manifolds with trivial induced
// action, and the index bounds read off from them.
//
// The presentations carry undetermined bits (alpha_i, beta_i, gamma_i for Z2,
// alpha, beta for S^1). They are resolved by trying every bit vector against
// the total dimensions of the admissible spectral sequence run.

#include <optional>
#include <string>
#include <vector>

#include "mss/algebra.hpp"
#include "mss/exec.hpp"
#include "mss/milnor.hpp"
#include "mss/spectral.hpp"

namespace mss {

struct OrbitParams {
  std::vector<int> alphas;
  std::vector<int> betas;
  std::optional<std::vector<int>> gammas;  // gamma_1..gamma_3; absent for S^1

  // alphas | betas | gammas as a 0/1 string. For S^1 this is "<alpha><beta>".
  std::string bitstring() const;
  friend bool operator==(const OrbitParams&, const OrbitParams&) = default;
};

struct OrbitShape {
  Group group = Group::z2;
  Flavor flavor = Flavor::real;
  int r = 1;
  int s = 1;

  // Throws DomainError for s > r, even r or s, and S^1 with the complex flavor.
  void validate() const;
  int parameter_bits() const;
  int manifold_dimension() const { return MilnorParams{flavor, r, s}.dimension(); }
  // Degrees above this vanish: dim X for Z2, dim X - 1 for S^1.
  int top_degree() const;
};

OrbitParams parse_orbit_params(const OrbitShape& shape, const std::string& bits);
// Parameter vector number `index` in lexicographic order of bitstrings.
OrbitParams orbit_params_from_index(const OrbitShape& shape, unsigned long index);

GradedPresentation orbit_presentation(const OrbitShape& shape, const OrbitParams& params);

struct OrbitVerdict {
  OrbitParams params;
  bool matches = false;
  bool finite = false;
  std::vector<int> computed_dims;  // degrees 0 .. top + max generator degree
  std::vector<int> expected_dims;
};

struct OrbitSearch {
  OrbitShape shape;
  bool survivor_exists = false;
  std::string survivor_label;
  std::vector<int> tot_dims;  // of the survivor, degrees 0 .. dim X
  std::vector<OrbitVerdict> verdicts;

  std::vector<OrbitVerdict> matching() const;
};

// Expected dimensions come from the unique admissible spectral sequence run.
// An empty `only` searches every parameter vector.
OrbitSearch verify_orbit_dims(const OrbitShape& shape, const std::optional<OrbitParams>& only = std::nullopt,
                              Exec exec = Exec::automatic);
OrbitSearch verify_orbit_dims_serial(const OrbitShape& shape, const std::optional<OrbitParams>& only = std::nullopt);

// Verdict for one presentation against given expected total dimensions.
OrbitVerdict check_orbit_dims(const GradedPresentation& orbit, const OrbitParams& params,
                              const std::vector<int>& tot_dims);

struct CoindexResult {
  bool exact = true;      // false when the power never vanished inside the window
  int coindex = 0;        // max n with w^n != 0
  int genus_lower = 1;    // co-index + 1
  int no_equivariant_map_above = 1;  // no Z2-map S^k -> X for k >= this
};

// sw_class names the degree-one class pulled back from B_G.
CoindexResult coindex_and_genus(const GradedPresentation& orbit, const std::string& sw_class);

struct EulerVerdict {
  int r = 0;
  int s = 0;
  int h0 = 0, h1 = 0, h2 = 0;  // of X/G
  int h1_total = 0;            // dim H^1(X)
  bool euler_zero = false;
  bool s1_variant = false;     // s = 1: x = 0 makes H^2(X/G) one-dimensional
  std::string conclusion;
  std::string matching_params;  // the orbit presentation the dimensions came from
};

// Rank bookkeeping in 0 -> H^1(X/G) -> H^1(X) -> H^0(X/G) -> H^2(X/G) for S^1 on RH_{r,s}.
EulerVerdict gysin_euler_report(int r, int s);

struct ConditionalClause {
  std::string rule;
  std::string hypothesis;
  std::string conclusion;
};

struct ObstructionReport {
  OrbitShape query;
  std::vector<std::string> cases_examined;
  std::vector<std::string> admissible_cases;
  std::vector<std::string> rejected_reasons;  // aligned with cases_examined; "" when admissible
  std::vector<int> tot_dims;
  std::vector<std::string> matching_params;
  std::vector<int> orbit_dims;
  std::optional<int> coindex;
  bool coindex_consistent = true;  // same value on every matching presentation
  std::optional<int> genus_lower;
  std::optional<int> sphere_map_bound;
  std::string sw_class;            // generator carrying the Stiefel-Whitney class
  std::optional<int> volovikov;    // meaningful only when volovikov_finite
  bool volovikov_finite = false;
  std::optional<EulerVerdict> euler;
  std::optional<ObstructionVerdict> floyd;
  std::vector<ConditionalClause> clauses;
  bool s1_boundary_active = false;
};

ObstructionReport borsuk_ulam_report(const OrbitShape& shape);

}  // namespace mss

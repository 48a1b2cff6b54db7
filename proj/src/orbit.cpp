#include "mss/orbit.hpp"

#include <algorithm>

namespace mss {

std::string OrbitParams::bitstring() const {
  std::string out;
  for (int a : alphas) out += a ? '1' : '0';
  for (int b : betas) out += b ? '1' : '0';
  if (gammas) {
    for (int g : *gammas) out += g ? '1' : '0';
  }
  return out;
}

void OrbitShape::validate() const {
  MilnorParams{flavor, r, s}.validate();
  if (group == Group::s1 && flavor == Flavor::complex) {
    throw DomainError("no_orbit_presentation", "S^1 has no free action on a complex Milnor manifold");
  }
  if (r % 2 == 0) throw DomainError("r_even", "r must be odd (r=" + std::to_string(r) + ")");
  if (s % 2 == 0) throw DomainError("s_even", "s must be odd (s=" + std::to_string(s) + ")");
}

int OrbitShape::parameter_bits() const {
  if (group == Group::s1) return 2;
  return 2 * ((s - 1) / 2 + 1) + 3;
}

int OrbitShape::top_degree() const { return group == Group::z2 ? manifold_dimension() : manifold_dimension() - 1; }

OrbitParams parse_orbit_params(const OrbitShape& shape, const std::string& bits) {
  shape.validate();
  const auto expected = static_cast<std::size_t>(shape.parameter_bits());
  if (bits.size() != expected || bits.find_first_not_of("01") != std::string::npos) {
    throw DomainError("bad_params", "parameter string must have " + std::to_string(expected) + " bits of 0/1, got '" +
                                        bits + "'");
  }
  OrbitParams p;
  auto bit = [&](std::size_t i) { return bits[i] == '1' ? 1 : 0; };
  if (shape.group == Group::s1) {
    p.alphas = {bit(0)};
    p.betas = {bit(1)};
    return p;
  }
  const std::size_t n = static_cast<std::size_t>((shape.s - 1) / 2 + 1);
  for (std::size_t i = 0; i < n; ++i) p.alphas.push_back(bit(i));
  for (std::size_t i = 0; i < n; ++i) p.betas.push_back(bit(n + i));
  p.gammas = std::vector<int>{bit(2 * n), bit(2 * n + 1), bit(2 * n + 2)};
  return p;
}

OrbitParams orbit_params_from_index(const OrbitShape& shape, unsigned long index) {
  const int n = shape.parameter_bits();
  std::string bits(static_cast<std::size_t>(n), '0');
  for (int j = 0; j < n; ++j) {
    if ((index >> (n - 1 - j)) & 1ul) bits[static_cast<std::size_t>(j)] = '1';
  }
  return parse_orbit_params(shape, bits);
}

namespace {

Monomial mono(std::initializer_list<int> e) { return Monomial(std::vector<int>(e)); }

}  // namespace

GradedPresentation orbit_presentation(const OrbitShape& shape, const OrbitParams& params) {
  shape.validate();
  if (params.bitstring().size() != static_cast<std::size_t>(shape.parameter_bits()) ||
      params.gammas.has_value() != (shape.group == Group::z2)) {
    throw DomainError("bad_params", "parameter vector does not fit the orbit presentation");
  }
  const int h = (shape.s - 1) / 2;
  const int k = (shape.r - 1) / 2;

  if (shape.group == Group::s1) {
    // x, y, w
    std::vector<Generator> gens{{"x", 2}, {"y", 2}, {"w", 1}};
    std::vector<Polynomial> rels;
    rels.emplace_back(mono({h + 1, 0, 0}));
    std::vector<Monomial> terms;
    for (int i = 0; i <= h; ++i) terms.push_back(mono({i, k - i, 1}));
    rels.push_back(Polynomial::from_terms(std::move(terms)));
    terms = {mono({0, 0, 2})};
    if (params.alphas[0]) terms.push_back(mono({1, 0, 0}));
    if (params.betas[0]) terms.push_back(mono({0, 1, 0}));
    rels.push_back(Polynomial::from_terms(std::move(terms)));
    return GradedPresentation(std::move(gens), std::move(rels), shape.top_degree());
  }

  // x, y, z, w; c is z (real) or z^2 (complex).
  const bool real = shape.flavor == Flavor::real;
  const int c = real ? 1 : 2;
  std::vector<Generator> gens{{"x", real ? 2 : 4}, {"y", real ? 2 : 4}, {"z", 1}, {"w", real ? 1 : 2}};
  const auto& g = *params.gammas;
  std::vector<Polynomial> rels;
  rels.emplace_back(mono({0, 0, c + 1, 0}));

  std::vector<Monomial> terms{mono({0, 0, 0, 2})};
  if (g[0]) terms.push_back(mono({0, 0, c, 1}));
  if (g[1]) terms.push_back(mono({1, 0, 0, 0}));
  if (g[2]) terms.push_back(mono({0, 1, 0, 0}));
  rels.push_back(Polynomial::from_terms(std::move(terms)));

  terms = {mono({h + 1, 0, 0, 0})};
  for (int i = 0; i <= h; ++i) {
    if (params.alphas[static_cast<std::size_t>(i)]) terms.push_back(mono({h - i, i, c, 1}));
  }
  rels.push_back(Polynomial::from_terms(std::move(terms)));

  terms.clear();
  for (int i = 0; i <= h; ++i) {
    terms.push_back(mono({i, k - i, 0, 1}));
    if (params.betas[static_cast<std::size_t>(i)]) terms.push_back(mono({i, k - i, c, 0}));
  }
  rels.push_back(Polynomial::from_terms(std::move(terms)));
  return GradedPresentation(std::move(gens), std::move(rels), shape.top_degree());
}

std::vector<OrbitVerdict> OrbitSearch::matching() const {
  std::vector<OrbitVerdict> out;
  std::copy_if(verdicts.begin(), verdicts.end(), std::back_inserter(out), [](const auto& v) { return v.matches; });
  return out;
}

OrbitVerdict check_orbit_dims(const GradedPresentation& orbit, const OrbitParams& params,
                              const std::vector<int>& tot_dims) {
  const int top = orbit.top_hint().value_or(static_cast<int>(tot_dims.size()) - 1);
  const int window = top + orbit.max_generator_degree();
  const QuotientRing ring(orbit, window, Exec::serial);
  OrbitVerdict v;
  v.params = params;
  v.computed_dims = ring.poincare_table();
  v.finite = ring.vanishes_from().has_value();
  v.expected_dims = tot_dims;
  v.expected_dims.resize(v.computed_dims.size(), 0);
  v.matches = v.finite && v.computed_dims == v.expected_dims;
  return v;
}

namespace {

OrbitSearch prepare_search(const OrbitShape& shape) {
  shape.validate();
  OrbitSearch search;
  search.shape = shape;
  const auto survivors =
      enumerate_admissible_cases(BaseRing::of(shape.group), MilnorParams{shape.flavor, shape.r, shape.s});
  if (!survivors.empty()) {
    search.survivor_exists = true;
    search.survivor_label = survivors.front().spec.label;
    search.tot_dims = survivors.front().result.tot_dims;
  }
  return search;
}

OrbitSearch run_search(const OrbitShape& shape, const std::optional<OrbitParams>& only, bool parallel) {
  OrbitSearch search = prepare_search(shape);
  if (!search.survivor_exists) return search;
  if (only) {
    search.verdicts.push_back(check_orbit_dims(orbit_presentation(shape, *only), *only, search.tot_dims));
    return search;
  }
  const long count = 1l << shape.parameter_bits();
  std::vector<OrbitParams> params;
  params.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) params.push_back(orbit_params_from_index(shape, static_cast<unsigned long>(i)));
  std::vector<GradedPresentation> presentations;
  presentations.reserve(params.size());
  for (const auto& p : params) presentations.push_back(orbit_presentation(shape, p));

  search.verdicts.resize(params.size());
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) search.verdicts[i] = check_orbit_dims(presentations[i], params[i], search.tot_dims);
  } else {
    for (long i = 0; i < count; ++i) search.verdicts[i] = check_orbit_dims(presentations[i], params[i], search.tot_dims);
  }
  return search;
}

}  // namespace

OrbitSearch verify_orbit_dims(const OrbitShape& shape, const std::optional<OrbitParams>& only, Exec exec) {
  const bool parallel = exec == Exec::parallel || (exec == Exec::automatic && shape.parameter_bits() >= 4);
  return run_search(shape, only, parallel);
}

OrbitSearch verify_orbit_dims_serial(const OrbitShape& shape, const std::optional<OrbitParams>& only) {
  return run_search(shape, only, false);
}

CoindexResult coindex_and_genus(const GradedPresentation& orbit, const std::string& sw_class) {
  const auto index = orbit.generator_index(sw_class);
  if (!index) throw DomainError("sw_class_absent", "presentation has no generator named '" + sw_class + "'");
  if (orbit.generators()[*index].degree != 1) {
    throw DomainError("sw_class_degree", "generator '" + sw_class + "' must have degree 1");
  }
  const int window = orbit.top_hint().value_or(32) + orbit.max_generator_degree();
  const QuotientRing ring(orbit, window, Exec::serial);
  const Element u = ring.generator(*index);
  CoindexResult out;
  if (!u.is_zero()) {
    const auto n = nilpotency_order(ring, u, window);
    out.exact = n.exact();
    out.coindex = n.order;
  }
  out.genus_lower = out.coindex + 1;
  out.no_equivariant_map_above = out.coindex + 1;
  return out;
}

EulerVerdict gysin_euler_report(int r, int s) {
  const OrbitShape shape{Group::s1, Flavor::real, r, s};
  const auto search = verify_orbit_dims(shape);
  if (!search.survivor_exists) {
    throw DomainError("no_survivor", "no admissible differential for S^1 on RH_{" + std::to_string(r) + "," +
                                         std::to_string(s) + "}");
  }
  const auto matches = search.matching();
  if (matches.empty()) throw DomainError("no_matching_params", "no orbit presentation matches the spectral sequence");
  const auto& dims = matches.front().computed_dims;
  EulerVerdict v;
  v.r = r;
  v.s = s;
  v.matching_params = matches.front().params.bitstring();
  auto at = [&](std::size_t i) { return i < dims.size() ? dims[i] : 0; };
  v.h0 = at(0);
  v.h1 = at(1);
  v.h2 = at(2);
  v.h1_total = QuotientRing(milnor_presentation({Flavor::real, r, s}), 1, Exec::serial).dimension(1);
  v.s1_variant = s == 1;
  // H^1(X) -> H^0(X/G) is onto exactly when its image has dimension h0 = 1;
  // then cup with e kills the generator of H^0(X/G), so e = 0.
  v.euler_zero = v.h0 == 1 && v.h1_total - v.h1 == v.h0;
  v.conclusion = v.euler_zero ? "Euler class zero" : "Euler class not determined by rank bookkeeping";
  return v;
}

ObstructionReport borsuk_ulam_report(const OrbitShape& shape) {
  const MilnorParams mp{shape.flavor, shape.r, shape.s};
  mp.validate();
  const BaseRing base = BaseRing::of(shape.group);
  ObstructionReport rep;
  rep.query = shape;

  const auto cases = enumerate_cases(base, mp);
  const PageSequenceResult* survivor = nullptr;
  for (const auto& c : cases) {
    rep.cases_examined.push_back(c.spec.label);
    if (c.result.admissible) {
      rep.admissible_cases.push_back(c.spec.label);
      rep.rejected_reasons.emplace_back();
      if (survivor == nullptr) survivor = &c.result;
    } else {
      rep.rejected_reasons.push_back(c.result.failure_reason ? to_string(*c.result.failure_reason) : "");
    }
  }

  if (shape.group == Group::s1 && shape.flavor == Flavor::complex) {
    rep.floyd = floyd_s1_obstruction(shape.r, shape.s);
  }
  if (survivor == nullptr) return rep;

  rep.tot_dims = survivor->tot_dims;
  rep.volovikov = survivor->volovikov;
  rep.volovikov_finite = survivor->volovikov.has_value();
  rep.s1_boundary_active = survivor->s1_boundary_active;
  if (shape.r % 2 == 0 || shape.s % 2 == 0 || (shape.group == Group::s1 && shape.flavor == Flavor::complex)) {
    return rep;
  }

  const auto search = verify_orbit_dims(shape);
  const auto matches = search.matching();
  for (const auto& m : matches) rep.matching_params.push_back(m.params.bitstring());
  if (!matches.empty()) rep.orbit_dims = matches.front().computed_dims;

  if (shape.group == Group::z2 && !matches.empty()) {
    rep.sw_class = "z";
    for (const auto& m : matches) {
      const auto ci = coindex_and_genus(orbit_presentation(shape, m.params), "z");
      if (!rep.coindex) {
        rep.coindex = ci.coindex;
        rep.genus_lower = ci.genus_lower;
        rep.sphere_map_bound = ci.no_equivariant_map_above;
      } else if (*rep.coindex != ci.coindex) {
        rep.coindex_consistent = false;
      }
    }
  }

  if (shape.group == Group::z2 && rep.volovikov) {
    const int m = *rep.volovikov - 1;
    for (int k = 1; k < m; ++k) {
      if (base.dim(k + 1) == 0) continue;
      rep.clauses.push_back({"volovikov_index",
                             "Y is a path-connected compact Hausdorff space with a free Z2-action and H^" +
                                 std::to_string(k + 1) + "(Y/G; Z2) = 0",
                             "there is no Z2-equivariant map X -> Y"});
    }
  }
  if (rep.genus_lower && *rep.genus_lower > 2) {
    rep.clauses.push_back({"coincidence", "f: X -> R^2 is continuous", "the coincidence set A(f,2) is non-empty"});
  }
  if (shape.group == Group::s1 && !matches.empty()) rep.euler = gysin_euler_report(shape.r, shape.s);
  return rep;
}

}  // namespace mss

#include "mss/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include "mss/aut.hpp"
#include "mss/errors.hpp"
#include "mss/milnor.hpp"
#include "mss/orbit.hpp"
#include "mss/spectral.hpp"

namespace mss {

using json = nlohmann::json;

namespace {

constexpr int kMaxDegreeLimit = 512;

struct Query {
  std::string command;
  std::string group = "z2";
  std::string flavor = "real";
  int r = 0;
  int s = 0;
  std::optional<int> max_degree;
  std::string case_name = "auto";
  std::optional<std::string> params;
  bool search = false;
  bool naive = false;
  std::optional<std::string> presentation;
};

json query_json(const Query& q) {
  json j;
  j["command"] = q.command;
  j["flavor"] = q.flavor;
  j["r"] = q.r;
  j["s"] = q.s;
  if (q.command != "cohomology" && q.command != "aut") j["group"] = q.group;
  if (q.max_degree) j["max_degree"] = *q.max_degree;
  if (q.command == "spectral") {
    j["case"] = q.case_name;
    j["window_mode"] = q.naive ? "naive" : "periodic";
  }
  if (q.command == "orbit") {
    if (q.params) j["params"] = *q.params;
    j["search"] = q.search || !q.params;
  }
  if (q.presentation) j["presentation"] = *q.presentation;
  return j;
}

GradedPresentation load_presentation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("file_not_found", "cannot read presentation file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_presentation(buf.str());
  } catch (const PresentationError& e) {
    throw DomainError("bad_presentation", e.what());
  }
}

json optional_int(const std::optional<int>& v) { return v ? json(*v) : json(nullptr); }

json index_json(const std::optional<int>& v) { return v ? json(*v) : json("infinity"); }

std::vector<std::string> format_all(const std::vector<Monomial>& ms, const std::vector<Generator>& gens) {
  std::vector<std::string> out;
  for (const auto& m : ms) out.push_back(format_monomial(m, gens));
  return out;
}

// ------------------------------------------------------------ commands

json cohomology(const Query& q) {
  const MilnorParams mp{parse_flavor(q.flavor), q.r, q.s};
  const GradedPresentation p = milnor_presentation(mp);
  const int top = mp.dimension();
  const int max_degree = q.max_degree.value_or(top);
  if (max_degree < 0) throw DomainError("negative_degree", "max degree must be non-negative");
  if (max_degree > kMaxDegreeLimit) {
    throw DomainError("max_degree_too_large", "max degree exceeds " + std::to_string(kMaxDegreeLimit));
  }
  const QuotientRing ring(p, max_degree);
  json res;
  std::vector<int> betti = ring.poincare_table();
  std::vector<int> closed;
  json reps = json::array();
  long total = 0, euler = 0;
  for (int d = 0; d <= max_degree; ++d) {
    closed.push_back(dimension_formula(mp, d));
    reps.push_back(format_all(ring.basis(d).representatives, p.generators()));
    total += betti[d];
    euler += d % 2 == 0 ? betti[d] : -betti[d];
  }
  res["betti"] = betti;
  res["closed_form"] = closed;
  res["closed_form_agrees"] = betti == closed;
  res["representatives"] = reps;
  res["dimension"] = top;
  res["total_dimension"] = total;
  res["euler_characteristic"] = euler;
  if (max_degree >= top) {
    const std::vector<int> head(betti.begin(), betti.begin() + top + 1);
    res["palindromic"] = std::equal(head.begin(), head.end(), head.rbegin());
  }
  json gens = json::array();
  for (const auto& g : p.generators()) gens.push_back({{"name", g.name}, {"degree", g.degree}});
  res["generators"] = gens;
  json rels = json::array();
  for (const auto& f : p.relations()) rels.push_back(format_polynomial(f, p.generators()));
  res["relations"] = rels;
  if (mp.flavor == Flavor::complex) {
    const auto v = floyd_s1_obstruction(q.r, q.s);
    res["floyd_s1"] = {{"obstructed", v.obstructed},
                       {"euler_characteristic", v.euler_characteristic},
                       {"witness_prime", optional_int(v.witness_prime)}};
    json aliases;
    for (const auto& [k, v2] : generator_aliases(mp.flavor)) aliases[k] = v2;
    res["aliases"] = aliases;
  }
  return res;
}

json case_json(const DifferentialSpec& spec, const PageSequenceResult& res, const GradedPresentation& fiber,
               const BaseRing& base) {
  json c;
  c["label"] = spec.label;
  c["page"] = spec.page;
  json images;
  for (std::size_t i = 0; i < fiber.variables(); ++i) {
    images[fiber.generators()[i].name] = spec.transgressive[i] ? base.class_name(spec.page) + " (x) 1" : "0";
  }
  c["images"] = images;
  c["admissible"] = res.admissible;
  c["failure_reason"] = res.failure_reason ? json(to_string(*res.failure_reason)) : json(nullptr);
  if (!res.derivation.pass) {
    const auto j = *res.derivation.relation;
    c["witness"] = {{"relation", format_polynomial(fiber.relations()[j], fiber.generators())},
                    {"base_class", base.class_name(res.derivation.target_base_degree)},
                    {"residue", format_polynomial(res.derivation.residue, fiber.generators())}};
  }
  if (res.failure_reason == FailureReason::vanishing_violated) c["violation_degree"] = optional_int(res.violation_degree);
  if (res.undetermined_at) {
    c["undetermined"] = {{"page", optional_int(res.undetermined_page)},
                         {"k", res.undetermined_at->first},
                         {"l", res.undetermined_at->second}};
  }
  if (!res.tot_dims.empty()) c["tot_dims"] = res.tot_dims;
  c["volovikov"] = index_json(res.volovikov);
  if (res.differential && !spec.trivial()) {
    json rows = json::array();
    for (const auto& row : rank_table(*res.differential, 0, res.final_page.l_max())) {
      rows.push_back({{"l", row.l}, {"source_dim", row.source_dim}, {"kernel", row.kernel}, {"image", row.image}});
    }
    c["rank_table"] = rows;
    c["d_squared_zero"] = differential_squares_vanish(*res.differential);
  }
  if (base.group == Group::s1 && res.admissible) c["s1_boundary_active"] = res.s1_boundary_active;
  return c;
}

json spectral(const Query& q) {
  const MilnorParams mp{parse_flavor(q.flavor), q.r, q.s};
  const GradedPresentation fiber = milnor_presentation(mp);
  const BaseRing base = BaseRing::of(parse_group(q.group));
  RunOptions opts;
  opts.mode = q.naive ? WindowMode::naive : WindowMode::periodic;
  json res;
  json cases = json::array();
  json admissible = json::array();
  if (q.case_name == "auto") {
    for (const auto& c : enumerate_cases(base, mp, opts)) {
      cases.push_back(case_json(c.spec, c.result, fiber, base));
      if (c.result.admissible) admissible.push_back(c.spec.label);
    }
  } else {
    const DifferentialSpec spec = named_case(fiber, q.case_name);
    const auto r = run_borel_ss(base, fiber, spec, mp.dimension(), opts);
    cases.push_back(case_json(spec, r, fiber, base));
    if (r.admissible) admissible.push_back(spec.label);
  }
  res["cases"] = cases;
  res["admissible_cases"] = admissible;
  res["dimension"] = mp.dimension();
  return res;
}

json verdict_json(const OrbitVerdict& v) {
  return {{"params", v.params.bitstring()},
          {"matches", v.matches},
          {"finite", v.finite},
          {"computed_dims", v.computed_dims},
          {"expected_dims", v.expected_dims}};
}

json orbit(const Query& q) {
  const OrbitShape shape{parse_group(q.group), parse_flavor(q.flavor), q.r, q.s};
  json res;
  if (q.presentation) {
    const GradedPresentation custom = load_presentation(*q.presentation);
    shape.validate();
    const auto survivors = enumerate_admissible_cases(BaseRing::of(shape.group), {shape.flavor, shape.r, shape.s});
    res["survivor_exists"] = !survivors.empty();
    if (!survivors.empty()) {
      res["tot_dims"] = survivors.front().result.tot_dims;
      auto v = check_orbit_dims(custom, OrbitParams{}, survivors.front().result.tot_dims);
      json vj = verdict_json(v);
      vj["params"] = "custom";
      res["verdicts"] = json::array({vj});
      res["matching"] = v.matches ? json::array({"custom"}) : json::array();
    }
    return res;
  }
  std::optional<OrbitParams> only;
  if (q.params && !q.search) only = parse_orbit_params(shape, *q.params);
  const OrbitSearch search = verify_orbit_dims(shape, only);
  res["survivor_exists"] = search.survivor_exists;
  res["parameter_bits"] = shape.parameter_bits();
  res["parameter_layout"] = shape.group == Group::z2 ? "alpha_0..alpha_h beta_0..beta_h gamma_1 gamma_2 gamma_3"
                                                      : "alpha beta";
  if (!search.survivor_exists) return res;
  res["survivor"] = search.survivor_label;
  res["tot_dims"] = search.tot_dims;
  res["searched"] = search.verdicts.size();
  long finite = 0;
  json matching = json::array();
  json verdicts = json::array();
  for (const auto& v : search.verdicts) {
    if (v.finite) ++finite;
    if (v.matches) matching.push_back(v.params.bitstring());
    if (only || v.matches) verdicts.push_back(verdict_json(v));
  }
  res["finite_count"] = finite;
  res["matching"] = matching;
  res["matching_count"] = matching.size();
  res["verdicts"] = verdicts;
  if (only) res["presentation"] = format_presentation(orbit_presentation(shape, *only));
  return res;
}

json aut(const Query& q) {
  GradedPresentation p;
  if (q.presentation) {
    p = load_presentation(*q.presentation);
  } else {
    p = milnor_presentation({parse_flavor(q.flavor), q.r, q.s});
  }
  const QuotientRing ring = assignment_ring(p, p.max_generator_degree());
  const auto survivors = involutive_automorphisms(ring);
  const GeneratorAssignment id = identity_assignment(ring);
  json list = json::array();
  bool closed = true;
  bool swap = false;
  for (const auto& phi : survivors) {
    list.push_back(format_assignment(ring, phi));
    if (phi.images.size() == 2 && phi.images[0] == id.images[1] && phi.images[1] == id.images[0]) swap = true;
    for (const auto& psi : survivors) {
      const auto c = compose(ring, phi, psi);
      if (std::find(survivors.begin(), survivors.end(), c) == survivors.end()) closed = false;
    }
  }
  json res;
  res["survivors"] = list;
  res["count"] = survivors.size();
  res["identity_only"] = survivors.size() == 1 && survivors.front() == id;
  res["contains_identity"] = std::find(survivors.begin(), survivors.end(), id) != survivors.end();
  res["closed_under_composition"] = closed;
  res["swap_present"] = swap;
  if (survivors.size() == 1 && survivors.front() == id) {
    res["inference"] = "every free involution induces the identity on mod 2 cohomology";
  }
  return res;
}

json report(const Query& q) {
  const OrbitShape shape{parse_group(q.group), parse_flavor(q.flavor), q.r, q.s};
  const ObstructionReport rep = borsuk_ulam_report(shape);
  json res;
  json cases = json::array();
  for (std::size_t i = 0; i < rep.cases_examined.size(); ++i) {
    cases.push_back({{"label", rep.cases_examined[i]},
                     {"admissible", rep.rejected_reasons[i].empty()},
                     {"failure_reason", rep.rejected_reasons[i].empty() ? json(nullptr) : json(rep.rejected_reasons[i])}});
  }
  res["cases"] = cases;
  res["admissible_cases"] = rep.admissible_cases;
  res["tot_dims"] = rep.tot_dims;
  res["matching_params"] = rep.matching_params;
  res["orbit_dims"] = rep.orbit_dims;
  res["coindex"] = optional_int(rep.coindex);
  res["coindex_consistent"] = rep.coindex_consistent;
  res["genus_lower"] = optional_int(rep.genus_lower);
  res["sphere_map_bound"] = optional_int(rep.sphere_map_bound);
  if (!rep.sw_class.empty()) res["sw_class"] = {{"orbit_generator", rep.sw_class}, {"pullback_of", "t"}};
  res["volovikov"] = rep.admissible_cases.empty() ? json(nullptr) : index_json(rep.volovikov);
  if (rep.euler) {
    const auto& e = *rep.euler;
    res["euler_class"] = {{"h0", e.h0},
                          {"h1", e.h1},
                          {"h2", e.h2},
                          {"h1_total", e.h1_total},
                          {"euler_zero", e.euler_zero},
                          {"s1_variant", e.s1_variant},
                          {"conclusion", e.conclusion},
                          {"params", e.matching_params}};
  }
  if (rep.floyd) {
    res["floyd_s1"] = {{"obstructed", rep.floyd->obstructed},
                       {"euler_characteristic", rep.floyd->euler_characteristic},
                       {"witness_prime", optional_int(rep.floyd->witness_prime)}};
  }
  json clauses = json::array();
  for (const auto& c : rep.clauses) {
    clauses.push_back({{"rule", c.rule}, {"hypothesis", c.hypothesis}, {"conclusion", c.conclusion}});
  }
  res["conditional_clauses"] = clauses;
  if (shape.group == Group::s1) res["s1_boundary_active"] = rep.s1_boundary_active;
  return res;
}

// ------------------------------------------------------------ text output

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void flatten(const json& v, const std::string& prefix, std::ostream& out) {
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    return;
  }
  if (v.is_array()) {
    const bool scalars = std::none_of(v.begin(), v.end(), [](const json& e) { return e.is_structured(); });
    if (scalars) {
      out << prefix << ":";
      for (const auto& e : v) out << ' ' << scalar_text(e);
      out << '\n';
      return;
    }
    for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], prefix + "[" + std::to_string(i) + "]", out);
    return;
  }
  out << prefix << ": " << scalar_text(v) << '\n';
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cohomology of orbit spaces of free actions on Milnor manifolds", "mss"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.set_version_flag("--version", std::string(kVersion));

  Query q;
  const std::vector<std::string> groups{"z2", "s1"};
  const std::vector<std::string> flavors{"real", "complex"};
  auto common = [&](CLI::App* sub, bool with_group, bool required = true) {
    if (with_group) sub->add_option("--group", q.group, "z2 or s1")->check(CLI::IsMember(groups))->required(required);
    sub->add_option("--flavor", q.flavor, "real or complex")->check(CLI::IsMember(flavors))->required(required);
    sub->add_option("--r", q.r, "Milnor index r")->required(required);
    sub->add_option("--s", q.s, "Milnor index s")->required(required);
  };

  auto* coh = app.add_subcommand("cohomology", "Betti table and bases of H*(RH_{r,s}) or H*(CH_{r,s})");
  common(coh, false);
  coh->add_option("--max-degree", q.max_degree, "Last degree to compute");

  auto* spec = app.add_subcommand("spectral", "Leray-Serre spectral sequence of the Borel fibration");
  common(spec, true);
  spec->add_option("--case", q.case_name, "Differential case")
      ->check(CLI::IsMember({"auto", "i", "ii", "iii", "trivial"}));
  spec->add_flag("--naive", q.naive, "Compute every column instead of using periodicity");

  auto* orb = app.add_subcommand("orbit", "Search the orbit-space presentation parameters");
  common(orb, true);
  auto* params_opt = orb->add_option("--params", q.params, "Parameter bit string");
  auto* search_opt = orb->add_flag("--search", q.search, "Try every parameter vector");
  params_opt->excludes(search_opt);
  orb->add_option("--presentation", q.presentation, "Custom orbit presentation file")->excludes(params_opt);

  auto* au = app.add_subcommand("aut", "Involutive ring automorphisms fixing degrees");
  au->add_option("--presentation", q.presentation, "Custom presentation file");
  common(au, false, false);

  auto* rep = app.add_subcommand("report", "Borsuk-Ulam obstruction report");
  common(rep, true);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }
  if (au->parsed() && !q.presentation && (au->count("--flavor") == 0 || au->count("--r") == 0 || au->count("--s") == 0)) {
    err << "aut needs --flavor, --r and --s unless --presentation is given\n";
    return 2;
  }

  try {
    json result;
    if (coh->parsed()) {
      q.command = "cohomology";
      result = cohomology(q);
    } else if (spec->parsed()) {
      q.command = "spectral";
      result = spectral(q);
    } else if (orb->parsed()) {
      q.command = "orbit";
      result = orbit(q);
    } else if (au->parsed()) {
      q.command = "aut";
      result = aut(q);
    } else {
      q.command = "report";
      result = report(q);
    }
    json doc;
    doc["query"] = query_json(q);
    doc["result"] = result;
    doc["version"] = kVersion;
    if (format == "json") {
      out << doc.dump(2) << '\n';
    } else {
      flatten(doc, "", out);
    }
    return 0;
  } catch (const DomainError& e) {
    err << "error[" << e.code() << "]: " << e.what() << '\n';
    return 1;
  } catch (const WindowError& e) {
    err << "error[window_too_narrow]: " << e.what() << '\n';
    return 1;
  } catch (const PresentationError& e) {
    err << "error[bad_presentation]: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace mss

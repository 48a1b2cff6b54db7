#include "mss/spectral.hpp"

#include <algorithm>
#include <cstdint>
#include <utility>

namespace mss {

std::string to_string(Group g) { return g == Group::z2 ? "z2" : "s1"; }

Group parse_group(const std::string& s) {
  if (s == "z2") return Group::z2;
  if (s == "s1") return Group::s1;
  throw DomainError("unknown_group", "group must be z2 or s1, got '" + s + "'");
}

BaseRing BaseRing::of(Group g) {
  if (g == Group::z2) return {Group::z2, "t", 1};
  return {Group::s1, "u", 2};
}

std::string BaseRing::class_name(int k) const {
  if (dim(k) == 0) return "";
  const int power = k / generator_degree;
  if (power == 0) return "1";
  if (power == 1) return generator;
  return generator + "^" + std::to_string(power);
}

std::string to_string(FailureReason r) {
  switch (r) {
    case FailureReason::relation_not_killed:
      return "relation_not_killed";
    case FailureReason::vanishing_violated:
      return "vanishing_violated";
    case FailureReason::higher_differential_undetermined:
      return "higher_differential_undetermined";
  }
  return "unknown";
}

bool DifferentialSpec::trivial() const {
  return std::none_of(transgressive.begin(), transgressive.end(), [](bool b) { return b; });
}

void validate_spec(const GradedPresentation& fiber, const BaseRing& base, const DifferentialSpec& spec) {
  if (spec.page < 2) throw DomainError("invalid_page", "differential page must be at least 2");
  if (spec.transgressive.size() != fiber.variables()) {
    throw DomainError("spec_size_mismatch", "differential spec must assign an image to every fiber generator");
  }
  for (std::size_t i = 0; i < fiber.variables(); ++i) {
    if (!spec.transgressive[i]) continue;
    const auto& g = fiber.generators()[i];
    if (g.degree != spec.page - 1) {
      throw DomainError("not_transgressive", "generator '" + g.name + "' of degree " + std::to_string(g.degree) +
                                                 " cannot hit the base row on page " + std::to_string(spec.page));
    }
    if (base.dim(spec.page) == 0) {
      throw DomainError("no_base_class", "H^" + std::to_string(spec.page) + "(B_G) is zero, so generator '" +
                                             g.name + "' has no nonzero transgression");
    }
  }
}

int transgression_page(const GradedPresentation& fiber) {
  int d = fiber.generators().empty() ? 1 : fiber.generators().front().degree;
  for (const auto& g : fiber.generators()) {
    if (g.degree != d) throw DomainError("mixed_generator_degrees", "fiber generators must share one degree");
  }
  return d + 1;
}

DifferentialSpec named_case(const GradedPresentation& fiber, const std::string& name) {
  if (fiber.variables() != 2) throw DomainError("not_two_generators", "named cases need a two-generator fiber");
  DifferentialSpec spec;
  spec.page = transgression_page(fiber);
  spec.label = name;
  if (name == "trivial") {
    spec.transgressive = {false, false};
  } else if (name == "i") {
    spec.transgressive = {true, false};
  } else if (name == "ii") {
    spec.transgressive = {false, true};
  } else if (name == "iii") {
    spec.transgressive = {true, true};
  } else {
    throw DomainError("unknown_case", "case must be one of trivial, i, ii, iii; got '" + name + "'");
  }
  return spec;
}

Polynomial leibniz_image(const GradedPresentation& fiber, const DifferentialSpec& spec, const Monomial& m) {
  std::vector<Monomial> terms;
  for (std::size_t g = 0; g < fiber.variables(); ++g) {
    if (!spec.transgressive[g] || m.exponent(g) % 2 == 0) continue;
    std::vector<int> e = m.exponents();
    --e[g];
    terms.emplace_back(std::move(e));
  }
  return Polynomial::from_terms(std::move(terms));
}

Polynomial leibniz_image(const GradedPresentation& fiber, const DifferentialSpec& spec, const Polynomial& f) {
  Polynomial out;
  for (const auto& t : f.terms()) out += leibniz_image(fiber, spec, t);
  return out;
}

DerivationVerdict check_derivation_well_defined(const GradedPresentation& fiber, const BaseRing& base,
                                                const DifferentialSpec& spec) {
  validate_spec(fiber, base, spec);
  DerivationVerdict v;
  v.target_page = spec.page;
  v.target_base_degree = spec.page;
  if (spec.trivial()) return v;
  int top = 0;
  for (std::size_t j = 0; j < fiber.relations().size(); ++j) top = std::max(top, fiber.relation_degree(j));
  const QuotientRing ring(fiber, top, Exec::serial);
  for (std::size_t j = 0; j < fiber.relations().size(); ++j) {
    const Polynomial image = leibniz_image(fiber, spec, fiber.relations()[j]);
    const int d = fiber.relation_degree(j) - (spec.page - 1);
    const Element e = ring.reduce(image, d);
    if (!e.is_zero()) {
      v.pass = false;
      v.relation = j;
      v.image = e;
      v.residue = ring.lift(e);
      return v;
    }
  }
  return v;
}

// ------------------------------------------------------------ pages

struct PageBuilder {
  static BigradedPage e2(const BaseRing& base, std::shared_ptr<const QuotientRing> fiber, Window window,
                         WindowMode mode) {
    BigradedPage page;
    page.page_ = 2;
    page.base_ = base;
    page.fiber_ = std::move(fiber);
    page.l_max_ = window.l_max;
    page.mode_ = mode;
    page.e2_ = true;
    page.periodic_from_ = 0;
    const int columns = mode == WindowMode::naive ? window.k_max : 2 * base.generator_degree + 2;
    if (columns <= 0) throw WindowError("window has no columns");
    page.entries_.assign(static_cast<std::size_t>(columns),
                         std::vector<PageEntry>(static_cast<std::size_t>(window.l_max) + 1));
    for (int k = 0; k < columns; ++k) {
      for (int l = 0; l <= window.l_max; ++l) {
        auto& e = page.entries_[k][l];
        const int fd = page.fiber_->dimension(l);
        e.dim = base.dim(k) * fd;
        if (e.dim > 0) {
          for (int i = 0; i < fd; ++i) e.basis.push_back(BitVector::unit(static_cast<std::size_t>(fd), i));
        }
      }
    }
    return page;
  }

  static DifferentialTable differential(const BigradedPage& page, const DifferentialSpec& spec, Exec exec);
  static BigradedPage turn(const BigradedPage& page, const DifferentialTable& table, Exec exec);

  // Next page when every differential is zero, except that entries listed in
  // `unknown` could not be checked and become unknown.
  static BigradedPage advance(const BigradedPage& page, const std::vector<std::pair<int, int>>& unknown) {
    BigradedPage next = page;
    ++next.page_;
    for (const auto& [k, l] : unknown) {
      auto& e = next.entries_[k][l];
      e.known = false;
      e.basis.clear();
    }
    return next;
  }
};

std::optional<int> BigradedPage::resolve(int k) const {
  if (k < 0) return -1;
  const int stored = stored_columns();
  if (k < stored) return k;
  if (mode_ == WindowMode::naive) return std::nullopt;
  return periodic_from_ + (k - periodic_from_) % period();
}

bool BigradedPage::known(int k, int l) const {
  if (l < 0 || l > l_max_) return true;
  const auto c = resolve(k);
  if (!c) return false;
  if (*c < 0) return true;
  return entries_[*c][l].known;
}

const PageEntry& BigradedPage::entry(int k, int l) const {
  static const PageEntry kZero{};
  if (l < 0 || l > l_max_) return kZero;
  const auto c = resolve(k);
  if (!c) throw WindowError("E_" + std::to_string(page_) + " column " + std::to_string(k) + " is outside the window");
  if (*c < 0) return kZero;
  const auto& e = entries_[*c][l];
  if (!e.known) {
    throw WindowError("E_" + std::to_string(page_) + "^{" + std::to_string(k) + "," + std::to_string(l) +
                      "} is not determined inside the window");
  }
  return e;
}

int BigradedPage::dim(int k, int l) const { return entry(k, l).dim; }

bool BigradedPage::total_known(int n) const {
  for (int l = 0; l <= std::min(n, l_max_); ++l) {
    if (!known(n - l, l)) return false;
  }
  return true;
}

int BigradedPage::total_dim(int n) const {
  int total = 0;
  for (int l = 0; l <= std::min(n, l_max_); ++l) total += dim(n - l, l);
  return total;
}

namespace {

int fiber_top(const GradedPresentation& fiber) {
  if (fiber.top_hint()) return *fiber.top_hint();
  constexpr int kSearch = 64;
  const QuotientRing ring(fiber, kSearch);
  if (!ring.vanishes_from()) {
    throw DomainError("fiber_not_finite", "fiber cohomology does not vanish through degree " + std::to_string(kSearch));
  }
  return std::max(0, *ring.vanishes_from() - 1);
}

}  // namespace

std::shared_ptr<const QuotientRing> fiber_ring(const GradedPresentation& fiber, int l_max, Exec exec) {
  auto ring = std::make_shared<const QuotientRing>(fiber, l_max + fiber.max_generator_degree(), exec);
  if (!ring->known_zero(l_max + 1)) {
    throw DomainError("fiber_not_finite",
                      "fiber cohomology is not certified to vanish above degree " + std::to_string(l_max));
  }
  return ring;
}

BigradedPage build_e2(const BaseRing& base, std::shared_ptr<const QuotientRing> fiber, Window window, WindowMode mode) {
  if (window.l_max < 0) throw WindowError("l_max must be non-negative");
  if (fiber->max_degree() < window.l_max || !fiber->known_zero(window.l_max + 1)) {
    throw DomainError("fiber_not_finite",
                      "fiber cohomology is not certified to vanish above degree " + std::to_string(window.l_max));
  }
  return PageBuilder::e2(base, std::move(fiber), window, mode);
}

BigradedPage build_e2(const BaseRing& base, const GradedPresentation& fiber, Window window, WindowMode mode) {
  return build_e2(base, fiber_ring(fiber, window.l_max), window, mode);
}

// ------------------------------------------------------------ differentials

const DifferentialBlock* DifferentialTable::at(int k, int l) const {
  if (k < 0) return nullptr;
  int c = k;
  if (k >= stored_) {
    if (mode_ == WindowMode::naive) return nullptr;
    c = periodic_from_ + (k - periodic_from_) % period_;
  }
  const auto it = blocks_.find({c, l});
  return it == blocks_.end() ? nullptr : &it->second;
}

bool DifferentialTable::is_zero() const {
  return std::all_of(blocks_.begin(), blocks_.end(), [](const auto& kv) { return kv.second.rank == 0; });
}

DifferentialTable PageBuilder::differential(const BigradedPage& page, const DifferentialSpec& spec, Exec exec) {
  const int r = spec.page;
  const QuotientRing& fiber = page.fiber();
  const GradedPresentation& pres = fiber.presentation();
  const int l_max = page.l_max();

  // D : H^l -> H^{l-r+1}; the same matrix serves every supported column.
  std::vector<BitMatrix> d_of_row(static_cast<std::size_t>(l_max) + 1);
  const bool parallel = exec == Exec::parallel || (exec == Exec::automatic && l_max >= 12);
  auto build_row = [&](int l) {
    const int tl = l - r + 1;
    const int src = fiber.dimension(l);
    const int tgt = tl < 0 ? 0 : fiber.dimension(tl);
    BitMatrix m(static_cast<std::size_t>(tgt), static_cast<std::size_t>(src));
    if (tgt > 0 && !spec.trivial()) {
      const auto& reps = fiber.basis(l).representatives;
      for (int j = 0; j < src; ++j) {
        const Element img = fiber.reduce(leibniz_image(pres, spec, reps[j]), tl);
        for (int i = 0; i < tgt; ++i) {
          if (img.coords.get(i)) m.set(i, j);
        }
      }
    }
    d_of_row[l] = std::move(m);
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int l = 0; l <= l_max; ++l) build_row(l);
  } else {
    for (int l = 0; l <= l_max; ++l) build_row(l);
  }

  DifferentialTable table;
  table.page_ = r;
  table.mode_ = page.mode();
  table.stored_ = page.stored_columns();
  table.periodic_from_ = page.periodic_from();
  table.period_ = page.period();
  for (int k = 0; k < page.stored_columns(); ++k) {
    for (int l = 0; l <= l_max; ++l) {
      const int tk = k + r;
      const int tl = l - r + 1;
      if (!page.known(k, l) || !page.known(tk, tl)) continue;
      const int src = page.dim(k, l);
      const int tgt = page.dim(tk, tl);
      DifferentialBlock b;
      b.k = k;
      b.l = l;
      b.target_k = tk;
      b.target_l = tl;
      b.matrix = (src > 0 && tgt > 0) ? d_of_row[l] : BitMatrix(static_cast<std::size_t>(tgt), static_cast<std::size_t>(src));
      table.blocks_.emplace(std::make_pair(k, l), std::move(b));
    }
  }

  std::vector<DifferentialBlock*> blocks;
  for (auto& kv : table.blocks_) blocks.push_back(&kv.second);
  auto reduce_block = [&](std::size_t i) {
    auto red = row_reduce_serial(blocks[i]->matrix);
    blocks[i]->rank = red.rank;
    blocks[i]->kernel = std::move(red.kernel_basis);
  };
  const auto nb = static_cast<std::ptrdiff_t>(blocks.size());
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < nb; ++i) reduce_block(static_cast<std::size_t>(i));
  } else {
    for (std::ptrdiff_t i = 0; i < nb; ++i) reduce_block(static_cast<std::size_t>(i));
  }
  return table;
}

DifferentialTable apply_differential(const BigradedPage& page, const DifferentialSpec& spec, Exec exec) {
  if (!page.is_e2() || page.page_number() != spec.page) {
    throw DomainError("page_mismatch", "differential on page " + std::to_string(spec.page) +
                                           " needs the unchanged E_2 term as page " + std::to_string(spec.page));
  }
  const auto verdict = check_derivation_well_defined(page.fiber().presentation(), page.base(), spec);
  if (!verdict.pass) {
    throw DomainError("relation_not_killed",
                      "the Leibniz extension does not kill relation " + std::to_string(*verdict.relation + 1));
  }
  return PageBuilder::differential(page, spec, exec);
}

namespace {

// Incrementally maintained span with one pivot per stored vector.
class SpanBuilder {
 public:
  bool insert(BitVector v) {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (v.get(pivots_[i])) v ^= rows_[i];
    }
    if (v.none()) return false;
    const std::size_t p = v.first_set();
    for (auto& row : rows_) {
      if (row.get(p)) row ^= v;
    }
    pivots_.push_back(p);
    rows_.push_back(std::move(v));
    return true;
  }

 private:
  std::vector<BitVector> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace

BigradedPage PageBuilder::turn(const BigradedPage& page, const DifferentialTable& table, Exec exec) {
  const int r = table.page();
  if (r != page.page_number()) throw DomainError("page_mismatch", "differential table belongs to another page");
  BigradedPage next;
  next.page_ = r + 1;
  next.base_ = page.base_;
  next.fiber_ = page.fiber_;
  next.l_max_ = page.l_max_;
  next.mode_ = page.mode_;
  next.e2_ = page.e2_ && table.is_zero();
  int columns = page.stored_columns();
  if (page.mode_ == WindowMode::periodic) {
    next.periodic_from_ = page.periodic_from_ + r;
    columns = std::max(columns, next.periodic_from_ + page.period());
  } else {
    next.periodic_from_ = page.periodic_from_;
  }
  const int l_max = page.l_max_;
  next.entries_.assign(static_cast<std::size_t>(columns), std::vector<PageEntry>(static_cast<std::size_t>(l_max) + 1));

  auto compute = [&](int k, int l) {
    PageEntry out;
    if (!page.known(k, l)) {
      out.known = false;
      return out;
    }
    if (page.dim(k, l) == 0) return out;
    const DifferentialBlock* leaving = table.at(k, l);
    if (leaving == nullptr) {
      out.known = false;
      return out;
    }
    SpanBuilder span;
    int image_rank = 0;
    const int sk = k - r;
    const int sl = l + r - 1;
    if (sk >= 0 && sl <= l_max) {
      const DifferentialBlock* arriving = table.at(sk, sl);
      if (arriving == nullptr) {
        out.known = false;
        return out;
      }
      for (std::size_t c = 0; c < arriving->matrix.cols(); ++c) {
        if (span.insert(arriving->matrix.column(c))) ++image_rank;
      }
    }
    const auto& src_basis = page.entry(k, l).basis;
    for (const auto& kv : leaving->kernel) {
      // Kernel vectors are in entry coordinates; map them into H^l coordinates.
      BitVector v(page.fiber().dimension(l) > 0 ? static_cast<std::size_t>(page.fiber().dimension(l)) : 0);
      for (std::size_t i = 0; i < kv.size(); ++i) {
        if (kv.get(i)) v ^= src_basis[i];
      }
      if (span.insert(v)) out.basis.push_back(std::move(v));
    }
    out.dim = static_cast<int>(out.basis.size());
    return out;
  };

  const int cells = columns * (l_max + 1);
  const bool parallel = exec == Exec::parallel || (exec == Exec::automatic && cells >= 256);
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int idx = 0; idx < cells; ++idx) next.entries_[idx / (l_max + 1)][idx % (l_max + 1)] = compute(idx / (l_max + 1), idx % (l_max + 1));
  } else {
    for (int idx = 0; idx < cells; ++idx) next.entries_[idx / (l_max + 1)][idx % (l_max + 1)] = compute(idx / (l_max + 1), idx % (l_max + 1));
  }
  return next;
}

BigradedPage turn_page(const BigradedPage& page, const DifferentialTable& table, Exec exec) {
  return PageBuilder::turn(page, table, exec);
}

bool differential_squares_vanish(const DifferentialTable& table) {
  for (const auto& [key, block] : table.blocks()) {
    const DifferentialBlock* next = table.at(block.target_k, block.target_l);
    if (next == nullptr || next->source_dim() != block.target_dim()) continue;
    if (!(next->matrix * block.matrix).is_zero()) return false;
  }
  return true;
}

std::vector<RankRow> rank_table(const DifferentialTable& table, int k, int l_max) {
  std::vector<RankRow> rows;
  for (int l = 0; l <= l_max; ++l) {
    const DifferentialBlock* b = table.at(k, l);
    if (b == nullptr) continue;
    rows.push_back({l, b->source_dim(), b->kernel_dim(), static_cast<int>(b->rank)});
  }
  return rows;
}

// ------------------------------------------------------------ runs

namespace {

struct StructuralCheck {
  std::optional<std::pair<int, int>> obstruction;
  std::vector<std::pair<int, int>> unknown;
};

// Decides whether d_p vanishes on `page` for structural reasons.
StructuralCheck check_structural(const BigradedPage& page, int p) {
  StructuralCheck out;
  if (page.is_e2()) {
    // d_p is a derivation and E_p is still generated by t (x) 1 and 1 (x) g. The base
    // class lands below row 0, so only the fiber generators can carry d_p.
    const auto& gens = page.fiber().presentation().generators();
    for (const auto& g : gens) {
      const int row = g.degree - p + 1;
      if (row < 0) continue;
      if (page.base().dim(p) * page.fiber().dimension(row) > 0) {
        out.obstruction = std::make_pair(0, g.degree);
        return out;
      }
    }
    return out;
  }
  for (int k = 0; k < page.stored_columns(); ++k) {
    for (int l = 0; l <= page.l_max(); ++l) {
      if (!page.known(k, l) || page.dim(k, l) == 0) continue;
      const int row = l - p + 1;
      if (row < 0) continue;
      if (!page.known(k + p, row)) {
        out.unknown.emplace_back(k, l);
      } else if (page.dim(k + p, row) > 0) {
        out.obstruction = std::make_pair(k, l);
        return out;
      }
    }
  }
  return out;
}

}  // namespace

PageSequenceResult run_borel_ss(const BaseRing& base, const GradedPresentation& fiber, const DifferentialSpec& spec,
                                int dim_x, const RunOptions& options) {
  validate_spec(fiber, base, spec);
  const int l_max = options.window ? options.window->l_max : fiber_top(fiber);
  const Window window = options.window.value_or(Window{dim_x + l_max + 4, l_max});
  auto ring = fiber_ring(fiber, l_max, options.exec);

  PageSequenceResult result;
  result.spec = spec;
  result.final_page = build_e2(base, ring, window, options.mode);
  BigradedPage& page = result.final_page;

  auto undetermined = [&](int p, std::pair<int, int> at) {
    result.admissible = false;
    result.failure_reason = FailureReason::higher_differential_undetermined;
    result.undetermined_page = p;
    result.undetermined_at = at;
    return result;
  };

  for (int p = 2; p < spec.page; ++p) {
    const auto check = check_structural(page, p);
    if (check.obstruction) return undetermined(p, *check.obstruction);
    page = PageBuilder::advance(page, check.unknown);
  }

  result.derivation = check_derivation_well_defined(fiber, base, spec);
  if (!result.derivation.pass) {
    result.admissible = false;
    result.failure_reason = FailureReason::relation_not_killed;
    return result;
  }

  result.differential = PageBuilder::differential(page, spec, options.exec);
  page = PageBuilder::turn(page, *result.differential, options.exec);

  for (int p = spec.page + 1; p <= l_max + 2; ++p) {
    const auto check = check_structural(page, p);
    if (check.obstruction) return undetermined(p, *check.obstruction);
    page = PageBuilder::advance(page, check.unknown);
  }

  // Range over which total degrees are certified.
  int checked = -1;
  if (page.mode() == WindowMode::periodic) {
    // For n >= periodic_from + l_max every antidiagonal entry sits in the periodic
    // part, so one more period settles all higher n.
    checked = std::max(dim_x + 1, page.periodic_from() + l_max + page.period() - 1);
  } else {
    while (page.total_known(checked + 1)) ++checked;
  }
  if (checked <= dim_x) {
    throw WindowError("window too narrow: total degrees are determined only through " + std::to_string(checked));
  }
  result.vanishing_checked_through = checked;

  for (int n = 0; n <= dim_x; ++n) result.tot_dims.push_back(page.total_dim(n));
  const int first_forbidden = base.group == Group::z2 ? dim_x + 1 : dim_x;
  result.s1_boundary_active = base.group == Group::s1 && ring->dimension(dim_x) != 0;
  result.admissible = true;
  for (int n = first_forbidden; n <= checked; ++n) {
    if (page.total_dim(n) != 0) {
      result.admissible = false;
      result.failure_reason = FailureReason::vanishing_violated;
      result.violation_degree = n;
      break;
    }
  }

  result.volovikov = volovikov_index(result);
  return result;
}

std::optional<int> volovikov_index(const PageSequenceResult& result) {
  if (!result.differential) return std::nullopt;
  for (const auto& [key, block] : result.differential->blocks()) {
    if (block.target_l == 0 && block.rank > 0) return result.differential->page();
  }
  return std::nullopt;
}

std::vector<CaseResult> enumerate_cases(const BaseRing& base, const MilnorParams& params, const RunOptions& options) {
  const GradedPresentation fiber = milnor_presentation(params);
  const int page = transgression_page(fiber);
  const std::size_t n = fiber.variables();
  const std::uint32_t masks = base.dim(page) > 0 ? (1u << n) : 1u;
  static const char* kNames[] = {"trivial", "i", "ii", "iii"};
  std::vector<CaseResult> out;
  for (std::uint32_t mask = 0; mask < masks; ++mask) {
    DifferentialSpec spec;
    spec.page = page;
    for (std::size_t g = 0; g < n; ++g) spec.transgressive.push_back((mask >> g) & 1u);
    spec.label = n == 2 ? kNames[mask] : std::to_string(mask);
    auto result = run_borel_ss(base, fiber, spec, params.dimension(), options);
    out.push_back({std::move(spec), std::move(result)});
  }
  return out;
}

std::vector<CaseResult> enumerate_admissible_cases(const BaseRing& base, const MilnorParams& params,
                                                   const RunOptions& options) {
  auto all = enumerate_cases(base, params, options);
  std::vector<CaseResult> out;
  for (auto& c : all) {
    if (c.result.admissible) out.push_back(std::move(c));
  }
  return out;
}

}  // namespace mss

#pragma once

// Leray-Serre spectral sequence of the Borel fibration X -> X_G -> B_G for
// G = Z2 or S^1 with simple coefficients, so E_2^{k,l} = H^k(B_G) (x) H^l(X).
//
// Only the first nonzero differential is ever computed, and only on generators
// that transgress (image t^r (x) 1 or u^{r/2} (x) 1). Every other page is
// accepted only when its differentials vanish for structural reasons; otherwise
// the run stops with higher_differential_undetermined.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mss/algebra.hpp"
#include "mss/errors.hpp"
#include "mss/exec.hpp"
#include "mss/f2.hpp"
#include "mss/milnor.hpp"

namespace mss {

enum class Group { z2, s1 };

std::string to_string(Group g);
Group parse_group(const std::string& s);

// H^*(B_G; F2): Z2[t] with deg t = 1, or Z2[u] with deg u = 2.
struct BaseRing {
  Group group = Group::z2;
  std::string generator = "t";
  int generator_degree = 1;

  static BaseRing of(Group g);
  int dim(int k) const { return k >= 0 && k % generator_degree == 0 ? 1 : 0; }
  // Name of the base class in degree k ("t^2", "u", ...), or "" if H^k(B_G) = 0.
  std::string class_name(int k) const;
};

// Generator images at one page: transgressive[i] means d_r(1 (x) g_i) = base class (x) 1.
struct DifferentialSpec {
  int page = 2;
  std::vector<bool> transgressive;
  std::string label;

  bool trivial() const;
};

// Throws DomainError when a nonzero image is not a transgression onto an
// existing base class, or when the spec does not fit the fiber.
void validate_spec(const GradedPresentation& fiber, const BaseRing& base, const DifferentialSpec& spec);

// First page at which the fiber generators can transgress: their degree + 1.
int transgression_page(const GradedPresentation& fiber);

// Named cases for two-generator fibers: "trivial", "i" (first generator only),
// "ii" (second only), "iii" (both). Uses the transgression page.
DifferentialSpec named_case(const GradedPresentation& fiber, const std::string& name);

// The fiber-level derivation D with D(g) = 1 on transgressive generators:
// d_r(t^k (x) m) = t^{k+r} (x) D(m).
Polynomial leibniz_image(const GradedPresentation& fiber, const DifferentialSpec& spec, const Monomial& m);
Polynomial leibniz_image(const GradedPresentation& fiber, const DifferentialSpec& spec, const Polynomial& f);

struct DerivationVerdict {
  bool pass = true;
  std::optional<std::size_t> relation;  // first relation with a nonzero image
  Element image;                        // its reduced image in H^*(X)
  Polynomial residue;                   // the same image as a sum of representatives
  int target_page = 2;
  int target_base_degree = 2;           // the image is base_class(target_base_degree) (x) residue
};

DerivationVerdict check_derivation_well_defined(const GradedPresentation& fiber, const BaseRing& base,
                                                const DifferentialSpec& spec);

enum class WindowMode { periodic, naive };

struct Window {
  int k_max = 0;  // columns [0, k_max) are computed in naive mode
  int l_max = 0;  // rows [0, l_max]; the fiber vanishes above l_max
};

class DifferentialTable;

struct PageEntry {
  bool known = true;
  int dim = 0;
  // Basis of the subquotient, as vectors in the coordinates of H^l(X).
  std::vector<BitVector> basis;
};

class BigradedPage {
 public:
  int page_number() const { return page_; }
  const BaseRing& base() const { return base_; }
  const QuotientRing& fiber() const { return *fiber_; }
  std::shared_ptr<const QuotientRing> fiber_ptr() const { return fiber_; }
  int l_max() const { return l_max_; }
  WindowMode mode() const { return mode_; }
  // True until a nonzero differential has been taken into account.
  bool is_e2() const { return e2_; }

  int stored_columns() const { return static_cast<int>(entries_.size()); }
  int periodic_from() const { return periodic_from_; }
  int period() const { return base_.generator_degree; }

  bool known(int k, int l) const;
  // Throws WindowError for unknown entries; zero outside the quadrant or above l_max.
  int dim(int k, int l) const;
  const PageEntry& entry(int k, int l) const;

  // Sum over k + l = n; throws WindowError if any entry is unknown.
  int total_dim(int n) const;
  bool total_known(int n) const;

 private:
  friend struct PageBuilder;

  // Column actually stored for k, or -1 if k < 0, or nullopt if unknown.
  std::optional<int> resolve(int k) const;

  int page_ = 2;
  BaseRing base_;
  std::shared_ptr<const QuotientRing> fiber_;
  int l_max_ = 0;
  WindowMode mode_ = WindowMode::periodic;
  bool e2_ = true;
  int periodic_from_ = 0;
  std::vector<std::vector<PageEntry>> entries_;  // [k][l]
};

// Fiber ring computed through l_max + max generator degree; throws DomainError
// if it is not certified to vanish above l_max.
std::shared_ptr<const QuotientRing> fiber_ring(const GradedPresentation& fiber, int l_max, Exec exec = Exec::automatic);

BigradedPage build_e2(const BaseRing& base, std::shared_ptr<const QuotientRing> fiber, Window window,
                      WindowMode mode = WindowMode::periodic);
BigradedPage build_e2(const BaseRing& base, const GradedPresentation& fiber, Window window,
                      WindowMode mode = WindowMode::periodic);

struct DifferentialBlock {
  int k = 0, l = 0;
  int target_k = 0, target_l = 0;
  BitMatrix matrix;  // target_dim x source_dim
  std::size_t rank = 0;
  std::vector<BitVector> kernel;

  int source_dim() const { return static_cast<int>(matrix.cols()); }
  int target_dim() const { return static_cast<int>(matrix.rows()); }
  int kernel_dim() const { return static_cast<int>(kernel.size()); }
};

class DifferentialTable {
 public:
  int page() const { return page_; }
  // Block with source (k, l), resolving columns through the page's periodicity.
  // nullptr if the source is outside the quadrant or unknown.
  const DifferentialBlock* at(int k, int l) const;
  const std::map<std::pair<int, int>, DifferentialBlock>& blocks() const { return blocks_; }
  bool is_zero() const;

 private:
  friend struct PageBuilder;
  int page_ = 2;
  WindowMode mode_ = WindowMode::periodic;
  int stored_ = 0;
  int periodic_from_ = 0;
  int period_ = 1;
  std::map<std::pair<int, int>, DifferentialBlock> blocks_;
};

// Matrices of d_r in the page bases, one block per source bidegree. The page
// must still be E_2 and the spec must pass check_derivation_well_defined.
DifferentialTable apply_differential(const BigradedPage& page, const DifferentialSpec& spec,
                                     Exec exec = Exec::automatic);

// E_{r+1} = ker d_r / im d_r.
BigradedPage turn_page(const BigradedPage& page, const DifferentialTable& table, Exec exec = Exec::automatic);

// d_r o d_r = 0 on every block whose target block is also present.
bool differential_squares_vanish(const DifferentialTable& table);

struct RankRow {
  int l = 0;
  int source_dim = 0;
  int kernel = 0;
  int image = 0;
};

// rk Ker / rk Im of d_r : E_r^{k,l} -> E_r^{k+r,l-r+1} for every row l.
std::vector<RankRow> rank_table(const DifferentialTable& table, int k, int l_max);

enum class FailureReason { relation_not_killed, vanishing_violated, higher_differential_undetermined };

std::string to_string(FailureReason r);

struct RunOptions {
  WindowMode mode = WindowMode::periodic;
  std::optional<Window> window;  // default: k_max = dim_X + l_max + 4, l_max = fiber top
  Exec exec = Exec::automatic;
};

struct PageSequenceResult {
  DifferentialSpec spec;
  BigradedPage final_page;
  std::optional<DifferentialTable> differential;  // the applied nonzero-page table
  DerivationVerdict derivation;
  std::vector<int> tot_dims;  // n = 0 .. dim_X
  bool admissible = false;
  std::optional<FailureReason> failure_reason;
  // Nonzero total degree violating the vanishing bound, or the undetermined bidegree.
  std::optional<int> violation_degree;
  std::optional<std::pair<int, int>> undetermined_at;
  std::optional<int> undetermined_page;
  int vanishing_checked_through = -1;
  // First page with a nonzero differential into the base row; nullopt = infinity.
  std::optional<int> volovikov;
  // S^1: the vanishing bound is applied at n = dim_X exactly.
  bool s1_boundary_active = false;
};

PageSequenceResult run_borel_ss(const BaseRing& base, const GradedPresentation& fiber, const DifferentialSpec& spec,
                                int dim_x, const RunOptions& options = {});

struct CaseResult {
  DifferentialSpec spec;
  PageSequenceResult result;
};

// Every generator-image assignment at the transgression page, with its run.
std::vector<CaseResult> enumerate_cases(const BaseRing& base, const MilnorParams& params, const RunOptions& options = {});
// The admissible subset; empty means no free action with trivial induced action.
std::vector<CaseResult> enumerate_admissible_cases(const BaseRing& base, const MilnorParams& params,
                                                   const RunOptions& options = {});

std::optional<int> volovikov_index(const PageSequenceResult& result);

}  // namespace mss

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <utility>
#include <stdexcept>
#include <string>
#include <vector>

#include "digitlab/analytic.hpp"
#include "digitlab/genfun.hpp"

namespace digitlab {

namespace ids {
inline constexpr const char* dirichlet_chat = "dir-chat";
inline constexpr const char* dirichlet_carry = "dir-carry";
inline constexpr const char* dirichlet_convolution = "dir-convolution";
inline constexpr const char* dirichlet_limit = "dir-limit";
inline constexpr const char* bilateral = "bilateral-eqs";
}  // namespace ids

// One parameter point for the bilateral sweep.
struct BilateralPoint {
  double base;
  Complex x;
  Complex z;
  Complex q;
  int r;
  int t;
};

inline std::vector<BilateralPoint> default_bilateral_points() {
  return {
      {2.0, {0.3, 0.0}, {3.0, 0.0}, {0.4, 0.0}, 1, 2},
      {2.0, {-0.2, 0.1}, {2.5, 1.0}, {0.35, -0.2}, 2, 3},
      {3.0, {0.5, 0.0}, {4.0, 0.0}, {0.3, 0.0}, 1, 2},
      {1.5, {0.25, 0.0}, {2.2, 0.0}, {0.5, 0.0}, 1, 2},
      {2.5, {0.1, 0.2}, {-3.2, 0.0}, {-0.45, 0.0}, 3, 2},
  };
}

// Parameters shared by every catalog entry. The exact identities use base
// and order; the Dirichlet checks use s and terms; dir-limit and the
// bilateral sweep carry their own parameter sets.
struct CatalogParams {
  Natural base{10};
  std::size_t order = 200;
  std::size_t squared_order = 128;  // cor-squared builds order^2 trace columns; capped lower
  long long shift_j = 1;
  Natural repeat_a{3};
  Complex s{3.0, 0.0};
  std::uint64_t terms = 1000000;
  double limit_s = 3.0;
  std::vector<std::uint64_t> limit_bases{10, 100, 10001, 100000};
  std::uint64_t limit_terms = 10000;
  std::vector<BilateralPoint> bilateral_points = default_bilateral_points();
  int bilateral_window = 40;
  std::optional<std::size_t> mutate_exponent;  // debug: bump one coefficient of
                                               // the thm-two-variable LHS
};

// Uniform record for one catalog entry: exact entries carry the coefficient
// comparison report, numeric entries the bound check.
struct CheckResult {
  std::string id;
  bool exact = true;
  bool passed = false;
  double elapsed_ms = 0.0;
  std::optional<VerificationReport> report;
  std::optional<NumericCheck> numeric;
};

// All ids, sorted (report order is deterministic regardless of run order).
inline const std::vector<std::string>& catalog_ids() {
  static const std::vector<std::string> all = {
      ids::bilateral,
      ids::chat_ones_two_variable,
      ids::chat_ones_gf,
      ids::sB_generating_function,
      ids::shiftcor,
      ids::squared,
      ids::dirichlet_carry,
      ids::dirichlet_chat,
      ids::dirichlet_convolution,
      ids::dirichlet_limit,
      ids::lambert_transform,
      ids::shift,
      ids::chat_repeat,
      ids::hypergeometric,
      ids::two_variable,
  };
  return all;
}

namespace detail {

inline CheckResult from_report(VerificationReport rep) {
  CheckResult r;
  r.id = rep.spec.id;
  r.exact = true;
  r.passed = rep.passed;
  r.elapsed_ms = rep.elapsed_ms;
  r.report = std::move(rep);
  return r;
}

inline CheckResult from_numeric(NumericCheck check, double elapsed_ms) {
  CheckResult r;
  r.id = check.id;
  r.exact = false;
  r.passed = check.passed;
  r.elapsed_ms = elapsed_ms;
  r.numeric = std::move(check);
  return r;
}

inline CheckResult run_bilateral_sweep(const CatalogParams& p) {
  Timer timer;
  if (p.bilateral_points.empty())
    throw std::invalid_argument("bilateral-eqs: need at least one parameter point");
  std::optional<NumericCheck> worst;
  bool all_passed = true;
  std::ostringstream detail;
  for (std::size_t i = 0; i < p.bilateral_points.size(); ++i) {
    const BilateralPoint& pt = p.bilateral_points[i];
    NumericCheck c = verify_bilateral_equations(pt.base, pt.x, pt.z, pt.q, pt.r, pt.t,
                                                p.bilateral_window);
    all_passed = all_passed && c.passed;
    if (i > 0) detail << "; ";
    detail << "point" << i << "[B=" << pt.base << " r=" << pt.r << " t=" << pt.t
           << "]: " << c.detail;
    if (!worst || c.abs_error > worst->abs_error) worst = std::move(c);
  }
  worst->id = ids::bilateral;
  worst->passed = all_passed;
  worst->detail = detail.str();
  return from_numeric(std::move(*worst), timer.elapsed_ms());
}

}  // namespace detail

// Run one catalog entry by id. Unknown ids throw std::invalid_argument.
inline CheckResult run_catalog_entry(const std::string& id, const CatalogParams& p = {}) {
  detail::Timer timer;
  const Base base(p.base);
  if (id == ids::two_variable)
    return detail::from_report(verify_two_variable(base, p.order, p.mutate_exponent));
  if (id == ids::shift) return detail::from_report(verify_shift(base, p.shift_j, p.order));
  if (id == ids::chat_ones_two_variable)
    return detail::from_report(verify_chat_ones_two_variable(base, p.order));
  if (id == ids::squared)
    return detail::from_report(verify_squared(base, std::min(p.order, p.squared_order)));
  if (id == ids::hypergeometric)
    return detail::from_report(verify_hypergeometric(base, p.order));
  if (id == ids::sB_generating_function)
    return detail::from_report(verify_sB_generating_function(base, p.order));
  if (id == ids::shiftcor) return detail::from_report(verify_shiftcor(base, p.order));
  if (id == ids::chat_ones_gf) return detail::from_report(verify_chat_ones_gf(base, p.order));
  if (id == ids::chat_repeat)
    return detail::from_report(verify_chat_repeat(p.repeat_a, base, p.order));
  if (id == ids::lambert_transform)
    return detail::from_report(verify_lambert_transform(base, p.order));
  if (id == ids::dirichlet_chat) {
    NumericCheck c = verify_dirichlet_chat(base, p.s, p.terms);
    return detail::from_numeric(std::move(c), timer.elapsed_ms());
  }
  if (id == ids::dirichlet_carry) {
    NumericCheck c = verify_dirichlet_carry(base, p.s, p.terms);
    return detail::from_numeric(std::move(c), timer.elapsed_ms());
  }
  if (id == ids::dirichlet_convolution) {
    NumericCheck c = verify_dirichlet_convolution(base, p.s, p.terms);
    return detail::from_numeric(std::move(c), timer.elapsed_ms());
  }
  if (id == ids::dirichlet_limit) {
    NumericCheck c = verify_limit_large_B(p.limit_s, p.limit_bases, p.limit_terms);
    return detail::from_numeric(std::move(c), timer.elapsed_ms());
  }
  if (id == ids::bilateral) return detail::run_bilateral_sweep(p);
  throw std::invalid_argument("unknown catalog id: " + id);
}

// Run every catalog entry, sorted by id. A heuristic-bound miss is recorded
// in its entry but does not clear all_passed; exact and rigorous/tolerance
// failures do.
struct CatalogRun {
  std::vector<CheckResult> results;
  bool all_passed = true;
};

inline CatalogRun run_catalog(const CatalogParams& p = {}) {
  CatalogRun run;
  for (const std::string& id : catalog_ids()) {
    CheckResult r = run_catalog_entry(id, p);
    const bool fatal =
        !r.passed && (r.exact || r.numeric->bound_kind != BoundKind::heuristic);
    if (fatal) run.all_passed = false;
    run.results.push_back(std::move(r));
  }
  return run;
}

}  // namespace digitlab

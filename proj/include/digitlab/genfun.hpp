#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "digitlab/digit_core.hpp"
#include "digitlab/truncated_series.hpp"

namespace digitlab {

// Stable string ids for the exact identity catalog.
namespace ids {
inline constexpr const char* two_variable = "thm-two-variable";
inline constexpr const char* shift = "eq-shift-j";
inline constexpr const char* chat_ones_two_variable = "cor-chat-ones-2var";
inline constexpr const char* squared = "cor-squared";
inline constexpr const char* hypergeometric = "thm-hypergeom";
inline constexpr const char* sB_generating_function = "cor-sB-gf";
inline constexpr const char* shiftcor = "cor-shiftcor";
inline constexpr const char* chat_ones_gf = "cor-chat-ones-gf";
inline constexpr const char* chat_repeat = "thm-chat-repeat";
inline constexpr const char* lambert_transform = "eq-lambert-transform";
}  // namespace ids

// What an exact verification ran on.
struct IdentitySpec {
  std::string id;
  Base base;
  std::size_t order = 0;
  std::optional<long long> shift_j;          // eq-shift-j
  std::optional<Natural> repeat_a;           // thm-chat-repeat
  std::optional<long long> z_cap;            // cor-squared (optional z-degree cap)
  std::optional<std::size_t> mutate_exponent;  // thm-two-variable self-test hook
};

// Smallest q-exponent at which two sides disagree, with both coefficients.
struct Divergence {
  std::size_t q_exponent = 0;
  LaurentPoly lhs;
  LaurentPoly rhs;
  std::string check;  // label of the sub-comparison that diverged
};

struct VerificationReport {
  IdentitySpec spec;
  bool passed = false;
  std::optional<Divergence> first_divergence;
  double elapsed_ms = 0.0;
};

namespace detail {

class Timer {
 public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(clock::now() - start_).count();
  }

 private:
  using clock = std::chrono::steady_clock;
  clock::time_point start_ = clock::now();
};

inline std::optional<Divergence> compare_series(const TruncatedSeries& lhs,
                                                const TruncatedSeries& rhs, std::string check) {
  for (std::size_t n = 0; n <= lhs.order(); ++n)
    if (!(lhs[n] == rhs[n])) return Divergence{n, lhs[n], rhs[n], std::move(check)};
  return std::nullopt;
}

inline VerificationReport finish(IdentitySpec spec, const Timer& timer,
                                 std::optional<Divergence> divergence) {
  VerificationReport r{std::move(spec), !divergence.has_value(), std::move(divergence),
                       timer.elapsed_ms()};
  return r;
}

inline long long to_ll(const Natural& n) {
  if (n > std::numeric_limits<long long>::max() || n < std::numeric_limits<long long>::min())
    throw std::overflow_error("value does not fit a machine exponent");
  return n.convert_to<long long>();
}

inline IdentitySpec make_spec(const char* id, const Base& base, std::size_t order) {
  return IdentitySpec{id, base, order, {}, {}, {}, {}};
}

// Multiply acc by (1 - z^{z_exp} q^{q_exp}), skipping factors beyond the order.
inline void times_one_minus(TruncatedSeries& acc, long long z_exp, std::size_t q_exp) {
  if (q_exp > acc.order()) return;
  TruncatedSeries f = TruncatedSeries::one(acc.order());
  f.at(q_exp) = LaurentPoly::monomial(-1, z_exp);
  acc *= f;
}

inline TruncatedSeries cap_z_degree(const TruncatedSeries& s, long long cap) {
  TruncatedSeries r(s.order());
  for (std::size_t n = 0; n <= s.order(); ++n) r.at(n) = s[n].drop_above(cap);
  return r;
}

}  // namespace detail

// Weight function on digit values; must send 0 to the unit polynomial so that
// leading zero digits are weightless.
using DigitWeight = std::function<LaurentPoly(const Natural&)>;

namespace detail {
inline void require_unit_at_zero(const DigitWeight& f) {
  if (!(f(0) == LaurentPoly::constant(1)))
    throw std::invalid_argument("digit weight must map digit 0 to 1");
}
}  // namespace detail

// sum_n q^n * prod_{digits d of n} f(d), truncated at the order.
inline TruncatedSeries digit_weighted_sum(const DigitWeight& f, const Base& base,
                                          std::size_t order) {
  detail::require_unit_at_zero(f);
  TruncatedSeries s(order);
  for (std::size_t n = 0; n <= order; ++n) {
    LaurentPoly term = LaurentPoly::constant(1);
    for (const Natural& d : to_digits(n, base).digits) term *= f(d);
    s.at(n) = std::move(term);
  }
  return s;
}

// prod_{i >= 0} (sum_{d=0}^{B-1} f(d) q^{d B^i}), truncated at the order;
// factors whose first nonconstant term lies beyond the order are omitted.
inline TruncatedSeries digit_weighted_product(const DigitWeight& f, const Base& base,
                                              std::size_t order) {
  detail::require_unit_at_zero(f);
  TruncatedSeries r = TruncatedSeries::one(order);
  const Natural& B = base.value();
  for (Natural pw = 1; pw <= order; pw *= B) {
    const std::size_t step = pw.convert_to<std::size_t>();
    TruncatedSeries factor(order);
    factor.at(0) = LaurentPoly::constant(1);
    for (std::size_t d = 1; d < B && d * step <= order; ++d) factor.at(d * step) = f(d);
    r *= factor;
  }
  return r;
}

// sum_n q^n z^{digit_sum(n)}. The optional bump adds 1 to the exponent at a
// single n; it exists so tests can confirm the verifier localizes a defect.
inline TruncatedSeries two_variable_sum(const Base& base, std::size_t order,
                                        std::optional<std::size_t> bump_at = std::nullopt) {
  TruncatedSeries s(order);
  for (std::size_t n = 0; n <= order; ++n) {
    Natural e = digit_sum(n, base);
    if (bump_at && *bump_at == n) ++e;
    s.at(n) = LaurentPoly::monomial(1, detail::to_ll(e));
  }
  return s;
}

// prod_{i >= 0} (1 - z^B q^{B^{i+1}}) / (1 - z q^{B^i}), truncated.
inline TruncatedSeries two_variable_product(const Base& base, std::size_t order) {
  TruncatedSeries r = TruncatedSeries::one(order);
  const Natural& B = base.value();
  for (Natural pw = 1; pw <= order; pw *= B) {
    r *= geometric(1, detail::to_ll(pw), order);
    const Natural up = pw * B;
    if (up <= order)
      detail::times_one_minus(r, detail::to_ll(B), up.convert_to<std::size_t>());
  }
  return r;
}

// sum_{i >= 1} q^{B^i} / (1 - q^{B^i}): the coefficient of q^n counts the
// i >= 1 with B^i | n. Zero series when B exceeds the order.
inline TruncatedSeries lambert_series(const Base& base, std::size_t order) {
  TruncatedSeries r(order);
  const Natural& B = base.value();
  for (Natural pw = B; pw <= order; pw *= B) {
    const std::size_t step = pw.convert_to<std::size_t>();
    for (std::size_t m = step; m <= order; m += step) r.at(m).add_term(0, 1);
  }
  return r;
}

// sum_{i >= 0} q^{B^i} / (1 - z q^{B^i}) = sum_{m >= 0} z^m sum_i q^{(m+1) B^i}.
inline TruncatedSeries lambert_bivariate(const Base& base, std::size_t order) {
  TruncatedSeries r(order);
  const Natural& B = base.value();
  for (Natural pw = 1; pw <= order; pw *= B) {
    const std::size_t step = pw.convert_to<std::size_t>();
    for (std::size_t m = 0; (m + 1) * step <= order; ++m)
      r.at((m + 1) * step).add_term(static_cast<long long>(m), 1);
  }
  return r;
}

// --- Exact identity verifiers -------------------------------------------
//
// Each builds both sides of one identity by independent routes and compares
// coefficients exactly, reporting the smallest diverging q-exponent.

inline VerificationReport verify_two_variable(const Base& base, std::size_t order,
                                              std::optional<std::size_t> mutate = std::nullopt) {
  detail::Timer timer;
  IdentitySpec spec = detail::make_spec(ids::two_variable, base, order);
  spec.mutate_exponent = mutate;
  auto div = detail::compare_series(two_variable_sum(base, order, mutate),
                                    two_variable_product(base, order), "sum-vs-product");
  return detail::finish(std::move(spec), timer, std::move(div));
}

// Three expressions for the same series: the q -> q^{B^j} dilation of the
// digit-sum sum, the tail of the product starting at i = j, and the full
// series with the first j denominator/numerator factors peeled off.
inline VerificationReport verify_shift(const Base& base, long long j, std::size_t order) {
  if (j < 0) throw std::invalid_argument("verify_shift: j must be nonnegative");
  detail::Timer timer;
  IdentitySpec spec = detail::make_spec(ids::shift, base, order);
  spec.shift_j = j;
  const Natural& B = base.value();

  TruncatedSeries dilated(order);
  {
    const Natural pj = ipow(B, static_cast<unsigned long long>(j));
    for (std::size_t n = 0; Natural(n) * pj <= order; ++n)
      dilated.at((Natural(n) * pj).convert_to<std::size_t>()) =
          LaurentPoly::monomial(1, detail::to_ll(digit_sum(n, base)));
  }

  TruncatedSeries tail_product = TruncatedSeries::one(order);
  {
    Natural pw = ipow(B, static_cast<unsigned long long>(j));
    for (; pw <= order; pw *= B) {
      tail_product *= geometric(1, detail::to_ll(pw), order);
      const Natural up = pw * B;
      if (up <= order)
        detail::times_one_minus(tail_product, detail::to_ll(B), up.convert_to<std::size_t>());
    }
  }

  TruncatedSeries peeled = two_variable_sum(base, order);
  {
    Natural pw = 1;
    for (long long i = 0; i < j; ++i, pw *= B) {
      if (pw <= order)
        detail::times_one_minus(peeled, 1, pw.convert_to<std::size_t>());
      const Natural up = pw * B;
      if (up <= order)
        peeled *= geometric(detail::to_ll(B), up.convert_to<long long>(), order);
    }
  }

  auto div = detail::compare_series(dilated, tail_product, "dilated-vs-product-tail");
  if (!div) div = detail::compare_series(dilated, peeled, "dilated-vs-peeled-sum");
  return detail::finish(std::move(spec), timer, std::move(div));
}

// Correction terms of all-ones sums: sum_n q^n z^{correction_repeat(1, n)}
// against its product form; also pins the exponent to n - digit_sum(n).
inline VerificationReport verify_chat_ones_two_variable(const Base& base, std::size_t order) {
  detail::Timer timer;
  IdentitySpec spec = detail::make_spec(ids::chat_ones_two_variable, base, order);
  const Natural& B = base.value();

  std::optional<Divergence> div;
  TruncatedSeries lhs(order);
  for (std::size_t n = 0; n <= order; ++n) {
    const Natural e = correction_repeat(1, n, base);
    const Natural closed = Natural(n) - digit_sum(n, base);
    if (e != closed && !div)
      div = Divergence{n, LaurentPoly::monomial(1, detail::to_ll(e)),
                       LaurentPoly::monomial(1, detail::to_ll(closed)), "exponent-closed-form"};
    lhs.at(n) = LaurentPoly::monomial(1, detail::to_ll(e));
  }

  if (!div) {
    TruncatedSeries rhs = TruncatedSeries::one(order);
    for (Natural pw = 1; pw <= order; pw *= B) {
      rhs *= geometric(detail::to_ll(pw - 1), detail::to_ll(pw), order);
      const Natural up = pw * B;
      if (up <= order)
        detail::times_one_minus(rhs, detail::to_ll(B * (pw - 1)), up.convert_to<std::size_t>());
    }
    div = detail::compare_series(lhs, rhs, "sum-vs-product");
  }
  return detail::finish(std::move(spec), timer, std::move(div));
}

// Squared identity: sum_n q^n z^{s(n)} sum_{k=0}^{n} z^{correction(n-k, k)}
// equals the square of the product form (and of the sum form). An optional
// z-degree cap truncates both sides identically for large runs.
inline VerificationReport verify_squared(const Base& base, std::size_t order,
                                         std::optional<long long> z_cap = std::nullopt) {
  detail::Timer timer;
  IdentitySpec spec = detail::make_spec(ids::squared, base, order);
  spec.z_cap = z_cap;

  TruncatedSeries lhs(order);
  std::vector<Natural> pair{0, 0};
  for (std::size_t n = 0; n <= order; ++n) {
    LaurentPoly inner;
    for (std::size_t k = 0; k <= n; ++k) {
      pair[0] = n - k;
      pair[1] = k;
      inner.add_term(detail::to_ll(add_with_trace(pair, base).correction), 1);
    }
    lhs.at(n) = LaurentPoly::monomial(1, detail::to_ll(digit_sum(n, base))) * inner;
  }

  const TruncatedSeries prod = two_variable_product(base, order);
  const TruncatedSeries sum = two_variable_sum(base, order);
  TruncatedSeries rhs_prod = prod * prod;
  TruncatedSeries rhs_sum = sum * sum;
  if (z_cap) {
    lhs = detail::cap_z_degree(lhs, *z_cap);
    rhs_prod = detail::cap_z_degree(rhs_prod, *z_cap);
    rhs_sum = detail::cap_z_degree(rhs_sum, *z_cap);
  }
  auto div = detail::compare_series(lhs, rhs_prod, "sum-vs-product-squared");
  if (!div) div = detail::compare_series(lhs, rhs_sum, "sum-vs-sum-squared");
  return detail::finish(std::move(spec), timer, std::move(div));
}

// Telescoped single-sum form of the two-variable product.
inline VerificationReport verify_hypergeometric(const Base& base, std::size_t order) {
  detail::Timer timer;
  IdentitySpec spec = detail::make_spec(ids::hypergeometric, base, order);
  const Natural& B = base.value();

  const TruncatedSeries lhs = two_variable_product(base, order);

  TruncatedSeries rhs = geometric(1, 1, order);
  TruncatedSeries inner(order);
  bool any_term = false;
  {
    TruncatedSeries numer = TruncatedSeries::one(order);
    TruncatedSeries denom = TruncatedSeries::one(order);
    detail::times_one_minus(denom, 1, 1);  // (1 - z q^{B^0})
    Natural pw = B;                        // B^n
    for (; pw <= order; pw *= B) {
      // entering term n: numer gains factor j = n-1, denom gains factor j = n
      const Natural below = pw / B;
      if (below <= order)
        detail::times_one_minus(numer, detail::to_ll(B), below.convert_to<std::size_t>());
      detail::times_one_minus(denom, 1, pw.convert_to<std::size_t>());
      inner += (numer * reciprocal(denom)).shift_q(pw.convert_to<std::size_t>());
      any_term = true;
    }
  }
  if (any_term) {
    LaurentPoly z_minus_zB = LaurentPoly::monomial(1, 1);
    z_minus_zB.add_term(detail::to_ll(B), -1);
    rhs += geometric(detail::to_ll(B), 1, order) * inner * z_minus_zB;
  }
  auto div = detail::compare_series(lhs, rhs, "product-vs-telescoped-sum");
  return detail::finish(std::move(spec), timer, std::move(div));
}

// Digit-sum generating function, plus the two working steps it rests on:
// the z-logarithmic derivative of the two-variable identity, and the
// dilation relation for the bivariate Lambert-style kernel at z = 1.
inline VerificationReport verify_sB_generating_function(const Base& base, std::size_t order) {
  detail::Timer timer;
  IdentitySpec spec = detail::make_spec(ids::sB_generating_function, base, order);
  const Natural& B = base.value();
  const long long Bll = B <= order ? detail::to_ll(B) : 0;  // only used when B <= order

  const TruncatedSeries inv1q = geometric(0, 1, order);
  const TruncatedSeries LB = lambert_series(base, order);
  const TruncatedSeries biv = lambert_bivariate(base, order);

  // (a) sum_n digit_sum(n) q^n = q/(1-q)^2 - (B-1)/(1-q) * L_B.
  TruncatedSeries lhs_a(order);
  for (std::size_t n = 0; n <= order; ++n)
    lhs_a.at(n) = LaurentPoly::constant(digit_sum(n, base));
  const TruncatedSeries rhs_a =
      (inv1q * inv1q).shift_q(1) - inv1q * LB * LaurentPoly::constant(B - 1);
  auto div = detail::compare_series(lhs_a, rhs_a, "digit-sum-gf");

  // (b) z d/dz of the two-variable identity:
  //     sum_n s(n) q^n z^{s(n)} = product * (z*K(z;q) - B z^B K(z^B; q^B))
  if (!div) {
    const TruncatedSeries lhs_b = z_derivative(two_variable_sum(base, order));
    TruncatedSeries bracket = biv * LaurentPoly::monomial(1, 1);
    if (B <= order) {
      const TruncatedSeries dilated =
          substitute_monomial(biv, MonomialImage{Bll, 0}, MonomialImage{0, Bll});
      bracket -= dilated * LaurentPoly::monomial(Integer(B), Bll);
    }
    // when B > order the dilated kernel has no terms at or below the order
    const TruncatedSeries rhs_b = two_variable_product(base, order) * bracket;
    div = detail::compare_series(lhs_b, rhs_b, "z-derivative-identity");
  }

  // (c) K(1;q) - B K(1;q^B) = q/(1-q) - (B-1) L_B.
  if (!div) {
    const TruncatedSeries at_one = eval_z_at_one(biv);
    TruncatedSeries lhs_c = at_one;
    if (B <= order)
      lhs_c -= substitute_q_power(at_one, Bll) * LaurentPoly::constant(Integer(B));
    const TruncatedSeries rhs_c = inv1q.shift_q(1) - LB * LaurentPoly::constant(B - 1);
    div = detail::compare_series(lhs_c, rhs_c, "kernel-dilation");
  }
  return detail::finish(std::move(spec), timer, std::move(div));
}

// sum_{n >= 1} correction({n-1, 1}) q^n = (B-1) L_B, with the closed form
// correction_nm1 required to reproduce the trace-built series exactly.
inline VerificationReport verify_shiftcor(const Base& base, std::size_t order) {
  detail::Timer timer;
  IdentitySpec spec = detail::make_spec(ids::shiftcor, base, order);

  TruncatedSeries traced(order);
  TruncatedSeries fast(order);
  std::vector<Natural> pair{0, 1};
  for (std::size_t n = 1; n <= order; ++n) {
    pair[0] = Natural(n) - 1;
    traced.at(n) = LaurentPoly::constant(add_with_trace(pair, base).correction);
    fast.at(n) = LaurentPoly::constant(correction_nm1(n, base));
  }
  auto div = detail::compare_series(traced, fast, "closed-form-vs-trace");
  if (!div) {
    const TruncatedSeries rhs =
        lambert_series(base, order) * LaurentPoly::constant(base.value() - 1);
    div = detail::compare_series(traced, rhs, "series-vs-lambert");
  }
  return detail::finish(std::move(spec), timer, std::move(div));
}

// sum_{n >= 1} correction_repeat(1, n) q^n = (B-1)/(1-q) * L_B.
inline VerificationReport verify_chat_ones_gf(const Base& base, std::size_t order) {
  detail::Timer timer;
  IdentitySpec spec = detail::make_spec(ids::chat_ones_gf, base, order);

  TruncatedSeries lhs(order);
  for (std::size_t n = 1; n <= order; ++n)
    lhs.at(n) = LaurentPoly::constant(correction_repeat(1, n, base));
  const TruncatedSeries rhs = geometric(0, 1, order) * lambert_series(base, order) *
                              LaurentPoly::constant(base.value() - 1);
  auto div = detail::compare_series(lhs, rhs, "sum-vs-lambert");
  return detail::finish(std::move(spec), timer, std::move(div));
}

// sum_{n >= 1} correction_repeat(a, n) q^n
//   = q/(1-q) * sum_{n >= 0} correction({a n, a}) q^n.
inline VerificationReport verify_chat_repeat(const Natural& a, const Base& base,
                                             std::size_t order) {
  if (a < 1) throw std::invalid_argument("verify_chat_repeat: a must be positive");
  detail::Timer timer;
  IdentitySpec spec = detail::make_spec(ids::chat_repeat, base, order);
  spec.repeat_a = a;

  TruncatedSeries lhs(order);
  for (std::size_t n = 1; n <= order; ++n)
    lhs.at(n) = LaurentPoly::constant(correction_repeat(a, n, base));

  TruncatedSeries pairwise(order);
  std::vector<Natural> pair{0, a};
  for (std::size_t n = 0; n <= order; ++n) {
    pair[0] = a * n;
    pairwise.at(n) = LaurentPoly::constant(add_with_trace(pair, base).correction);
  }
  const TruncatedSeries rhs = geometric(0, 1, order).shift_q(1) * pairwise;
  auto div = detail::compare_series(lhs, rhs, "repeat-vs-pairwise");
  return detail::finish(std::move(spec), timer, std::move(div));
}

// Lambert transform of the digit-sum series: expanding
// sum_{n >= 1} digit_sum(n) q^n / (1 - q^n) by divisor sieving must match
// the termwise divisor digit sums found by trial division.
inline VerificationReport verify_lambert_transform(const Base& base, std::size_t order) {
  detail::Timer timer;
  IdentitySpec spec = detail::make_spec(ids::lambert_transform, base, order);

  TruncatedSeries lhs(order);
  for (std::size_t n = 1; n <= order; ++n) {
    const Natural s = digit_sum(n, base);
    for (std::size_t m = n; m <= order; m += n) lhs.at(m).add_term(0, s);
  }
  TruncatedSeries rhs(order);
  for (std::size_t n = 1; n <= order; ++n)
    rhs.at(n) = LaurentPoly::constant(divisor_digit_sum(n, base));
  auto div = detail::compare_series(lhs, rhs, "sieve-vs-trial-division");
  return detail::finish(std::move(spec), timer, std::move(div));
}

}  // namespace digitlab

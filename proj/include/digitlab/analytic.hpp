#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "digitlab/digit_core.hpp"

namespace digitlab {

using Complex = std::complex<double>;

namespace detail {

// Compensated (Kahan) accumulation; componentwise on re/im.
struct KahanSum {
  Complex sum{0.0, 0.0};
  Complex carry{0.0, 0.0};
  void add(const Complex& v) {
    const Complex y = v - carry;
    const Complex t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

// b^e for positive real b, complex e.
inline Complex cpow(double b, const Complex& e) {
  if (e.imag() == 0.0) return {std::pow(b, e.real()), 0.0};
  return std::exp(e * std::log(b));
}

// n^{-s} for n >= 1.
inline Complex pow_ns(double n, const Complex& s) { return cpow(n, -s); }

// z^k for integer k by binary powering (exact sign handling for real z).
inline Complex ipow_complex(Complex z, long long k) {
  const bool invert = k < 0;
  unsigned long long e = invert ? -static_cast<unsigned long long>(k) : k;
  Complex r{1.0, 0.0};
  while (e != 0) {
    if (e & 1u) r *= z;
    e >>= 1;
    if (e != 0) z *= z;
  }
  return invert ? Complex{1.0, 0.0} / r : r;
}

// q^e for real e > 0 with underflow clamped to exactly 0 (|q| < 1, so a
// huge exponent is a genuine zero to double precision, and the clamp keeps
// NaNs out of exp's imaginary part).
inline Complex qpow(const Complex& q, double e) {
  const double mag_log = e * std::log(std::abs(q));
  if (mag_log < -745.0) return {0.0, 0.0};
  return std::exp(e * std::log(q));
}

// exp(e * lq), i.e. q^e driven by one fixed branch lq of log q, with
// underflow clamped to exactly 0. Powers composed through a shared branch
// satisfy (q^a)^b = q^{ab} identically, which principal-branch powers of
// intermediate values do not once a * Arg(q) leaves (-pi, pi].
inline Complex exp_scaled(double e, const Complex& lq) {
  const Complex s = e * lq;
  if (s.real() < -745.0) return {0.0, 0.0};
  return std::exp(s);
}

inline double to_double(const Natural& n) { return n.convert_to<double>(); }

inline std::uint64_t to_u64(const Natural& n) {
  if (n < 0 || n > std::numeric_limits<std::uint64_t>::max())
    throw std::overflow_error("value does not fit uint64");
  return n.convert_to<std::uint64_t>();
}

}  // namespace detail

// --- Zeta kernels --------------------------------------------------------

// Euler-Maclaurin configuration: direct_terms is the summation cutoff, and
// bernoulli_terms the number of correction terms (k = 1..K uses the
// Bernoulli numbers through index 2K). The defaults keep the absolute error
// below 1e-12 for 1.5 <= Re(s) <= 50, |Im(s)| <= 50.
struct ZetaParams {
  unsigned direct_terms = 50;
  unsigned bernoulli_terms = 8;
};

namespace detail {
// B_{2k} / (2k)! for k = 1..8.
inline constexpr double kBernoulliOverFactorial[] = {
    1.0 / 12,
    -1.0 / 720,
    1.0 / 30240,
    -1.0 / 1209600,
    1.0 / 47900160,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
};
}  // namespace detail

// Hurwitz zeta(s, x) = sum_{n >= 0} (n + x)^{-s} for Re(s) > 1, 0 < x <= 1:
// direct summation to the cutoff, then the Euler-Maclaurin tail
//   w^{1-s}/(s-1) + w^{-s}/2 + sum_k B_{2k}/(2k)! (s)_{2k-1} w^{-s-2k+1}
// at w = cutoff + x. Analytic continuation past Re(s) = 1 is out of scope.
inline Complex hurwitz_zeta(const Complex& s, double x, const ZetaParams& params = {}) {
  if (!(s.real() > 1.0))
    throw std::domain_error("hurwitz_zeta: requires Re(s) > 1");
  if (!(x > 0.0) || x > 1.0)
    throw std::domain_error("hurwitz_zeta: requires 0 < x <= 1");
  const unsigned K =
      std::min<unsigned>(params.bernoulli_terms,
                         sizeof(detail::kBernoulliOverFactorial) / sizeof(double));
  detail::KahanSum acc;
  for (unsigned n = 0; n < params.direct_terms; ++n) acc.add(detail::cpow(n + x, -s));
  const double w = params.direct_terms + x;
  const Complex ws = detail::cpow(w, -s);
  acc.add(ws * w / (s - 1.0));
  acc.add(ws * 0.5);
  Complex poch = s;            // s (s+1) ... (s+2k-2)
  Complex wpow = ws / w;       // w^{-s-2k+1}
  for (unsigned k = 1; k <= K; ++k) {
    acc.add(detail::kBernoulliOverFactorial[k - 1] * poch * wpow);
    if (k < K) {
      poch *= (s + Complex(2.0 * k - 1.0)) * (s + Complex(2.0 * k));
      wpow /= w * w;
    }
  }
  return acc.sum;
}

inline Complex riemann_zeta(const Complex& s, const ZetaParams& params = {}) {
  return hurwitz_zeta(s, 1.0, params);
}

// --- Dirichlet partial sums ----------------------------------------------

enum class BoundKind {
  rigorous,   // proven tail bound: a failure is a defect
  tolerance,  // fixed accuracy contract: a failure is a defect
  heuristic,  // plausible estimate: a failure is reported but not fatal
};

inline const char* to_string(BoundKind k) {
  switch (k) {
    case BoundKind::rigorous: return "rigorous";
    case BoundKind::tolerance: return "tolerance";
    default: return "heuristic";
  }
}

// One numeric comparison: passed iff |lhs - rhs| <= bound.
struct NumericCheck {
  std::string id;
  Complex lhs{0.0, 0.0};
  Complex rhs{0.0, 0.0};
  double abs_error = 0.0;
  double bound = 0.0;
  BoundKind bound_kind = BoundKind::rigorous;
  bool passed = false;
  std::string detail;
};

namespace detail {
inline NumericCheck make_check(std::string id, Complex lhs, Complex rhs, double bound,
                               BoundKind kind, std::string detail_text = {}) {
  NumericCheck c{std::move(id), lhs, rhs, std::abs(lhs - rhs), bound, kind, false,
                 std::move(detail_text)};
  c.passed = c.abs_error <= c.bound;
  return c;
}
}  // namespace detail

struct DirichletPartial {
  Complex value{0.0, 0.0};
  double tail_bound = 0.0;
};

// sum_{n=1}^{terms} coeff(n) / n^s with a caller-supplied bound on the
// discarded tail. coeff may return any arithmetic type convertible to
// double (Natural included); zero coefficients never touch pow.
template <typename CoeffFn, typename TailFn>
DirichletPartial dirichlet_partial(CoeffFn&& coeff, const Complex& s, std::uint64_t terms,
                                   TailFn&& tail_bound) {
  detail::KahanSum acc;
  for (std::uint64_t n = 1; n <= terms; ++n) {
    const double c = [&]() -> double {
      if constexpr (std::is_same_v<std::decay_t<decltype(coeff(n))>, Natural>)
        return detail::to_double(coeff(n));
      else
        return static_cast<double>(coeff(n));
    }();
    if (c == 0.0) continue;
    acc.add(c * detail::pow_ns(static_cast<double>(n), s));
  }
  return {acc.sum, tail_bound(terms, s)};
}

// Largest e with base^e dividing n, in machine arithmetic.
namespace detail {
inline std::uint64_t valuation_u64(std::uint64_t n, std::uint64_t base) {
  std::uint64_t v = 0;
  while (n % base == 0) {
    n /= base;
    ++v;
  }
  return v;
}
}  // namespace detail

// sum_n correction({n-1, 1})/n^s = (B-1)/(B^s - 1) * zeta(s).
// The coefficient is (B-1) * valuation_B(n) <= (B-1) log_B n, which gives
// the rigorous tail bound
//   (B-1)/ln B * N^{1-sigma} * (ln N/(sigma-1) + 1/(sigma-1)^2),
// the integral of (B-1) log_B(x) x^{-sigma} from N (integrand decreasing).
// The bound also carries the kernel's 1e-12 tolerance and a roundoff cushion.
inline NumericCheck verify_dirichlet_chat(const Base& base, const Complex& s,
                                          std::uint64_t terms) {
  if (!(s.real() > 1.0))
    throw std::domain_error("verify_dirichlet_chat: requires Re(s) > 1");
  if (terms < 2) throw std::invalid_argument("verify_dirichlet_chat: need at least 2 terms");
  const std::uint64_t B = detail::to_u64(base.value());
  const double Bd = static_cast<double>(B);
  const double sigma = s.real();

  auto coeff = [&](std::uint64_t n) -> std::uint64_t {
    return n % B == 0 ? (B - 1) * detail::valuation_u64(n, B) : 0;
  };
  auto tail = [&](std::uint64_t N, const Complex& sv) {
    const double sg = sv.real();
    return (Bd - 1.0) / std::log(Bd) * std::pow(static_cast<double>(N), 1.0 - sg) *
           (std::log(static_cast<double>(N)) / (sg - 1.0) + 1.0 / ((sg - 1.0) * (sg - 1.0)));
  };
  const DirichletPartial lhs = dirichlet_partial(coeff, s, terms, tail);

  const Complex Bs = detail::cpow(Bd, s);
  const Complex factor = (Bd - 1.0) / (Bs - 1.0);
  const Complex rhs = factor * riemann_zeta(s);

  const double bound =
      lhs.tail_bound + 1e-12 * std::abs(factor) + 1e-13 * (1.0 + std::abs(lhs.value));
  std::ostringstream d;
  d << "tail=" << lhs.tail_bound << " sigma=" << sigma;
  return detail::make_check("dir-chat", lhs.value, rhs, bound, BoundKind::rigorous, d.str());
}

// sum_n floor(n/B)/n^s = zeta(s-1)/B - B^{-(s+1)} sum_{k=1}^{B-1} k zeta(s, k/B).
// floor(n/B) <= n/B gives the rigorous tail bound N^{2-sigma} / (B (sigma-2)).
inline NumericCheck verify_dirichlet_carry(const Base& base, const Complex& s,
                                           std::uint64_t terms) {
  if (!(s.real() > 2.0))
    throw std::domain_error("verify_dirichlet_carry: requires Re(s) > 2");
  if (terms < 2) throw std::invalid_argument("verify_dirichlet_carry: need at least 2 terms");
  const std::uint64_t B = detail::to_u64(base.value());
  const double Bd = static_cast<double>(B);

  auto coeff = [&](std::uint64_t n) -> std::uint64_t { return n / B; };
  auto tail = [&](std::uint64_t N, const Complex& sv) {
    return std::pow(static_cast<double>(N), 2.0 - sv.real()) / (Bd * (sv.real() - 2.0));
  };
  const DirichletPartial lhs = dirichlet_partial(coeff, s, terms, tail);

  detail::KahanSum hurwitz_part;
  for (std::uint64_t k = 1; k < B; ++k)
    hurwitz_part.add(static_cast<double>(k) * hurwitz_zeta(s, static_cast<double>(k) / Bd));
  const Complex rhs =
      riemann_zeta(s - 1.0) / Bd - detail::cpow(Bd, -(s + 1.0)) * hurwitz_part.sum;

  const double kernel_allowance =
      1e-12 * (1.0 / Bd + std::pow(Bd, -s.real() - 1.0) * 0.5 * Bd * (Bd - 1.0));
  const double bound =
      lhs.tail_bound + kernel_allowance + 1e-13 * (1.0 + std::abs(lhs.value));
  std::ostringstream d;
  d << "tail=" << lhs.tail_bound << " kernel=" << kernel_allowance;
  return detail::make_check("dir-carry", lhs.value, rhs, bound, BoundKind::rigorous, d.str());
}

// Truncated-convolution cross-check:
//   zeta(s) * sum_{n<=N} digit_sum(n)/n^s  vs  sum_{n<=N} divisor_digit_sum(n)/n^s,
// the divisor sums built by sieving. Truncating the two sides does not
// commute with the product, so the bound is an estimate from the two tails
// (digit_sum(n) <= (B-1)(log_B n + 1), divisor_digit_sum(n) <= n (1 + ln n))
// and is flagged heuristic.
inline NumericCheck verify_dirichlet_convolution(const Base& base, const Complex& s,
                                                 std::uint64_t terms) {
  if (!(s.real() > 2.0))
    throw std::domain_error("verify_dirichlet_convolution: requires Re(s) > 2");
  if (terms < 2)
    throw std::invalid_argument("verify_dirichlet_convolution: need at least 2 terms");
  const double Bd = detail::to_double(base.value());
  const double sigma = s.real();
  const double N = static_cast<double>(terms);

  std::vector<double> digit_sums(terms + 1, 0.0);
  for (std::uint64_t n = 1; n <= terms; ++n)
    digit_sums[n] = detail::to_double(digit_sum(n, base));
  std::vector<double> divisor_sums(terms + 1, 0.0);
  for (std::uint64_t d = 1; d <= terms; ++d)
    for (std::uint64_t m = d; m <= terms; m += d) divisor_sums[m] += digit_sums[d];

  auto no_tail = [](std::uint64_t, const Complex&) { return 0.0; };
  const Complex digit_part =
      dirichlet_partial([&](std::uint64_t n) { return digit_sums[n]; }, s, terms, no_tail).value;
  const Complex divisor_part =
      dirichlet_partial([&](std::uint64_t n) { return divisor_sums[n]; }, s, terms, no_tail)
          .value;

  const Complex zs = riemann_zeta(s);
  const Complex lhs = zs * digit_part;

  const double log_term = std::log(N);
  const double tail_digit =
      (Bd - 1.0) * std::pow(N, 1.0 - sigma) *
      ((log_term / std::log(Bd) + 1.0) / (sigma - 1.0) + 1.0 / (std::log(Bd) * (sigma - 1.0) * (sigma - 1.0)));
  const double tail_divisor = std::pow(N, 2.0 - sigma) *
                              ((1.0 + log_term) / (sigma - 2.0) + 1.0 / ((sigma - 2.0) * (sigma - 2.0)));
  const double bound = std::abs(zs) * tail_digit + tail_divisor + 1e-12 * std::abs(digit_part);
  std::ostringstream d;
  d << "tail_digit=" << tail_digit << " tail_divisor=" << tail_divisor;
  return detail::make_check("dir-convolution", lhs, divisor_part, bound, BoundKind::heuristic,
                            d.str());
}

// For B > N every n <= N is a single digit, so the digit-sum partial sum
// collapses to sum n^{1-s} exactly (identical floating point), and for
// B <= N it sits strictly below that ceiling. Real s only.
inline NumericCheck verify_limit_large_B(double s, const std::vector<std::uint64_t>& bases,
                                         std::uint64_t terms) {
  if (!(s > 1.0)) throw std::domain_error("verify_limit_large_B: requires s > 1");
  if (bases.empty()) throw std::invalid_argument("verify_limit_large_B: need at least one base");
  const Complex sc{s, 0.0};
  auto no_tail = [](std::uint64_t, const Complex&) { return 0.0; };

  auto partial_for = [&](const Base& b) {
    return dirichlet_partial(
               [&](std::uint64_t n) { return digit_sum(n, b); }, sc, terms, no_tail)
        .value;
  };
  // Same accumulation path with the identity coefficient: bitwise comparable.
  const Complex ceiling =
      dirichlet_partial([](std::uint64_t n) { return Natural(n); }, sc, terms, no_tail).value;

  bool ok = true;
  double max_exact_dev = 0.0;
  Complex last{0.0, 0.0};
  std::ostringstream d;
  d << "ceiling=" << ceiling.real();
  for (const std::uint64_t b : bases) {
    const Complex p = partial_for(Base(Natural(b)));
    last = p;
    if (b > terms) {
      max_exact_dev = std::max(max_exact_dev, std::abs(p - ceiling));
      if (p != ceiling) ok = false;
      d << " B=" << b << ":exact";
    } else {
      if (!(p.real() < ceiling.real())) ok = false;
      d << " B=" << b << ":below(" << (ceiling.real() - p.real()) << ")";
    }
  }
  NumericCheck c = detail::make_check("dir-limit", last, ceiling, 0.0, BoundKind::rigorous,
                                      d.str());
  c.abs_error = max_exact_dev;
  c.passed = ok && max_exact_dev == 0.0;
  return c;
}

// --- Bilateral window sums ------------------------------------------------

// One term of the bilateral kernel, z_pow * q_pow / (1 - x * q_pow), over
// any field-like scalar (complex for numerics, exact rationals in tests).
// The caller is responsible for keeping 1 - x * q_pow away from zero.
template <typename Scalar>
Scalar bilateral_term(const Scalar& x, const Scalar& z_pow, const Scalar& q_pow) {
  return z_pow * q_pow / (Scalar(1) - x * q_pow);
}

// Window evaluation of sum_{n in Z} z^n q^{B^n} / (1 - x q^{B^n}) over
// |n| <= window, with the magnitudes of the two edge terms reported so the
// caller can see how far the window has converged. B is a positive real
// parameter distinct from 1; the series needs |q| < 1 and |z| > B (for
// B > 1; |z| < B when B < 1). q^{B^n} underflow is clamped to exact 0.
struct BilateralValue {
  Complex value{0.0, 0.0};
  double head_term_mag = 0.0;  // |term| at n = -window
  double tail_term_mag = 0.0;  // |term| at n = +window
};

namespace detail {

// Window evaluation with q given by a fixed branch of its logarithm, so
// callers can substitute q -> q^{B^r} by scaling log_q and keep every power
// on the same branch.
inline BilateralValue bilateral_core(double base, const Complex& x, const Complex& z,
                                     const Complex& log_q, int window) {
  if (!(base > 0.0) || base == 1.0)
    throw std::domain_error("bilateral_Lhat: base must be positive and distinct from 1");
  if (!(log_q.real() < 0.0)) throw std::domain_error("bilateral_Lhat: requires |q| < 1");
  if (base > 1.0 ? !(std::abs(z) > base) : !(std::abs(z) < base))
    throw std::domain_error("bilateral_Lhat: z outside the convergence domain");
  if (window < 1) throw std::invalid_argument("bilateral_Lhat: window must be positive");

  BilateralValue out;
  KahanSum acc;
  for (int n = -window; n <= window; ++n) {
    const Complex w = exp_scaled(std::pow(base, n), log_q);
    if (std::abs(1.0 - x * w) <= 1e-12)
      throw std::domain_error("bilateral_Lhat: parameters sit on a kernel pole");
    const Complex term = bilateral_term(x, ipow_complex(z, n), w);
    if (n == -window) out.head_term_mag = std::abs(term);
    if (n == window) out.tail_term_mag = std::abs(term);
    acc.add(term);
  }
  out.value = acc.sum;
  return out;
}

}  // namespace detail

inline BilateralValue bilateral_Lhat(double base, const Complex& x, const Complex& z,
                                     const Complex& q, int window) {
  if (!(std::abs(q) < 1.0) || q == Complex{0.0, 0.0})
    throw std::domain_error("bilateral_Lhat: requires 0 < |q| < 1");
  return detail::bilateral_core(base, x, z, std::log(q), window);
}

// Three exact symmetries of the bilateral sum, each checked at the window:
//   (i)   base -> 1/base, z -> 1/z reverses the window termwise;
//   (ii)  q -> q^{B^r} shifts indices by r after multiplying by z^r;
//   (iii) base -> B^t, z -> z^t, q -> q^{B^r} picks out indices = r mod t.
// Each residual must stay below the fixed tolerance; the window value must
// also be stable (below 1e-12) under doubling the window.
inline NumericCheck verify_bilateral_equations(double base, const Complex& x, const Complex& z,
                                               const Complex& q, int r, int t, int window) {
  if (t == 0) throw std::invalid_argument("verify_bilateral_equations: t must be nonzero");
  if (!(std::abs(q) < 1.0) || q == Complex{0.0, 0.0})
    throw std::domain_error("verify_bilateral_equations: requires 0 < |q| < 1");

  // One branch of log q drives every power below; q -> q^{B^r} is the exact
  // rescaling B^r * log q, so the equations hold for any admissible q
  // (negative and complex values included).
  const Complex lq = std::log(q);
  const Complex lq_shifted = std::pow(base, r) * lq;
  if (!(lq_shifted.real() > -575.0) || !(lq_shifted.real() < 0.0))
    throw std::domain_error("verify_bilateral_equations: q^{B^r} leaves the working range");

  const BilateralValue v = detail::bilateral_core(base, x, z, lq, window);

  // (i) reflection
  const Complex refl = detail::bilateral_core(1.0 / base, x, 1.0 / z, lq, window).value;
  const double res_i = std::abs(refl - v.value);

  // (ii) index shift
  const Complex shifted =
      detail::ipow_complex(z, r) * detail::bilateral_core(base, x, z, lq_shifted, window).value;
  const double res_ii = std::abs(shifted - v.value);

  // (iii) congruence-class slice: compare against the directly assembled
  // subsum over indices m = r (mod |t|) within the image of the window.
  const int ta = std::abs(t);
  const Complex sliced =
      detail::ipow_complex(z, r) * detail::bilateral_core(std::pow(base, t), x,
                                                          detail::ipow_complex(z, t),
                                                          lq_shifted, window)
                                       .value;
  detail::KahanSum clazz;
  const long long reach = static_cast<long long>(ta) * window + std::abs(r);
  for (long long m = -reach; m <= reach; ++m) {
    if (((m - r) % ta + ta) % ta != 0) continue;
    const Complex w = detail::exp_scaled(std::pow(base, static_cast<double>(m)), lq);
    if (std::abs(1.0 - x * w) <= 1e-12)
      throw std::domain_error("verify_bilateral_equations: parameters sit on a kernel pole");
    clazz.add(bilateral_term(x, detail::ipow_complex(z, m), w));
  }
  const double res_iii = std::abs(sliced - clazz.sum);

  const double stability =
      std::abs(detail::bilateral_core(base, x, z, lq, 2 * window).value - v.value);

  const double worst = std::max({res_i, res_ii, res_iii});
  std::ostringstream d;
  d << "eq-i=" << res_i << " eq-ii=" << res_ii << " eq-iii=" << res_iii
    << " window-doubling=" << stability << " edge-terms=" << v.head_term_mag << ","
    << v.tail_term_mag;
  NumericCheck c = detail::make_check("bilateral-eqs", v.value, refl, 1e-10,
                                      BoundKind::tolerance, d.str());
  c.abs_error = worst;
  c.passed = worst <= 1e-10 && stability < 1e-12;
  return c;
}

// Numeric spot check of the dilation identity for negative shifts j < 0:
// with w = q^{B^j}, the digit-sum series at w must match both the product
// form in w and the j "peeled" factors applied to the series at q.
inline NumericCheck verify_shift_negative_j(const Base& base, long long j, const Complex& q,
                                            const Complex& z) {
  if (j >= 0) throw std::invalid_argument("verify_shift_negative_j: requires j < 0");
  if (!(std::abs(q) < 1.0))
    throw std::domain_error("verify_shift_negative_j: requires |q| < 1");
  const double Bd = detail::to_double(base.value());
  const Complex w = detail::qpow(q, std::pow(Bd, static_cast<double>(j)));
  if (!(std::abs(w) < 1.0))
    throw std::domain_error("verify_shift_negative_j: q^{B^j} must stay inside the unit disk");

  // sum_{n >= 0} u^n z^{digit_sum(n)}, summed until the terms are dust.
  auto series_at = [&](const Complex& u) {
    detail::KahanSum acc;
    Complex un{1.0, 0.0};
    for (std::uint64_t n = 0; n < 200000; ++n) {
      if (n > 0) un *= u;
      if (std::abs(un) < 1e-20 && n > 8) break;
      acc.add(un * detail::ipow_complex(z, detail::to_u64(digit_sum(n, base))));
    }
    return acc.sum;
  };
  // prod_{i >= 0} (1 - z^B u^{B^{i+1}}) / (1 - z u^{B^i}).
  auto product_at = [&](const Complex& u) {
    Complex prod{1.0, 0.0};
    const Complex zB = detail::ipow_complex(z, detail::to_u64(base.value()));
    double e = 1.0;
    for (int i = 0; i < 2000; ++i) {
      const Complex ue = detail::qpow(u, e);
      const Complex ueB = detail::qpow(u, e * Bd);
      prod *= (1.0 - zB * ueB) / (1.0 - z * ue);
      if (std::abs(ue) < 1e-20) break;
      e *= Bd;
    }
    return prod;
  };

  const Complex lhs = series_at(w);
  const Complex mid = product_at(w);

  // peel factors i = j..-1: q^{B^i} = w^{B^{i-j}} uses only integer powers.
  Complex prefix{1.0, 0.0};
  const Complex zB = detail::ipow_complex(z, detail::to_u64(base.value()));
  double e = 1.0;  // B^{i-j}
  for (long long i = j; i < 0; ++i) {
    prefix *= (1.0 - zB * detail::qpow(w, e * Bd)) / (1.0 - z * detail::qpow(w, e));
    e *= Bd;
  }
  const Complex peeled = prefix * series_at(q);

  const double res1 = std::abs(lhs - mid);
  const double res2 = std::abs(lhs - peeled);
  std::ostringstream d;
  d << "product=" << res1 << " peeled=" << res2 << " |w|=" << std::abs(w);
  NumericCheck c = detail::make_check("shift-negative-j", lhs, mid, 1e-9,
                                      BoundKind::tolerance, d.str());
  c.abs_error = std::max(res1, res2);
  c.passed = c.abs_error <= c.bound;
  return c;
}

}  // namespace digitlab

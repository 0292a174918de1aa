#include <catch2/catch_amalgamated.hpp>

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "digitlab/analytic.hpp"
#include "digitlab/catalog.hpp"

using digitlab::Base;
using digitlab::Complex;
using digitlab::Natural;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kApery = 1.2020569031595942854;  // zeta(3)

// Direct-summation oracle for the Hurwitz zeta: N explicit terms, then the
// integral remainder with midpoint correction,
//   sum_{n>N} (n+x)^{-s} = w^{1-s}/(s-1) - w^{-s}/2 + err,  w = N + x,
// with |err| <= |s| w^{-Re(s)-1} / 12.
Complex hurwitz_oracle(const Complex& s, double x, std::uint64_t N) {
  digitlab::detail::KahanSum acc;
  for (std::uint64_t n = 0; n <= N; ++n) acc.add(digitlab::detail::cpow(n + x, -s));
  const double w = static_cast<double>(N) + x;
  const Complex ws = digitlab::detail::cpow(w, -s);
  return acc.sum + ws * w / (s - 1.0) - ws * 0.5;
}

}  // namespace

TEST_CASE("zeta kernel accuracy at classical points") {
  CHECK(std::abs(digitlab::riemann_zeta({2.0, 0.0}) - Complex{kPi * kPi / 6.0, 0.0}) < 1e-13);
  CHECK(std::abs(digitlab::riemann_zeta({4.0, 0.0}) -
                 Complex{kPi * kPi * kPi * kPi / 90.0, 0.0}) < 1e-13);
  CHECK(std::abs(digitlab::riemann_zeta({3.0, 0.0}) - Complex{kApery, 0.0}) < 1e-13);
  // sum over odd denominators only: 4 * (pi^2/8) = pi^2/2
  CHECK(std::abs(digitlab::hurwitz_zeta({2.0, 0.0}, 0.5) - Complex{kPi * kPi / 2.0, 0.0}) <
        1e-12);
}

TEST_CASE("zeta kernel matches the direct-summation oracle") {
  const std::vector<Complex> points = {
      {1.6, 0.0}, {2.0, 3.0}, {3.5, -2.0}, {5.0, 40.0}, {12.0, 0.0}};
  for (const Complex& s : points) {
    INFO("s = " << s.real() << " + " << s.imag() << "i");
    CHECK(std::abs(digitlab::riemann_zeta(s) - hurwitz_oracle(s, 1.0, 100000)) < 1e-12);
  }
  CHECK(std::abs(digitlab::hurwitz_zeta({2.0, 0.0}, 0.5) - hurwitz_oracle({2.0, 0.0}, 0.5,
                                                                          1000000)) < 1e-10);
  CHECK(std::abs(digitlab::hurwitz_zeta({3.0, 1.0}, 0.25) -
                 hurwitz_oracle({3.0, 1.0}, 0.25, 100000)) < 1e-12);
}

TEST_CASE("hurwitz multiplication theorem") {
  // sum_{k=1}^{m} zeta(s, k/m) = m^s zeta(s)
  const Complex s{3.0, 0.0};
  Complex lhs = 0.0;
  for (int k = 1; k <= 4; ++k)
    lhs += digitlab::hurwitz_zeta(s, static_cast<double>(k) / 4.0);
  const Complex rhs = 64.0 * digitlab::riemann_zeta(s);
  CHECK(std::abs(lhs - rhs) < 1e-10);
}

TEST_CASE("hurwitz at x=1 is the riemann zeta on the nose") {
  const std::vector<Complex> points = {{1.5, 0.0},  {2.0, 0.0},   {2.5, -3.0}, {3.0, 7.0},
                                       {4.0, 0.0},  {6.0, -20.0}, {8.0, 40.0}, {11.0, 1.0},
                                       {20.0, 0.0}, {30.0, -5.0}};
  REQUIRE(points.size() == 10);
  for (const Complex& s : points)
    CHECK(std::abs(digitlab::hurwitz_zeta(s, 1.0) - digitlab::riemann_zeta(s)) <= 1e-13);
}

TEST_CASE("zeta kernel is stable under harsher parameters") {
  const digitlab::ZetaParams heavy{200, 8};
  for (const Complex& s : {Complex{1.7, 0.0}, Complex{2.0, 10.0}, Complex{6.0, -35.0}})
    CHECK(std::abs(digitlab::riemann_zeta(s, heavy) - digitlab::riemann_zeta(s)) < 1e-13);
}

TEST_CASE("zeta kernel domain") {
  CHECK_THROWS_AS(digitlab::riemann_zeta({1.0, 0.0}), std::domain_error);
  CHECK_THROWS_AS(digitlab::riemann_zeta({0.5, 30.0}), std::domain_error);
  CHECK_THROWS_AS(digitlab::hurwitz_zeta({2.0, 0.0}, 0.0), std::domain_error);
  CHECK_THROWS_AS(digitlab::hurwitz_zeta({2.0, 0.0}, 1.5), std::domain_error);
  CHECK_THROWS_AS(digitlab::hurwitz_zeta({2.0, 0.0}, -0.25), std::domain_error);
}

TEST_CASE("dirichlet partial sums") {
  auto no_tail = [](std::uint64_t, const Complex&) { return 0.0; };

  SECTION("single surviving coefficient") {
    const auto p = digitlab::dirichlet_partial(
        [](std::uint64_t n) { return n == 5 ? 3.0 : 0.0; }, {2.0, 0.0}, 100, no_tail);
    CHECK(std::abs(p.value - Complex{0.12, 0.0}) < 1e-15);
  }

  SECTION("tail bound is the caller's function evaluated at the cutoff") {
    const auto p = digitlab::dirichlet_partial([](std::uint64_t) { return 1.0; }, {2.0, 0.0},
                                               10, [](std::uint64_t N, const Complex&) {
                                                 return static_cast<double>(N) + 0.5;
                                               });
    CHECK(p.tail_bound == 10.5);
  }

  SECTION("all-ones partial sum is sandwiched by the true tail") {
    const std::uint64_t N = 10000;
    const auto p = digitlab::dirichlet_partial([](std::uint64_t) { return 1.0; }, {2.0, 0.0},
                                               N, no_tail);
    const double diff = (digitlab::riemann_zeta({2.0, 0.0}) - p.value).real();
    CHECK(diff <= 1.0 / N + 1e-12);                // sum_{n>N} n^-2 < integral from N
    CHECK(diff >= 1.0 / (N + 1) - 1e-12);          // ... and > integral from N+1
  }

  SECTION("Natural coefficients are accepted") {
    const Base ten{Natural(10)};
    const auto p = digitlab::dirichlet_partial(
        [&](std::uint64_t n) { return digitlab::digit_sum(n, ten); }, {3.0, 0.0}, 50, no_tail);
    CHECK(p.value.real() > 1.0);  // first term alone contributes 1
    CHECK(p.value.imag() == 0.0);
  }
}

TEST_CASE("dirichlet check: shifted-pair correction coefficients") {
  const Base ten{Natural(10)};
  const digitlab::NumericCheck c = digitlab::verify_dirichlet_chat(ten, {3.0, 0.0}, 100000);
  CHECK(c.passed);
  CHECK(c.bound_kind == digitlab::BoundKind::rigorous);
  CHECK(c.abs_error <= c.bound);
  // closed form at s=3, B=10: 9 zeta(3) / 999
  CHECK(std::abs(c.rhs - Complex{9.0 * kApery / 999.0, 0.0}) < 1e-12);
  CHECK(c.abs_error < 1e-6);

  CHECK(digitlab::verify_dirichlet_chat(Base(Natural(2)), {4.0, 0.0}, 30000).passed);
  CHECK(digitlab::verify_dirichlet_chat(ten, {2.5, 1.0}, 30000).passed);

  SECTION("a base beyond the cutoff leaves only the bound") {
    const digitlab::NumericCheck far =
        digitlab::verify_dirichlet_chat(Base(Natural(50021)), {3.0, 0.0}, 10000);
    CHECK(far.lhs == Complex{0.0, 0.0});
    CHECK(far.passed);
  }

  SECTION("domain") {
    CHECK_THROWS_AS(digitlab::verify_dirichlet_chat(ten, {1.0, 0.0}, 1000), std::domain_error);
    CHECK_THROWS_AS(digitlab::verify_dirichlet_chat(ten, {3.0, 0.0}, 1), std::invalid_argument);
  }
}

TEST_CASE("dirichlet check: carry-count coefficients") {
  const Base ten{Natural(10)};
  const digitlab::NumericCheck c = digitlab::verify_dirichlet_carry(ten, {3.0, 0.0}, 100000);
  CHECK(c.passed);
  CHECK(c.bound_kind == digitlab::BoundKind::rigorous);

  // replay the partial sum with a plain loop
  double replay = 0.0;
  for (std::uint64_t n = 1; n <= 20000; ++n)
    replay += static_cast<double>(n / 10) * std::pow(static_cast<double>(n), -3.0);
  const digitlab::NumericCheck small = digitlab::verify_dirichlet_carry(ten, {3.0, 0.0}, 20000);
  CHECK(std::abs(small.lhs.real() - replay) < 1e-10);

  CHECK(digitlab::verify_dirichlet_carry(Base(Natural(2)), {4.0, 0.0}, 30000).passed);
  CHECK(digitlab::verify_dirichlet_carry(ten, {3.0, 1.5}, 30000).passed);
  CHECK_THROWS_AS(digitlab::verify_dirichlet_carry(ten, {2.0, 0.0}, 1000), std::domain_error);
}

TEST_CASE("dirichlet check: divisor digit sums factor through zeta") {
  const Base ten{Natural(10)};
  const digitlab::NumericCheck c = digitlab::verify_dirichlet_convolution(ten, {3.0, 0.0}, 20000);
  CHECK(c.bound_kind == digitlab::BoundKind::heuristic);
  CHECK(c.passed);
  CHECK(digitlab::verify_dirichlet_convolution(Base(Natural(2)), {4.0, 0.0}, 20000).passed);
}

TEST_CASE("exact rational replay: truncated convolution identity") {
  // sum_{n<=N} S(n)/n^3 = sum_{d<=N} s(d) sum_{m<=N/d} (dm)^-3 exactly in Q
  using Rat = boost::multiprecision::cpp_rational;
  const Base ten{Natural(10)};
  const std::uint64_t N = 50;

  Rat lhs = 0;
  for (std::uint64_t n = 1; n <= N; ++n) {
    const Natural cube = Natural(n) * n * n;
    lhs += Rat(digitlab::divisor_digit_sum(n, ten)) / Rat(cube);
  }
  Rat rhs = 0;
  for (std::uint64_t d = 1; d <= N; ++d) {
    const Rat sd(digitlab::digit_sum(d, ten));
    for (std::uint64_t m = 1; d * m <= N; ++m) {
      const Natural cube = Natural(d * m) * (d * m) * (d * m);
      rhs += sd / Rat(cube);
    }
  }
  CHECK(lhs == rhs);
}

TEST_CASE("large bases collapse the digit-sum Dirichlet series") {
  const digitlab::NumericCheck c =
      digitlab::verify_limit_large_B(3.0, {10, 100, 10001, 100000}, 10000);
  CHECK(c.passed);
  CHECK(c.abs_error == 0.0);
  CHECK(c.detail.find("exact") != std::string::npos);

  CHECK(digitlab::verify_limit_large_B(2.5, {2, 10}, 5000).passed);
  CHECK_THROWS_AS(digitlab::verify_limit_large_B(1.0, {10}, 100), std::domain_error);
  CHECK_THROWS_AS(digitlab::verify_limit_large_B(3.0, {}, 100), std::invalid_argument);
}

TEST_CASE("bilateral kernel evaluation") {
  SECTION("domain") {
    CHECK_THROWS_AS(digitlab::bilateral_Lhat(1.0, {0.3, 0}, {3, 0}, {0.4, 0}, 10),
                    std::domain_error);
    CHECK_THROWS_AS(digitlab::bilateral_Lhat(2.0, {0.3, 0}, {3, 0}, {1.1, 0}, 10),
                    std::domain_error);
    CHECK_THROWS_AS(digitlab::bilateral_Lhat(2.0, {0.3, 0}, {1.5, 0}, {0.4, 0}, 10),
                    std::domain_error);  // needs |z| > base
    CHECK_THROWS_AS(digitlab::bilateral_Lhat(0.5, {0.3, 0}, {0.7, 0}, {0.4, 0}, 10),
                    std::domain_error);  // needs |z| < base when base < 1
    CHECK_THROWS_AS(digitlab::bilateral_Lhat(2.0, {0.3, 0}, {3, 0}, {0.4, 0}, 0),
                    std::invalid_argument);
  }

  SECTION("kernel pole is caught") {
    CHECK_THROWS_AS(digitlab::bilateral_Lhat(2.0, {2.5, 0}, {3, 0}, {0.4, 0}, 10),
                    std::domain_error);  // x q = 1 at n = 0
  }

  SECTION("reflection symmetry holds termwise") {
    const Complex a = digitlab::bilateral_Lhat(2.0, {0.3, 0}, {3, 0}, {0.4, 0}, 40).value;
    const Complex b =
        digitlab::bilateral_Lhat(0.5, {0.3, 0}, {1.0 / 3.0, 0}, {0.4, 0}, 40).value;
    CHECK(std::abs(a - b) < 1e-13);
  }

  SECTION("window has converged by 40 and the edges say so") {
    const auto v40 = digitlab::bilateral_Lhat(2.0, {0.3, 0}, {3, 0}, {0.4, 0}, 40);
    const auto v60 = digitlab::bilateral_Lhat(2.0, {0.3, 0}, {3, 0}, {0.4, 0}, 60);
    CHECK(std::abs(v40.value - v60.value) < 1e-12);
    CHECK(v40.tail_term_mag == 0.0);  // q^{2^40} underflows to an exact zero
    CHECK(v40.head_term_mag > 0.0);
    CHECK(v40.head_term_mag < 1e-12);
  }
}

TEST_CASE("bilateral functional equations at sample points") {
  const auto points = digitlab::default_bilateral_points();
  for (const auto& pt : points) {
    INFO("base " << pt.base << " r " << pt.r << " t " << pt.t);
    const digitlab::NumericCheck c =
        digitlab::verify_bilateral_equations(pt.base, pt.x, pt.z, pt.q, pt.r, pt.t, 40);
    CHECK(c.passed);
    CHECK(c.abs_error <= 1e-10);
  }

  CHECK_THROWS_AS(
      digitlab::verify_bilateral_equations(2.0, {0.3, 0}, {3, 0}, {0.4, 0}, 1, 0, 40),
      std::invalid_argument);
  // q^{B^r} underflows out of the working range
  CHECK_THROWS_AS(
      digitlab::verify_bilateral_equations(10.0, {0.3, 0}, {12, 0}, {0.5, 0}, 3, 2, 40),
      std::domain_error);
}

TEST_CASE("exact rational replay: bilateral index shift") {
  // Two groupings of the same window of the r-shift identity, in exact
  // arithmetic: z^r sum_n z^n T(Q^{2^{M+r+n}}) vs sum_m z^m T(Q^{2^{M+m}})
  // over the shifted index m = n + r. Uses the production term formula.
  using Rat = boost::multiprecision::cpp_rational;
  const int M = 10, r = 1;
  const Rat Q(1, 2), x(1, 3), z(3);

  auto rat_pow = [](Rat b, long long e) {
    Rat result = 1;
    const bool invert = e < 0;
    unsigned long long k = invert ? -static_cast<unsigned long long>(e) : e;
    while (k) {
      if (k & 1) result *= b;
      k >>= 1;
      if (k) b *= b;
    }
    return invert ? Rat(1) / result : result;
  };

  Rat route_a = 0;
  for (int n = -M; n <= 0; ++n) {
    const Rat qp = rat_pow(Q, 1LL << (M + r + n));
    route_a += digitlab::bilateral_term(x, rat_pow(z, n), qp);
  }
  route_a *= rat_pow(z, r);

  Rat route_b = 0;
  for (int m = -M + r; m <= r; ++m) {
    const Rat qp = rat_pow(Q, 1LL << (M + m));
    route_b += digitlab::bilateral_term(x, rat_pow(z, m), qp);
  }

  CHECK(route_a == route_b);
}

TEST_CASE("negative-shift dilation spot checks") {
  const Base two{Natural(2)};
  const digitlab::NumericCheck c =
      digitlab::verify_shift_negative_j(two, -1, {0.4, 0.1}, {1.2, 0.0});
  CHECK(c.passed);
  CHECK(c.abs_error <= 1e-9);

  CHECK(digitlab::verify_shift_negative_j(Base(Natural(3)), -2, {0.5, 0.0}, {1.1, 0.05})
            .passed);

  CHECK_THROWS_AS(digitlab::verify_shift_negative_j(two, 0, {0.4, 0}, {1.2, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(digitlab::verify_shift_negative_j(two, -1, {1.4, 0}, {1.2, 0}),
                  std::domain_error);
}

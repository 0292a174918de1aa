#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "digitlab/digit_core.hpp"

using digitlab::Base;
using digitlab::Natural;

namespace {

Natural rebuild(const digitlab::DigitVec& d) {
  Natural value = 0;
  Natural place = 1;
  for (const Natural& digit : d.digits) {
    value += digit * place;
    place *= d.base.value();
  }
  return value;
}

}  // namespace

TEST_CASE("bases below two are rejected") {
  CHECK_THROWS_AS(Base(Natural(0)), std::domain_error);
  CHECK_THROWS_AS(Base(Natural(1)), std::domain_error);
  CHECK_NOTHROW(Base(Natural(2)));
}

TEST_CASE("digit expansion is canonical little-endian") {
  const Base ten{Natural(10)};
  const digitlab::DigitVec d = digitlab::to_digits(73, ten);
  REQUIRE(d.digits == std::vector<Natural>{3, 7});
  CHECK(digitlab::digit_sum(73, ten) == 10);

  CHECK(digitlab::to_digits(0, ten).digits.empty());
  CHECK(digitlab::digit_sum(0, ten) == 0);

  // a power of the base has a single nonzero digit
  const Base two{Natural(2)};
  const Natural big = digitlab::ipow(2, 64);
  const digitlab::DigitVec bits = digitlab::to_digits(big, two);
  REQUIRE(bits.digits.size() == 65);
  CHECK(digitlab::digit_sum(big, two) == 1);

  CHECK_THROWS_AS(digitlab::to_digits(Natural(-1), ten), std::domain_error);
}

TEST_CASE("digit expansion inverts positional evaluation") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::uint64_t> pick(0, ~0ULL);
  for (const std::uint64_t b : {2ULL, 3ULL, 10ULL, 16ULL, 257ULL}) {
    const Base base{Natural(b)};
    for (int i = 0; i < 50; ++i) {
      const Natural n = pick(rng);
      CHECK(rebuild(digitlab::to_digits(n, base)) == n);
    }
  }
}

TEST_CASE("hand-traced additions") {
  const Base ten{Natural(10)};

  SECTION("58 + 67") {
    const auto t = digitlab::add_with_trace(std::vector<Natural>{58, 67}, ten);
    CHECK(t.column_carries == std::vector<Natural>{1, 1});
    CHECK(t.terminal_carry == 1);
    CHECK(t.carry_sum == 2);
    CHECK(t.correction == 18);
    CHECK(t.total == 125);
  }

  SECTION("95 + 87 + 64") {
    const auto t = digitlab::add_with_trace(std::vector<Natural>{95, 87, 64}, ten);
    CHECK(t.column_carries == std::vector<Natural>{1, 2});
    CHECK(t.terminal_carry == 2);
    CHECK(t.carry_sum == 3);
    CHECK(t.correction == 27);
    CHECK(t.total == 246);
  }

  SECTION("five ones in base 2: the terminal carry exceeds the base") {
    const Base two{Natural(2)};
    const auto t = digitlab::add_with_trace(std::vector<Natural>(5, Natural(1)), two);
    CHECK(t.column_carries == std::vector<Natural>{2});
    CHECK(t.terminal_carry == 2);
    CHECK(t.carry_sum == 2);
    CHECK(t.correction == 3);  // 2 - digit_sum(2) + 1*2
    CHECK(t.total == 5);
  }

  SECTION("no carries at all") {
    const auto t = digitlab::add_with_trace(std::vector<Natural>{21, 13}, ten);
    CHECK(t.column_carries == std::vector<Natural>{0, 0});
    CHECK(t.carry_sum == 0);
    CHECK(t.correction == 0);
    CHECK(t.total == 34);
  }

  SECTION("all summands zero") {
    const auto t = digitlab::add_with_trace(std::vector<Natural>{0, 0, 0}, ten);
    CHECK(t.column_carries.empty());
    CHECK(t.terminal_carry == 0);
    CHECK(t.correction == 0);
    CHECK(t.total == 0);
  }

  SECTION("empty summand list is rejected") {
    CHECK_THROWS_AS(digitlab::add_with_trace(std::vector<Natural>{}, ten),
                    std::invalid_argument);
  }
}

TEST_CASE("correction is the exact additivity defect of the digit sum") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint64_t> value(0, 999999);
  std::uniform_int_distribution<int> arity(2, 6);
  for (const std::uint64_t b : {2ULL, 3ULL, 10ULL, 16ULL}) {
    const Base base{Natural(b)};
    for (int rep = 0; rep < 300; ++rep) {
      std::vector<Natural> xs(arity(rng));
      Natural digit_total = 0;
      for (auto& x : xs) {
        x = value(rng);
        digit_total += digitlab::digit_sum(x, base);
      }
      const auto t = digitlab::add_with_trace(xs, base);
      CHECK(digitlab::digit_sum(t.total, base) == digit_total - t.correction);
    }
  }
}

TEST_CASE("correction properties") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::uint64_t> value(0, 999999);

  SECTION("divisible by base - 1") {
    for (const std::uint64_t b : {3ULL, 10ULL, 16ULL}) {  // trivial modulus at base 2
      const Base base{Natural(b)};
      for (int rep = 0; rep < 200; ++rep) {
        const std::vector<Natural> xs{value(rng), value(rng), value(rng)};
        CHECK(digitlab::correction(xs, base) % (b - 1) == 0);
      }
    }
  }

  SECTION("two summands: correction = (base-1) * carry_sum") {
    const Base ten{Natural(10)};
    for (int rep = 0; rep < 200; ++rep) {
      const std::vector<Natural> xs{value(rng), value(rng)};
      CHECK(digitlab::correction(xs, ten) == 9 * digitlab::carry_sum(xs, ten));
    }
  }
}

TEST_CASE("repeated ones: correction counts the digit-sum deficit of n") {
  const Base two{Natural(2)};
  for (std::uint64_t n = 1; n <= 19; ++n) {
    const std::vector<Natural> ones(n, Natural(1));
    CHECK(digitlab::correction(ones, two) == Natural(n) - digitlab::digit_sum(n, two));
  }
  const Base ten{Natural(10)};
  for (std::uint64_t n : {9ULL, 10ULL, 99ULL, 100ULL, 123ULL}) {
    const std::vector<Natural> ones(n, Natural(1));
    CHECK(digitlab::correction(ones, ten) == Natural(n) - digitlab::digit_sum(n, ten));
  }
}

TEST_CASE("shifted pair correction counts trailing zeros") {
  const Base ten{Natural(10)};
  CHECK(digitlab::correction_nm1(1000, ten) == 27);  // 9 * v_10(1000)
  CHECK(digitlab::correction_nm1(7, ten) == 0);
  CHECK_THROWS_AS(digitlab::correction_nm1(0, ten), std::invalid_argument);

  std::mt19937_64 rng(13);
  std::uniform_int_distribution<std::uint64_t> value(1, 200000);
  for (const std::uint64_t b : {2ULL, 10ULL}) {
    const Base base{Natural(b)};
    for (int rep = 0; rep < 200; ++rep) {
      const Natural n = value(rng);
      const std::vector<Natural> pair{n - 1, Natural(1)};
      CHECK(digitlab::correction_nm1(n, base) == digitlab::correction(pair, base));
    }
  }
}

TEST_CASE("repeated-summand correction matches the materialized trace") {
  const Base ten{Natural(10)};
  CHECK(digitlab::correction_repeat(7, 12, ten) == 72);
  CHECK(digitlab::correction_repeat(7, 0, ten) == 0);
  CHECK(digitlab::correction_repeat(0, 12, ten) == 0);

  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::uint64_t> pick_a(1, 5000);
  std::uniform_int_distribution<std::uint64_t> pick_b(1, 60);
  for (const std::uint64_t bb : {2ULL, 10ULL, 16ULL}) {
    const Base base{Natural(bb)};
    for (int rep = 0; rep < 100; ++rep) {
      const Natural a = pick_a(rng);
      const std::uint64_t b = pick_b(rng);
      const std::vector<Natural> copies(b, a);
      CHECK(digitlab::correction_repeat(a, b, base) == digitlab::correction(copies, base));
    }
  }

  SECTION("cost independent of the repeat count") {
    // astronomically many copies still finish instantly
    const Natural huge = digitlab::ipow(10, 30);
    const Natural c = digitlab::correction_repeat(3, huge, Base(Natural(10)));
    // product rule: digit_sum(3b) = b*digit_sum(3) - correction
    CHECK(digitlab::digit_sum(3 * huge, Base(Natural(10))) == 3 * huge - c);
  }
}

TEST_CASE("single-digit repetition carries floor(ab/B)") {
  for (const std::uint64_t bb : {2ULL, 10ULL}) {
    const Base base{Natural(bb)};
    for (std::uint64_t a = 1; a < bb; ++a)
      for (std::uint64_t b = 1; b <= 40; ++b) {
        const std::vector<Natural> copies(b, Natural(a));
        CHECK(digitlab::carry_sum(copies, base) == Natural(a * b / bb));
      }
  }
}

TEST_CASE("k-step digit sum recursion") {
  const Base ten{Natural(10)};
  CHECK(digitlab::digit_sum_recursion_check(125, 58, ten));
  CHECK_THROWS_AS(digitlab::digit_sum_recursion_check(125, 0, ten), std::invalid_argument);
  CHECK_THROWS_AS(digitlab::digit_sum_recursion_check(5, 6, ten), std::invalid_argument);

  std::mt19937_64 rng(19);
  std::uniform_int_distribution<std::uint64_t> pick_n(1, 30000);
  for (const std::uint64_t b : {2ULL, 3ULL, 10ULL, 16ULL}) {
    const Base base{Natural(b)};
    for (int rep = 0; rep < 100; ++rep) {
      const std::uint64_t n = pick_n(rng);
      std::uniform_int_distribution<std::uint64_t> pick_k(1, n);
      CHECK(digitlab::digit_sum_recursion_check(n, pick_k(rng), base));
    }
  }
}

TEST_CASE("product rule via repeated addition") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<std::uint64_t> pick_a(1, 100000);
  std::uniform_int_distribution<std::uint64_t> pick_b(1, 500);
  for (const std::uint64_t bb : {2ULL, 10ULL}) {
    const Base base{Natural(bb)};
    for (int rep = 0; rep < 100; ++rep) {
      const Natural a = pick_a(rng);
      const Natural b = pick_b(rng);
      CHECK(digitlab::digit_sum(a * b, base) ==
            b * digitlab::digit_sum(a, base) - digitlab::correction_repeat(a, b, base));
    }
  }
}

TEST_CASE("divisor digit sums") {
  const Base ten{Natural(10)};
  CHECK(digitlab::divisor_digit_sum(12, ten) == 19);  // 1+2+3+4+6+(1+2)
  CHECK(digitlab::divisor_digit_sum(28, ten) == 29);
  CHECK(digitlab::divisor_digit_sum(1, ten) == 1);
  CHECK(digitlab::divisor_digit_sum(6, Base(Natural(2))) == 6);
  CHECK_THROWS_AS(digitlab::divisor_digit_sum(0, ten), std::invalid_argument);
}
